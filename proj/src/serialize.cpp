#include "theta/serialize.hpp"

#include <fstream>

namespace theta {

namespace {

const Json& need(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError("missing field at " + path + "." + key);
    return j.at(key);
}

std::uint64_t need_uint(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_number_unsigned())
        throw SchemaError("expected unsigned integer at " + path + "." + key);
    return v.get<std::uint64_t>();
}

std::uint64_t parse_dec(const Json& v, const std::string& path) {
    if (!v.is_string()) throw SchemaError("expected decimal string at " + path);
    const std::string s = v.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw SchemaError("malformed decimal string at " + path);
    return std::stoull(s);
}

} // namespace

Json field_to_json(const FieldSpec& spec) {
    Json j;
    j["p"] = spec.p();
    j["k"] = spec.k();
    if (spec.k() > 1) j["modulus"] = spec.modulus();
    return j;
}

FieldPtr field_from_json(const Json& j, const std::string& path) {
    std::uint64_t p = need_uint(j, "p", path);
    std::uint64_t k = need_uint(j, "k", path);
    std::vector<std::uint64_t> modulus;
    if (k > 1) {
        const Json& mj = need(j, "modulus", path);
        if (!mj.is_array()) throw SchemaError("expected array at " + path + ".modulus");
        for (const auto& c : mj) modulus.push_back(c.get<std::uint64_t>());
    }
    try {
        return FieldSpec::make(p, (unsigned)k, std::move(modulus));
    } catch (const Error& e) {
        throw SchemaError(std::string("invalid field at ") + path + ": " + e.what());
    }
}

Json fe_to_json(const Fe& x) {
    if (x.spec()->k() == 1) return std::to_string(x.coeffs()[0]);
    Json arr = Json::array();
    for (auto c : x.coeffs()) arr.push_back(std::to_string(c));
    return arr;
}

Fe fe_from_json(const FieldPtr& spec, const Json& j, const std::string& path) {
    if (spec->k() == 1) return Fe(spec, parse_dec(j, path));
    if (!j.is_array() || j.size() != spec->k())
        throw SchemaError("expected k coefficients at " + path);
    std::vector<std::uint64_t> c;
    for (std::size_t i = 0; i < j.size(); ++i)
        c.push_back(parse_dec(j[i], path + "[" + std::to_string(i) + "]"));
    return Fe(spec, std::move(c));
}

Json context_to_json(const ThetaContext& ctx) {
    Json j;
    j["field"] = field_to_json(*ctx.field());
    j["g"] = ctx.g();
    j["level"] = ctx.m();
    Json coords = Json::array();
    for (const auto& x : ctx.null_point().c) coords.push_back(fe_to_json(x));
    j["coords"] = std::move(coords);
    j["zeta_order"] = ctx.zeta_order();
    return j;
}

CtxPtr context_from_json(const Json& j, const std::string& path) {
    FieldPtr spec = field_from_json(need(j, "field", path), path + ".field");
    std::uint64_t g = need_uint(j, "g", path);
    std::uint64_t level = need_uint(j, "level", path);
    const Json& coords = need(j, "coords", path);
    if (!coords.is_array()) throw SchemaError("expected array at " + path + ".coords");
    std::vector<Fe> c;
    for (std::size_t i = 0; i < coords.size(); ++i)
        c.push_back(fe_from_json(spec, coords[i], path + ".coords[" + std::to_string(i) + "]"));
    std::uint64_t aux = j.contains("zeta_order") ? need_uint(j, "zeta_order", path) : 1;
    try {
        return ThetaContext::make(spec, (unsigned)g, (std::uint32_t)level, std::move(c), aux);
    } catch (const Error& e) {
        throw SchemaError(std::string("invalid context at ") + path + ": " + e.what());
    }
}

Json point_to_json(const AffinePoint& pt) {
    Json j;
    j["field"] = field_to_json(*pt.ctx->field());
    j["g"] = pt.ctx->g();
    j["level"] = pt.ctx->m();
    Json coords = Json::array();
    for (const auto& x : pt.c) coords.push_back(fe_to_json(x));
    j["coords"] = std::move(coords);
    return j;
}

AffinePoint point_from_json(const CtxPtr& ctx, const Json& j, const std::string& path) {
    std::uint64_t level = need_uint(j, "level", path);
    if (level != ctx->m()) throw SchemaError("point level mismatch at " + path + ".level");
    const Json& coords = need(j, "coords", path);
    if (!coords.is_array() || coords.size() != ctx->coord_count())
        throw SchemaError("wrong coordinate count at " + path + ".coords");
    std::vector<Fe> c;
    for (std::size_t i = 0; i < coords.size(); ++i)
        c.push_back(fe_from_json(ctx->field(), coords[i], path + ".coords[" + std::to_string(i) + "]"));
    return AffinePoint(ctx, std::move(c));
}

Json matrix_to_json(const SymplecticMap& m) {
    Json j;
    j["n"] = m.n;
    j["g"] = m.g;
    j["mat"] = m.mat;
    return j;
}

SymplecticMap matrix_from_json(const Json& j, const std::string& path) {
    std::uint64_t n = need_uint(j, "n", path);
    std::uint64_t g = need_uint(j, "g", path);
    const Json& mj = need(j, "mat", path);
    if (!mj.is_array() || mj.size() != 4 * g * g)
        throw SchemaError("expected 2g x 2g entries at " + path + ".mat");
    std::vector<std::uint32_t> mat;
    for (const auto& v : mj) mat.push_back(v.get<std::uint32_t>());
    return SymplecticMap((std::uint32_t)n, (unsigned)g, std::move(mat));
}

Json bundle_to_json(const FixtureBundle& b) {
    Json j;
    j["field"] = field_to_json(*b.ctx->field());
    j["g"] = b.ctx->g();
    j["level"] = b.ctx->m();
    j["n"] = b.basis.n;
    j["seed"] = b.seed;
    j["context"] = context_to_json(*b.ctx);
    Json basis = Json::array();
    for (const auto& tp : b.basis.e) {
        Json e;
        e["order"] = tp.order;
        e["tag"] = tp.tag == Side::Z ? "z" : "dual";
        e["point"] = point_to_json(tp.pt);
        basis.push_back(std::move(e));
    }
    j["basis"] = std::move(basis);
    Json chain = Json::array();
    for (const auto& [key, pt] : b.basis.chain) {
        Json e;
        e["i"] = key.first;
        e["j"] = key.second;
        e["point"] = point_to_json(pt);
        chain.push_back(std::move(e));
    }
    j["chain"] = std::move(chain);
    if (!b.oracle.is_null()) j["oracle"] = b.oracle;
    return j;
}

FixtureBundle bundle_from_json(const Json& j) {
    FixtureBundle b;
    b.ctx = context_from_json(need(j, "context", "$"), "$.context");
    b.seed = need_uint(j, "seed", "$");
    b.basis.n = (std::uint32_t)need_uint(j, "n", "$");
    const Json& basis = need(j, "basis", "$");
    if (!basis.is_array()) throw SchemaError("expected array at $.basis");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Json& e = basis[i];
        std::string path = "$.basis[" + std::to_string(i) + "]";
        TorsionPoint tp;
        tp.order = (std::uint32_t)need_uint(e, "order", path);
        std::string tag = need(e, "tag", path).get<std::string>();
        tp.tag = tag == "z" ? Side::Z : Side::Dual;
        tp.pt = point_from_json(b.ctx, need(e, "point", path), path + ".point");
        b.basis.e.push_back(std::move(tp));
    }
    const Json& chain = need(j, "chain", "$");
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const Json& e = chain[i];
        std::string path = "$.chain[" + std::to_string(i) + "]";
        unsigned a = (unsigned)need_uint(e, "i", path);
        unsigned bb = (unsigned)need_uint(e, "j", path);
        b.basis.chain.emplace(std::make_pair(a, bb),
                              point_from_json(b.ctx, need(e, "point", path), path + ".point"));
    }
    if (j.contains("oracle")) b.oracle = j.at("oracle");
    return b;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace theta
