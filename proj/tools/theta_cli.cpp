#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "theta/fixture.hpp"
#include "theta/isogeny.hpp"

using namespace theta;

namespace {

std::uint64_t env_seed(std::uint64_t cli_seed) {
    if (const char* s = std::getenv("THETA_SEED")) return std::strtoull(s, nullptr, 10);
    return cli_seed;
}

void emit(const Json& j) { std::cout << j.dump(2) << std::endl; }

FixtureBundle load_bundle(const std::string& path) {
    return bundle_from_json(load_json_file(path));
}

int run(int argc, char** argv) {
    CLI::App app{"theta-function arithmetic on abelian varieties at desk scale"};
    app.require_subcommand(1);
    unsigned jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for the kernel sums");

    // validate
    auto* validate = app.add_subcommand("validate", "check a null point file");
    std::string v_ctx;
    validate->add_option("--context", v_ctx, "context/null point file")->required();
    validate->callback([&]() {
        CtxPtr ctx = context_from_json(load_json_file(v_ctx));
        auto rep = validate_null(*ctx);
        Json out;
        out["pass"] = rep.ok;
        if (!rep.ok) out["violation"] = rep.first_violation;
        emit(out);
        if (!rep.ok) throw PreconditionViolated(rep.first_violation);
    });

    // transform
    auto* transform = app.add_subcommand("transform", "metaplectic action on a null point");
    std::string t_ctx, t_mat;
    transform->add_option("--context", t_ctx)->required();
    transform->add_option("--matrix", t_mat, "2g x 2g symplectic matrix file")->required();
    transform->callback([&]() {
        CtxPtr ctx = context_from_json(load_json_file(t_ctx));
        SymplecticMap m = matrix_from_json(load_json_file(t_mat));
        auto [out_ctx, pts] = act_symplectic(ctx, m);
        (void)pts;
        emit(context_to_json(*out_ctx));
    });

    // symcompat
    auto* symcompat = app.add_subcommand("symcompat", "repair a torsion basis");
    std::string s_bundle;
    std::uint32_t s_d = 2;
    symcompat->add_option("--bundle", s_bundle, "fixture bundle file")->required();
    symcompat->add_option("--d", s_d, "isogeny degree");
    symcompat->callback([&]() {
        FixtureBundle b = load_bundle(s_bundle);
        BasisFixResult fixed = fix_basis(b.ctx, b.basis, s_d);
        FixtureBundle out;
        out.ctx = b.ctx;
        out.seed = b.seed;
        out.basis = fixed.basis;
        Json j = bundle_to_json(out);
        Json rep = Json::array();
        for (bool fl : fixed.translated) rep.push_back(fl);
        j["translated"] = rep;
        emit(j);
    });

    // pairing
    auto* pairing = app.add_subcommand("pairing", "Weil pairing of two bundle basis points");
    std::string p_bundle;
    unsigned p_i = 0, p_j = 1;
    pairing->add_option("--bundle", p_bundle)->required();
    pairing->add_option("--i", p_i);
    pairing->add_option("--j", p_j);
    pairing->callback([&]() {
        FixtureBundle b = load_bundle(p_bundle);
        AffinePoint zero = b.ctx->null_point();
        auto key = std::minmax(p_i, p_j);
        AffinePoint pq = b.basis.chain.at({key.first, key.second});
        Fe e = weil_pairing(b.basis.e[p_i].pt, b.basis.e[p_j].pt, pq, b.basis.n, zero);
        Json out;
        out["n"] = b.basis.n;
        out["value"] = fe_to_json(e);
        out["order"] = element_order(e);
        emit(out);
    });

    // scalar-mult
    auto* smul = app.add_subcommand("scalar-mult", "ladder multiple of a point");
    std::string m_ctx, m_pt;
    std::uint64_t m_k = 1;
    smul->add_option("--context", m_ctx)->required();
    smul->add_option("--point", m_pt)->required();
    smul->add_option("--k", m_k)->required();
    smul->callback([&]() {
        CtxPtr ctx = context_from_json(load_json_file(m_ctx));
        AffinePoint pt = point_from_json(ctx, load_json_file(m_pt));
        AffinePoint zero = ctx->null_point();
        emit(point_to_json(scalar_mult(m_k, pt, pt, zero, zero)));
    });

    // change-level
    auto* chg = app.add_subcommand("change-level", "level m -> m*d coordinates");
    std::string c_bundle, c_pt;
    std::uint32_t c_d = 2;
    std::uint64_t c_seed = 0;
    chg->add_option("--d", c_d)->required();
    chg->add_option("--bundle", c_bundle, "fixture bundle with the m*d torsion basis")->required();
    chg->add_option("--point", c_pt, "point file (defaults to the null point)");
    chg->add_option("--seed", c_seed);
    chg->callback([&]() {
        FixtureBundle b = load_bundle(c_bundle);
        LevelChangePlan plan = build_level_change_plan(b.ctx, b.basis, c_d, env_seed(c_seed), jobs);
        AffinePoint x = c_pt.empty() ? b.ctx->null_point()
                                     : point_from_json(b.ctx, load_json_file(c_pt));
        LevelChangeResult res = change_level(plan, x);
        if (c_pt.empty()) {
            emit(context_to_json(*res.target));
        } else {
            AffinePoint img(res.target, res.coords);
            emit(point_to_json(img));
        }
    });

    // isogeny
    auto* isog = app.add_subcommand("isogeny", "quotient by an isotropic kernel");
    std::string i_bundle, i_kernel, i_pt;
    std::uint32_t i_d = 2;
    std::uint64_t i_seed = 0;
    isog->add_option("--bundle", i_bundle, "bundle carrying the context and G1 basis")->required();
    isog->add_option("--kernel", i_kernel, "kernel generator point file(s)")->required();
    isog->add_option("--point", i_pt);
    isog->add_option("--d", i_d);
    isog->add_option("--seed", i_seed);
    isog->callback([&]() {
        FixtureBundle b = load_bundle(i_bundle);
        CtxPtr ctx = b.ctx;
        std::vector<AffinePoint> kernel;
        kernel.push_back(point_from_json(ctx, load_json_file(i_kernel)));
        const unsigned g = ctx->g();
        std::vector<AffinePoint> gens;
        std::map<std::pair<unsigned, unsigned>, AffinePoint> pairs;
        for (unsigned i = 0; i < g; ++i) gens.push_back(b.basis.e[i].pt);
        for (unsigned i = 0; i < g; ++i)
            for (unsigned j = i + 1; j < g; ++j) pairs.emplace(std::make_pair(i, j), b.basis.chain.at({i, j}));
        IsogenyPlan plan = isogeny_setup(ctx, kernel, gens, pairs, i_d, env_seed(i_seed));
        Json out;
        out["target"] = context_to_json(*plan.target);
        if (!i_pt.empty()) {
            AffinePoint x = point_from_json(ctx, load_json_file(i_pt));
            AffinePoint img = isogeny_eval(plan, plan.carry(x));
            out["image"] = point_to_json(img);
        }
        emit(out);
    });

    // fixture-gen
    auto* fg = app.add_subcommand("fixture-gen", "generate a torsion fixture bundle");
    std::uint64_t f_p = 17, f_seed = 1;
    std::uint32_t f_n = 4, f_m = 2;
    unsigned f_g = 1;
    fg->add_option("--p", f_p)->required();
    fg->add_option("--n", f_n)->required();
    fg->add_option("--m", f_m);
    fg->add_option("--g", f_g);
    fg->add_option("--seed", f_seed);
    fg->callback([&]() {
        std::uint64_t seed = env_seed(f_seed);
        FixtureBundle b;
        if (f_g == 1 && f_m == 2) {
            b = fixture_gen(f_p, f_n, seed);
        } else if (f_g == 2 && f_m == 2) {
            FixtureBundle a = fixture_gen(f_p, f_n, seed);
            FixtureBundle c = fixture_gen(f_p, f_n, seed + 1);
            b = product_fixture(a, c);
        } else if (f_g == 1 && f_m == 4) {
            FixtureBundle a = fixture_gen(f_p, f_n, seed);
            b = derive_level4_bundle(a, seed);
        } else {
            throw PreconditionViolated("supported fixtures: (g,m) in {(1,2),(2,2),(1,4)}");
        }
        emit(bundle_to_json(b));
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const SchemaError& e) {
        std::cerr << e.what() << std::endl;
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
