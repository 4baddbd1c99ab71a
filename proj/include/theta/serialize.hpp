#pragma once

#include <string>

#include "json.hpp"

#include "theta/symcompat.hpp"

namespace theta {

using Json = nlohmann::ordered_json;

// Canonical JSON forms.  Field elements are decimal strings (arrays of
// strings for extension elements); coordinate arrays follow the Z(m) rank
// order.  A context file is a point file whose coordinates are the null
// point, plus the master root order.

Json field_to_json(const FieldSpec& spec);
FieldPtr field_from_json(const Json& j, const std::string& path = "$.field");

Json fe_to_json(const Fe& x);
Fe fe_from_json(const FieldPtr& spec, const Json& j, const std::string& path);

Json context_to_json(const ThetaContext& ctx);
CtxPtr context_from_json(const Json& j, const std::string& path = "$");

Json point_to_json(const AffinePoint& pt);
AffinePoint point_from_json(const CtxPtr& ctx, const Json& j, const std::string& path = "$");

Json matrix_to_json(const SymplecticMap& m);
SymplecticMap matrix_from_json(const Json& j, const std::string& path = "$");

/// Torsion bundle: context, basis with orders and side tags, chain lifts and
/// the oracle cross-check block emitted by the fixture generator.
struct FixtureBundle {
    CtxPtr ctx;
    std::uint64_t seed = 0;
    TorsionBasis basis;
    Json oracle; // passthrough block
};

Json bundle_to_json(const FixtureBundle& b);
FixtureBundle bundle_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

} // namespace theta
