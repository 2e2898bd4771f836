#ifndef MULTIDIR_SERIALIZE_HPP
#define MULTIDIR_SERIALIZE_HPP

#include <json.hpp>
#include <string>

#include "multidir/bridge.hpp"
#include "multidir/geometry.hpp"
#include "multidir/oracles.hpp"
#include "multidir/witness.hpp"

namespace multidir {

using Json = nlohmann::ordered_json;

Json body_to_json(const ConvexBody& body);
ConvexBody body_from_json(const Json& j);

// {"label": "quadratic"} for catalog entries, or a coefficient-list spec:
// {"kind":"linear","p":[...]} | {"kind":"affine","p":[...],"b":..}
// | {"kind":"quadratic"} | {"kind":"max_affine","pieces":[{"p":[..],"b":..},..]}
ScalarFunction function_from_json(const Json& j, int dim);
Json function_to_json(const Json& original);  // configs echo the spec verbatim

Json derivative_to_json(const DerivativeEstimate& est);
std::string derivative_trace_csv(const DerivativeEstimate& est);

Json witness_report_to_json(const WitnessReport& rep);
Json dual_report_to_json(const DualWitnessReport& rep);
Json orbit_trace_to_json(const OrbitTrace& trace);
std::string orbit_trace_csv(const OrbitTrace& trace);
std::string bridge_trace_csv(const std::vector<BridgeTraceRow>& trace);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

}  // namespace multidir

#endif  // MULTIDIR_SERIALIZE_HPP
