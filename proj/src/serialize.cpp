#include "multidir/serialize.hpp"

#include <cstdio>

#include "multidir/errors.hpp"

namespace multidir {

namespace {

void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw ParseError("unknown key '" + it.key() + "' in " + what);
    }
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Json vec_to_json(const Vec& v) {
    Json j = Json::array();
    for (double x : v) j.push_back(x);
    return j;
}

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected a numeric array");
    Vec v;
    for (const auto& x : j) {
        if (!x.is_number()) throw ParseError("expected a numeric array");
        v.push_back(x.get<double>());
    }
    return v;
}

Json body_to_json(const ConvexBody& body) {
    Json j;
    if (const auto* p = std::get_if<PolytopeRep>(&body.rep())) {
        j["kind"] = "polytope";
        Json verts = Json::array();
        for (const auto& v : p->vertices) verts.push_back(vec_to_json(v));
        j["vertices"] = verts;
        return j;
    }
    if (const auto* b = std::get_if<BallRep>(&body.rep())) {
        j["kind"] = "ball";
        j["center"] = vec_to_json(b->center);
        j["radius"] = b->radius;
        return j;
    }
    if (const auto* e = std::get_if<EnlargementRep>(&body.rep())) {
        j["kind"] = "enlargement";
        j["base"] = body_to_json(*e->base);
        j["eps"] = e->eps;
        return j;
    }
    const auto& pr = std::get<ProductRep>(body.rep());
    j["kind"] = "product";
    j["base"] = body_to_json(*pr.base);
    j["lo"] = pr.lo;
    j["hi"] = pr.hi;
    return j;
}

ConvexBody body_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("body spec needs a 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "polytope") {
        require_keys(j, {"kind", "vertices"}, "polytope body");
        std::vector<Vec> verts;
        for (const auto& v : j.at("vertices")) verts.push_back(vec_from_json(v));
        if (verts.empty()) throw ParseError("polytope needs at least one vertex");
        return ConvexBody::polytope(std::move(verts));
    }
    if (kind == "ball") {
        require_keys(j, {"kind", "center", "radius"}, "ball body");
        double r = j.at("radius").get<double>();
        if (r < 0.0) throw ParseError("ball radius must be nonnegative");
        return ConvexBody::ball(vec_from_json(j.at("center")), r);
    }
    if (kind == "enlargement") {
        require_keys(j, {"kind", "base", "eps"}, "enlargement body");
        double eps = j.at("eps").get<double>();
        if (eps < 0.0) throw ParseError("enlargement eps must be nonnegative");
        return ConvexBody::enlargement(body_from_json(j.at("base")), eps);
    }
    if (kind == "product") {
        require_keys(j, {"kind", "base", "lo", "hi"}, "product body");
        return ConvexBody::product(body_from_json(j.at("base")), j.at("lo").get<double>(),
                                   j.at("hi").get<double>());
    }
    throw ParseError("unknown body kind: " + kind);
}

ScalarFunction function_from_json(const Json& j, int dim) {
    if (!j.is_object()) throw ParseError("function spec must be an object");
    if (j.contains("label")) {
        require_keys(j, {"label"}, "function spec");
        return catalog_by_label(j.at("label").get<std::string>(), dim);
    }
    if (!j.contains("kind")) throw ParseError("function spec needs a 'label' or 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") {
        require_keys(j, {"kind", "p"}, "linear function");
        return make_linear(vec_from_json(j.at("p")));
    }
    if (kind == "affine") {
        require_keys(j, {"kind", "p", "b"}, "affine function");
        return make_affine(vec_from_json(j.at("p")), j.at("b").get<double>());
    }
    if (kind == "quadratic") {
        require_keys(j, {"kind"}, "quadratic function");
        return make_quadratic(dim);
    }
    if (kind == "max_affine") {
        require_keys(j, {"kind", "pieces"}, "max_affine function");
        std::vector<std::pair<Vec, double>> pieces;
        for (const auto& piece : j.at("pieces")) {
            require_keys(piece, {"p", "b"}, "max_affine piece");
            pieces.emplace_back(vec_from_json(piece.at("p")), piece.at("b").get<double>());
        }
        return make_max_affine(std::move(pieces));
    }
    throw ParseError("unknown function kind: " + kind);
}

Json function_to_json(const Json& original) { return original; }

Json derivative_to_json(const DerivativeEstimate& est) {
    Json j;
    j["estimate"] = est.estimate;
    j["schedule"] = {{"t0", est.schedule.t0},
                     {"rho", est.schedule.rho},
                     {"steps", est.schedule.steps},
                     {"tail_window", est.schedule.tail_window}};
    j["refinement"] = est.refinement;
    j["levels"] = est.ts.size();
    return j;
}

std::string derivative_trace_csv(const DerivativeEstimate& est) {
    std::string out = "k,t_k,inf_value,quotient\n";
    for (std::size_t k = 0; k < est.ts.size(); ++k) {
        out += std::to_string(k) + "," + csv_num(est.ts[k]) + "," + csv_num(est.inf_values[k]) +
               "," + csv_num(est.quotients[k]) + "\n";
    }
    return out;
}

Json witness_report_to_json(const WitnessReport& rep) {
    Json j;
    j["witness"] = vec_to_json(rep.witness);
    j["f_at_witness"] = rep.f_at_witness;
    j["bound_checked"] = rep.bound_checked;
    j["derivative"] = derivative_to_json(rep.derivative_estimate);
    j["target"] = rep.target;
    j["slack"] = rep.slack;
    j["grid"] = rep.grid;
    j["tol"] = rep.tol;
    j["value_ok"] = rep.value_ok;
    j["slack_ok"] = rep.slack_ok;
    j["membership_ok"] = rep.membership_ok;
    j["degenerate_branch"] = rep.degenerate_branch;
    j["verified"] = rep.verified;
    return j;
}

Json dual_report_to_json(const DualWitnessReport& rep) {
    Json j;
    j["xi"] = vec_to_json(rep.xi);
    j["p"] = vec_to_json(rep.p);
    j["f_at_xi"] = rep.f_at_xi;
    j["membership"] = {{"dist", rep.membership_dist}, {"ok", rep.membership_ok}};
    j["value_bound"] = {{"lhs", rep.value_lhs}, {"rhs", rep.value_rhs}, {"ok", rep.value_ok}};
    j["pairing"] = {{"value", rep.pairing}, {"rhs", rep.pairing_rhs}, {"ok", rep.pairing_ok}};
    j["params"] = {{"eps", rep.params.eps},
                   {"delta1", rep.params.delta1},
                   {"r1", rep.params.r1},
                   {"delta", rep.params.delta},
                   {"Delta", rep.params.Delta},
                   {"r_prime", rep.params.r_prime},
                   {"f_a", rep.params.f_a},
                   {"r", rep.params.r},
                   {"inf_enlarged_delta1", rep.params.inf_enlarged_delta1},
                   {"inf_lifted_delta", rep.params.inf_lifted_delta}};
    j["lifted_pairing"] = rep.lifted_pairing;
    j["accepted_n"] = rep.accepted_n;
    j["lifted_witness"] = witness_report_to_json(rep.lifted_witness);
    j["verified"] = rep.verified;
    return j;
}

Json orbit_trace_to_json(const OrbitTrace& trace) {
    Json j;
    j["extremal"] = vec_to_json(trace.extremal);
    j["visited"] = trace.visited.size();
    j["total_step_length"] = trace.total_step_length;
    return j;
}

std::string orbit_trace_csv(const OrbitTrace& trace) {
    std::string out = "step,point,nu_n,step_norm,candidates\n";
    for (std::size_t i = 0; i < trace.visited.size(); ++i) {
        out += std::to_string(i) + ",\"";
        const Vec& p = trace.visited[i];
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k) out += ";";
            out += csv_num(p[k]);
        }
        out += "\"";
        if (i == 0) {
            out += ",,,\n";
        } else {
            const auto& st = trace.steps[i - 1];
            out += "," + csv_num(st.nu) + "," + csv_num(st.step_norm) + "," +
                   std::to_string(st.candidates) + "\n";
        }
    }
    return out;
}

std::string bridge_trace_csv(const std::vector<BridgeTraceRow>& trace) {
    std::string out = "n,x,f_value,psi_value,p_plus_q_norm,inf_p,interior,accepted\n";
    for (const auto& row : trace) {
        out += std::to_string(row.n) + ",\"";
        for (std::size_t k = 0; k < row.x.size(); ++k) {
            if (k) out += ";";
            out += csv_num(row.x[k]);
        }
        out += "\"," + csv_num(row.f_value) + "," + csv_num(row.psi_value) + "," +
               csv_num(row.pq_norm) + "," + csv_num(row.inf_p) + "," +
               (row.interior ? "1" : "0") + "," + (row.accepted ? "1" : "0") + "\n";
    }
    return out;
}

}  // namespace multidir
