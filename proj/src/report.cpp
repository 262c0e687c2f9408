#include "fraclab/report.hpp"

#include <cmath>
#include <fstream>

#include "fraclab/errors.hpp"

namespace fraclab {
namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json radii_json(const Radii& r) { return {{"rho1", r.rho1}, {"rho2", r.rho2}, {"rho3", r.rho3}}; }

}  // namespace

json to_json(const CertificateReport& c) {
    json j;
    j["pass"] = c.pass();
    j["status"] = std::string(to_string(c.status));
    j["b"] = num(c.b);
    j["a"] = num(c.a_coerc);
    j["c_p"] = num(c.c_p);
    j["u0_sup"] = num(c.u0_sup);
    j["lhs"] = num(c.lhs);
    j["margin"] = num(c.margin);
    j["gamma"] = num(c.gamma);
    j["a_half"] = num(c.a_half);
    j["radii"] = c.radii ? radii_json(*c.radii) : json(nullptr);
    j["solution_bound"] = num(c.solution_bound);
    return j;
}

json to_json(const ConeDiagnostics& d) {
    return {{"member", d.member()},
            {"nonneg", d.nonneg},
            {"symmetric", d.symmetric},
            {"unimodal", d.unimodal},
            {"ratio_ok", d.ratio_ok},
            {"worst_negative", num(d.worst_negative)},
            {"worst_asymmetry", num(d.worst_asymmetry)},
            {"worst_monotonicity", num(d.worst_monotonicity)},
            {"ratio_shortfall", num(d.ratio_shortfall)},
            {"inf_on_U", num(d.inf_on_U)},
            {"sup", num(d.sup)}};
}

json to_json(const SolveResult& r) {
    json j;
    j["branch"] = std::string(to_string(r.branch));
    j["status"] = std::string(to_string(r.status));
    j["converged"] = r.converged();
    j["iterations"] = r.iterations;
    j["sup_norm"] = num(r.u.sup_norm());
    j["fixed_point_residual"] = num(r.fixed_point_residual);
    j["strong_residual"] = num(r.strong_residual);
    j["in_cone"] = r.in_cone;
    if (r.branch == Branch::minimal) j["monotonicity_violation"] = num(r.monotonicity_violation);
    else {
        j["distance_to_known"] = num(r.distance_to_known);
        j["start_sup"] = num(r.start_sup);
    }
    json tr = json::array();
    for (double t : r.trace) tr.push_back(num(t));
    j["trace"] = std::move(tr);
    return j;
}

json to_json(const PairSolve& s) {
    json j;
    j["certificate"] = to_json(s.cert);
    j["degenerate"] = s.degenerate;
    j["minimal"] = to_json(s.minimal);
    j["second"] = s.second ? to_json(*s.second) : json(nullptr);
    j["both"] = s.both();
    j["separation"] = num(s.separation());
    if (s.cert.radii) j["radii_gap"] = num(s.cert.radii->rho2 - s.cert.radii->rho1);
    return j;
}

json to_json(const InvarianceReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) {
        json e = to_json(x.diag);
        e["sample"] = x.sample;
        v.push_back(std::move(e));
    }
    return {{"passed", r.passed()},
            {"count", r.count},
            {"worst_negative", num(r.worst_negative)},
            {"worst_asymmetry", num(r.worst_asymmetry)},
            {"worst_monotonicity", num(r.worst_monotonicity)},
            {"worst_ratio_shortfall", num(r.worst_ratio_shortfall)},
            {"violations", std::move(v)}};
}

json to_json(const LemmaReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"value", num(c.value)},
                          {"threshold", num(c.threshold)},
                          {"detail", c.detail}});
    return {{"all_passed", r.all_passed()},
            {"gamma_U", num(r.gamma_U)},
            {"gamma_U_refined", num(r.gamma_U_refined)},
            {"checks", std::move(checks)}};
}

json to_json(const SweepPoint& p) {
    return {{"lambda", num(p.lambda)},
            {"certified", p.certified},
            {"minimal_ok", p.minimal_ok},
            {"second_ok", p.second_ok},
            {"minimal_sup", num(p.minimal_sup)},
            {"second_sup", num(p.second_sup)},
            {"picard_iterations", p.picard_iterations},
            {"newton_iterations", p.newton_iterations}};
}

json to_json(const SweepRecord& s, double rel_width) {
    return {{"lambda_cert", num(s.lambda_cert)},
            {"fold_lower", num(s.fold_lower)},
            {"fold_upper", num(s.fold_upper)},
            {"fold_estimate", num(s.fold_estimate)},
            {"bracketed", s.bracketed},
            {"rel_width", rel_width},
            {"fold_over_cert", num(s.fold_estimate / s.lambda_cert)},
            {"sufficiency_ok", s.sufficiency_ok(rel_width)},
            {"grid_points", s.points.size()},
            {"refinement_points", s.refinement.size()}};
}

json make_document(const json& config, const json& body) {
    json doc;
    doc["schema"] = report_schema;
    doc["config"] = config;
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
    return doc;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open " + path + " for writing");
    out << dump(doc);
}

}  // namespace fraclab
