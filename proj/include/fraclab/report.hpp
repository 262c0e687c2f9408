#pragma once

// JSON serialization of certificates, solves, diagnostics, lemma runs and
// sweeps. Every document carries "schema": 1; callers attach their config
// under "config" with make_document.

#include <string>

#include <json.hpp>

#include "fraclab/cone.hpp"
#include "fraclab/lemmas.hpp"
#include "fraclab/solver.hpp"

namespace fraclab {

using json = nlohmann::ordered_json;

inline constexpr int report_schema = 1;

json to_json(const CertificateReport& c);
json to_json(const ConeDiagnostics& d);
json to_json(const SolveResult& r);
json to_json(const PairSolve& s);
json to_json(const InvarianceReport& r);
json to_json(const LemmaReport& r);
json to_json(const SweepPoint& p);
json to_json(const SweepRecord& s, double rel_width);

// {"schema": 1, "config": config, <body keys...>}
json make_document(const json& config, const json& body);

// Pretty-printed with a trailing newline; non-finite numbers become null.
std::string dump(const json& doc);
void write_json_file(const std::string& path, const json& doc);

}  // namespace fraclab
