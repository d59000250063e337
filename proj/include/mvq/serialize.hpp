#pragma once

// JSON views of reports. nlohmann::ordered_json keeps insertion order, so a
// given run serializes to identical bytes.

#include <json.hpp>

#include "mvq/classifier.hpp"
#include "mvq/conjectures.hpp"
#include "mvq/identities.hpp"
#include "mvq/version.hpp"

namespace mvq::serialize {

using json = nlohmann::ordered_json;

inline json to_json(const GeometrySpec& g) {
  json j;
  j["kind"] = mvq::to_string(g.kind);
  j["center"] = std::vector<double>(g.center.view().begin(), g.center.view().end());
  j["r1"] = g.r1;
  j["r2"] = g.r2;
  return j;
}

inline json to_json(const QuadratureSpec& q) {
  json j;
  j["angular_nodes"] = q.angular_nodes;
  j["azimuth_nodes"] = q.azimuth_nodes;
  j["radial_panels"] = q.radial_panels;
  j["radial_order"] = q.radial_order;
  j["grading_ratio"] = q.grading_ratio;
  return j;
}

inline json to_json(const identities::IdentityReport& r) {
  json j;
  j["identity"] = identities::to_string(r.identity);
  j["family"] = r.family_id;
  j["geometry"] = to_json(r.geometry);
  j["params"] = json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["quad_error"] = r.quad_error;
  j["pass"] = r.pass;
  j["expected_fail"] = r.expected_fail;
  return j;
}

inline json to_json(const identities::SuiteReport& s) {
  json j;
  json meta;
  meta["tool_version"] = kToolVersion;
  meta["corpus_version"] = s.corpus_version;
  meta["dimension"] = s.dimension;
  meta["seed"] = s.seed;
  meta["tolerance"] = s.tolerance;
  meta["quadrature"] = to_json(s.quadrature);
  j["metadata"] = meta;
  json sum;
  sum["total_checks"] = s.summary.total_checks;
  sum["passed"] = s.summary.passed;
  sum["failed"] = s.summary.failed;
  sum["expected_fail_checks"] = s.summary.expected_fail_checks;
  sum["negative_groups"] = s.summary.negative_groups;
  sum["negative_confirmed"] = s.summary.negative_confirmed;
  sum["all_as_planned"] = s.all_as_planned();
  j["summary"] = sum;
  j["reports"] = json::array();
  for (const auto& r : s.reports) j["reports"].push_back(to_json(r));
  return j;
}

inline json to_json(const classifier::ClassificationResult& c) {
  json j;
  j["verdict"] = classifier::to_string(c.verdict);
  if (c.parameter_estimate)
    j["parameter_estimate"] = *c.parameter_estimate;
  else
    j["parameter_estimate"] = nullptr;
  j["parameter_spread"] = c.parameter_spread;
  json thr;
  thr["identity_residual"] = c.thresholds.identity_residual;
  thr["harmonic_ratio_band"] = c.thresholds.harmonic_ratio_band;
  thr["center_floor"] = c.thresholds.center_floor;
  j["thresholds"] = thr;
  j["diagnostic"] = c.diagnostic;
  j["evidence"] = json::array();
  for (const auto& r : c.evidence) j["evidence"].push_back(to_json(r));
  return j;
}

inline json to_json(const conjectures::ProbeReport& p) {
  json j;
  j["conjecture"] = conjectures::to_string(p.conjecture);
  j["family"] = p.family_id;
  j["geometry"] = to_json(p.geometry);
  j["roots"] = p.roots;
  j["perturbation_response"] = json::array();
  for (const auto& pp : p.perturbation_response) {
    json e;
    e["eps"] = pp.eps;
    e["max_residual_change"] = pp.max_residual_change;
    j["perturbation_response"].push_back(e);
  }
  j["counterexample_candidate"] = p.counterexample_candidate;
  j["note"] = p.note;
  j["points"] = p.residual_curve.size();
  return j;
}

}  // namespace mvq::serialize
