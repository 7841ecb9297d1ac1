#pragma once

// File formats: JSON analysis requests, CSV profiles, invariant reports,
// and certificate round-trips.  All output is deterministic — ordered keys,
// two-space indentation, exact rationals as "p/q" strings.  CSV cells use
// "inf" for genuinely infinite values (minima of empty sets, unbounded
// maxima) and "-" for suprema of empty sets.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "lengths/abelian_group.hpp"
#include "lengths/block_monoid.hpp"
#include "lengths/certificates.hpp"
#include "lengths/family.hpp"
#include "lengths/invariants.hpp"
#include "lengths/natset.hpp"
#include "lengths/numerical_monoid.hpp"
#include "lengths/profile.hpp"

namespace lengths {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "lengths 0.1.0";

// Validation failure with the JSON-pointer-style path of the offending node.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Tasks in canonical execution order.
inline const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> t = {"profile",   "delta",  "elasticity",
                                             "structure", "period", "growth",
                                             "oracle-check"};
  return t;
}

struct AnalysisRequest {
  LengthSystem system;
  std::vector<std::string> tasks;  // canonical order, deduplicated
  uint32_t k_horizon = 0;
  uint32_t i_max = 8;
  uint32_t window = 5;
  std::optional<uint32_t> value_horizon;
};

namespace detail {

inline uint64_t as_uint(const json& j, const std::string& path, uint64_t lo, uint64_t hi) {
  if (!(j.is_number_integer() || j.is_number_unsigned()) ||
      (j.is_number_integer() && !j.is_number_unsigned() && j.get<int64_t>() < 0))
    throw SpecError(path, "expected a non-negative integer");
  uint64_t v = j.get<uint64_t>();
  if (v < lo) throw SpecError(path, "must be at least " + std::to_string(lo));
  if (v > hi) throw SpecError(path, "must be at most " + std::to_string(hi));
  return v;
}

inline std::vector<uint32_t> as_uint_array(const json& j, const std::string& path,
                                           uint64_t lo, uint64_t hi) {
  if (!j.is_array()) throw SpecError(path, "expected an array");
  std::vector<uint32_t> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(static_cast<uint32_t>(as_uint(j[i], path + "/" + std::to_string(i), lo, hi)));
  return out;
}

inline void reject_unknown_keys(const json& obj, const std::string& path,
                                std::initializer_list<const char*> keys) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) throw SpecError(path + "/" + it.key(), "unknown key");
  }
}

inline std::string joined_residues(const std::vector<uint32_t>& tuple) {
  std::string out;
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(tuple[i]);
  }
  return out;
}

// Weights object over string keys; every expected key must be present and
// no others may appear.
inline std::vector<uint32_t> parse_weight_map(const json& j, const std::string& path,
                                              const std::vector<std::string>& expected_keys) {
  if (!j.is_object()) throw SpecError(path, "expected an object");
  std::vector<uint32_t> out(expected_keys.size(), 0);
  std::vector<bool> seen(expected_keys.size(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool matched = false;
    for (size_t i = 0; i < expected_keys.size(); ++i)
      if (it.key() == expected_keys[i]) {
        out[i] = static_cast<uint32_t>(as_uint(it.value(), path + "/" + it.key(), 0, 1u << 20));
        seen[i] = true;
        matched = true;
        break;
      }
    if (!matched) throw SpecError(path + "/" + it.key(), "no matching atom");
  }
  for (size_t i = 0; i < expected_keys.size(); ++i)
    if (!seen[i]) throw SpecError(path, "missing weight for \"" + expected_keys[i] + "\"");
  return out;
}

inline LengthSystem parse_family(const json& fam) {
  if (!fam.is_object()) throw SpecError("/family", "expected an object");
  if (!fam.contains("kind")) throw SpecError("/family/kind", "required");
  if (!fam["kind"].is_string()) throw SpecError("/family/kind", "expected a string");
  std::string kind = fam["kind"].get<std::string>();

  if (kind == "numerical") {
    reject_unknown_keys(fam, "/family", {"kind", "generators", "weights"});
    if (!fam.contains("generators")) throw SpecError("/family/generators", "required");
    std::vector<uint32_t> gens = as_uint_array(fam["generators"], "/family/generators", 1,
                                               1u << 16);
    NumericalMonoid monoid = [&] {
      try {
        return NumericalMonoid(gens);
      } catch (const std::invalid_argument& e) {
        throw SpecError("/family/generators", e.what());
      }
    }();
    std::vector<uint32_t> weights;
    if (fam.contains("weights")) {
      std::vector<std::string> keys;
      for (uint32_t g : monoid.generators()) keys.push_back(std::to_string(g));
      weights = parse_weight_map(fam["weights"], "/family/weights", keys);
    }
    return LengthSystem::from_numerical(std::move(monoid), std::move(weights));
  }

  if (kind == "block") {
    reject_unknown_keys(fam, "/family", {"kind", "group", "support", "weights"});
    if (!fam.contains("group")) throw SpecError("/family/group", "required");
    std::vector<uint32_t> factors = as_uint_array(fam["group"], "/family/group", 2, 4096);
    FiniteAbelianGroup group = [&] {
      try {
        return FiniteAbelianGroup(factors);
      } catch (const std::invalid_argument& e) {
        throw SpecError("/family/group", e.what());
      }
    }();
    std::vector<uint32_t> support;
    if (fam.contains("support")) {
      const json& sup = fam["support"];
      if (!sup.is_array() || sup.empty())
        throw SpecError("/family/support", "expected a non-empty array");
      for (size_t i = 0; i < sup.size(); ++i) {
        std::string p = "/family/support/" + std::to_string(i);
        std::vector<uint32_t> tuple = as_uint_array(sup[i], p, 0, 4096);
        if (tuple.size() != factors.size())
          throw SpecError(p, "expected " + std::to_string(factors.size()) + " residues");
        for (size_t d = 0; d < tuple.size(); ++d)
          if (tuple[d] >= factors[d])
            throw SpecError(p + "/" + std::to_string(d), "residue out of range");
        if (group.encode(tuple) == 0)
          throw SpecError(p, "support must omit the zero element");
        support.push_back(group.encode(tuple));
      }
      std::sort(support.begin(), support.end());
      for (size_t i = 1; i < support.size(); ++i)
        if (support[i] == support[i - 1])
          throw SpecError("/family/support", "duplicate element");
    } else {
      for (uint32_t idx = 1; idx < group.order(); ++idx) support.push_back(idx);
    }
    std::vector<uint32_t> atom_weights;
    if (fam.contains("weights")) {
      // Weights are per support element; an atom's weight is the weighted
      // count of its letters.
      std::vector<std::string> keys;
      for (uint32_t idx : support) keys.push_back(joined_residues(group.decode(idx)));
      std::vector<uint32_t> per_element =
          parse_weight_map(fam["weights"], "/family/weights", keys);
      BlockMonoid monoid(group, support);
      for (const ZeroSumSeq& atom : monoid.atoms()) {
        uint64_t w = 0;
        for (size_t j = 0; j < atom.mult.size(); ++j)
          w += static_cast<uint64_t>(atom.mult[j]) * per_element[j];
        atom_weights.push_back(static_cast<uint32_t>(w));
      }
      return LengthSystem::from_block(std::move(monoid), std::move(atom_weights));
    }
    return LengthSystem::from_block(BlockMonoid(group, support));
  }

  if (kind == "sumset") {
    reject_unknown_keys(fam, "/family", {"kind", "generators"});
    if (!fam.contains("generators")) throw SpecError("/family/generators", "required");
    const json& gens = fam["generators"];
    if (!gens.is_array() || gens.empty())
      throw SpecError("/family/generators", "expected a non-empty array");
    std::vector<NatSet> sets;
    for (size_t i = 0; i < gens.size(); ++i) {
      std::string p = "/family/generators/" + std::to_string(i);
      std::vector<uint32_t> vals = as_uint_array(gens[i], p, 0, 1u << 20);
      if (vals.empty()) throw SpecError(p, "generator sets must be non-empty");
      NatSet s;
      for (uint32_t v : vals) s.insert(v);
      sets.push_back(std::move(s));
    }
    return LengthSystem::from_generated(GeneratedFamily(std::move(sets)));
  }

  if (kind == "explicit") {
    reject_unknown_keys(fam, "/family", {"kind", "sets"});
    if (!fam.contains("sets")) throw SpecError("/family/sets", "required");
    const json& sets = fam["sets"];
    if (!sets.is_array()) throw SpecError("/family/sets", "expected an array");
    ExplicitFamily family;
    for (size_t i = 0; i < sets.size(); ++i) {
      std::string p = "/family/sets/" + std::to_string(i);
      NatSet s;
      for (uint32_t v : as_uint_array(sets[i], p, 0, 1u << 20)) s.insert(v);
      family.members.push_back(std::move(s));
    }
    return LengthSystem::from_explicit(std::move(family));
  }

  throw SpecError("/family/kind", "unknown kind \"" + kind + "\"");
}

}  // namespace detail

// Parse and validate a full analysis request.  Semantic checks included:
// backend invariants (reported under the family path) and the requirement
// that delta/structure/period/growth tasks only run on subadditive
// families — violated explicit families are rejected with the offending
// pair of members.
inline AnalysisRequest parse_analysis_request(const json& doc) {
  if (!doc.is_object()) throw SpecError("", "expected a JSON object");
  detail::reject_unknown_keys(
      doc, "", {"family", "tasks", "k_horizon", "value_horizon", "window", "i_max"});
  if (!doc.contains("family")) throw SpecError("/family", "required");
  if (!doc.contains("tasks")) throw SpecError("/tasks", "required");
  if (!doc.contains("k_horizon")) throw SpecError("/k_horizon", "required");

  AnalysisRequest req{detail::parse_family(doc["family"]), {}, 0, 8, 5, std::nullopt};

  const json& tasks = doc["tasks"];
  if (!tasks.is_array() || tasks.empty())
    throw SpecError("/tasks", "expected a non-empty array");
  std::vector<bool> requested(known_tasks().size(), false);
  for (size_t i = 0; i < tasks.size(); ++i) {
    std::string p = "/tasks/" + std::to_string(i);
    if (!tasks[i].is_string()) throw SpecError(p, "expected a string");
    std::string name = tasks[i].get<std::string>();
    bool known = false;
    for (size_t t = 0; t < known_tasks().size(); ++t)
      if (known_tasks()[t] == name) {
        requested[t] = true;
        known = true;
        break;
      }
    if (!known) throw SpecError(p, "unknown task \"" + name + "\"");
  }
  for (size_t t = 0; t < known_tasks().size(); ++t)
    if (requested[t]) req.tasks.push_back(known_tasks()[t]);

  req.k_horizon = static_cast<uint32_t>(detail::as_uint(doc["k_horizon"], "/k_horizon", 1,
                                                        1u << 16));
  if (doc.contains("value_horizon"))
    req.value_horizon = static_cast<uint32_t>(
        detail::as_uint(doc["value_horizon"], "/value_horizon", 1, 1u << 22));
  if (doc.contains("window"))
    req.window = static_cast<uint32_t>(detail::as_uint(doc["window"], "/window", 0, 1u << 16));
  if (doc.contains("i_max"))
    req.i_max = static_cast<uint32_t>(detail::as_uint(doc["i_max"], "/i_max", 1, 64));

  req.system.fit_limits(req.k_horizon);
  if (req.value_horizon)
    req.system.limits().value_horizon =
        std::max(req.system.limits().value_horizon, *req.value_horizon);

  // delta/structure/period/growth presuppose a subadditive family; explicit
  // lists must prove it, the other backends carry it structurally.
  bool needs_subadditive = false;
  for (const std::string& t : req.tasks)
    if (t == "delta" || t == "structure" || t == "period" || t == "growth")
      needs_subadditive = true;
  if (needs_subadditive && req.system.kind() == LengthSystem::Kind::explicit_list) {
    SubadditiveCheck check = check_subadditive(req.system.explicit_family().members);
    if (!check.ok)
      throw SpecError("/family/sets",
                      "family is not subadditive: members " + std::to_string(check.first) +
                          " and " + std::to_string(check.second) + " have sumset " +
                          check.sum.to_string() + " contained in no member");
  }
  return req;
}

// --- rendering helpers ---

inline json ext_json(const ExtNat& v) {
  return v.is_infinite() ? json("inf") : json(v.value());
}

inline json set_json(const NatSet& s) {
  json a = json::array();
  for (uint32_t v : s.values()) a.push_back(v);
  return a;
}

inline NatSet set_from_json(const json& a, const std::string& path) {
  NatSet out;
  for (uint32_t v : detail::as_uint_array(a, path, 0, 1u << 22)) out.insert(v);
  return out;
}

inline const char* accepted_name(Accepted a) {
  switch (a) {
    case Accepted::yes: return "yes";
    case Accepted::no: return "no";
    case Accepted::unknown: break;
  }
  return "unknown";
}

inline const char* finiteness_name(Finiteness f) {
  switch (f) {
    case Finiteness::finite: return "finite";
    case Finiteness::infinite: return "infinite";
    case Finiteness::unknown: break;
  }
  return "unknown";
}

// --- profile CSV ---

inline std::string profile_csv(const UnionsProfile& p) {
  std::string out = "k,lambda_k,rho_k,card,sup_delta,exact\n";
  for (const ProfileRow& r : p.rows) {
    out += std::to_string(r.k) + ",";
    if (r.unions.empty()) {
      out += "inf,-,0,-,";
    } else {
      out += r.lower.to_string() + "," + r.upper.to_string() + ",";
      out += std::to_string(r.unions.size()) + ",";
      out += (r.gap_set_empty ? std::string("-") : r.sup_gap.to_string()) + ",";
    }
    out += r.exact ? "1" : "0";
    out += "\n";
  }
  return out;
}

// --- invariant report ---

inline json invariants_json(const LengthSystem& sys, const UnionsProfile& profile) {
  DeltaReport dr = delta_report(sys, profile);
  ElasticityReport el = sys.elasticity();
  FinitenessReport fin = sys.elasticity_finiteness();
  json j;
  j["tool"] = kToolVersion;
  j["wp"] = sys.positive_gcd();
  j["delta"] = ext_json(dr.delta);
  j["delta_gcd"] = dr.family_gcd;
  j["distances_family"] = set_json(dr.family_distances);
  j["distances_union"] = set_json(dr.union_distances);
  j["stabilized"] = dr.stabilized;
  j["rho"] = el.rho.to_string();
  j["lambda"] = el.lambda.to_string();
  j["accepted"] = accepted_name(el.accepted);
  j["witness"] = el.witness ? set_json(*el.witness) : json(nullptr);
  j["finiteness"] = finiteness_name(fin.kind);
  j["infinite_witness"] = fin.witness ? set_json(*fin.witness) : json(nullptr);
  return j;
}

// --- certificates ---

namespace detail {

inline json certificate_base(const char* type, uint32_t horizon, const char* status) {
  json j;
  j["tool"] = kToolVersion;
  j["type"] = type;
  j["horizon"] = horizon;
  j["status"] = status;
  return j;
}

}  // namespace detail

inline json certificate_json(const StructureCertificate& c) {
  json j = detail::certificate_base("structure", c.horizon, "certificate");
  j["difference"] = c.difference;
  j["bound"] = c.bound;
  j["onset"] = c.onset;
  j["trivial"] = c.trivial;
  if (c.diag_gap_cap) {
    json d;
    d["gap_cap"] = *c.diag_gap_cap;
    if (c.diag_anchor) d["anchor"] = *c.diag_anchor;
    if (c.diag_upper_bound) d["upper_bound"] = *c.diag_upper_bound;
    j["diagnostics"] = d;
  }
  return j;
}

inline json certificate_json(const StructureRefusal& r, uint32_t horizon) {
  json j = detail::certificate_base("structure", horizon, "refusal");
  j["difference"] = r.difference;
  j["best_bound"] = r.best_bound;
  j["best_onset"] = r.best_onset;
  j["blocking_k"] = r.blocking_k;
  return j;
}

inline json certificate_json(const PeriodCertificate& c) {
  json j = detail::certificate_base("period", c.horizon, "certificate");
  j["period"] = c.period;
  j["onset"] = c.onset;
  j["window"] = c.window;
  json lp = json::array(), rp = json::array();
  for (const NatSet& s : c.left_patterns) lp.push_back(set_json(s));
  for (const NatSet& s : c.right_patterns) rp.push_back(set_json(s));
  j["left_patterns"] = lp;
  j["right_patterns"] = rp;
  return j;
}

inline json certificate_json(const PeriodRefusal& r, uint32_t horizon, uint32_t window) {
  json j = detail::certificate_base("period", horizon, "refusal");
  j["best_period"] = r.best_period;
  j["best_onset"] = r.best_onset;
  j["blocking_k"] = r.blocking_k;
  j["window"] = window;
  return j;
}

inline json certificate_json(const GrowthCertificate& c) {
  json j = detail::certificate_base("growth", c.horizon, "certificate");
  j["step_bound"] = c.step_bound;
  j["onset"] = c.onset;
  json ms = json::array();
  for (auto [q, nq] : c.multi_step) ms.push_back(json::array({q, nq}));
  j["multi_step"] = ms;
  return j;
}

using ParsedCertificate =
    std::variant<StructureCertificate, PeriodCertificate, GrowthCertificate>;

namespace detail {

inline const json& req_field(const json& j, const char* key) {
  if (!j.contains(key)) throw SpecError(std::string("/") + key, "required");
  return j[key];
}

}  // namespace detail

inline ParsedCertificate parse_certificate(const json& j) {
  if (!j.is_object()) throw SpecError("", "expected a JSON object");
  if (!j.contains("type") || !j["type"].is_string())
    throw SpecError("/type", "required string");
  if (!j.contains("status") || j["status"] != "certificate")
    throw SpecError("/status", "only certificates can be verified");
  std::string type = j["type"].get<std::string>();
  uint32_t horizon = static_cast<uint32_t>(
      detail::as_uint(detail::req_field(j, "horizon"), "/horizon", 1, 1u << 16));
  if (type == "structure") {
    StructureCertificate c;
    c.horizon = horizon;
    c.difference = static_cast<uint32_t>(
        detail::as_uint(detail::req_field(j, "difference"), "/difference", 1, 1u << 16));
    c.bound = static_cast<uint32_t>(
        detail::as_uint(detail::req_field(j, "bound"), "/bound", 0, 1u << 16));
    c.onset = static_cast<uint32_t>(
        detail::as_uint(detail::req_field(j, "onset"), "/onset", 0, 1u << 16));
    c.trivial = j.value("trivial", false);
    return c;
  }
  if (type == "period") {
    PeriodCertificate c;
    c.horizon = horizon;
    c.period = static_cast<uint32_t>(
        detail::as_uint(detail::req_field(j, "period"), "/period", 1, 1u << 16));
    c.onset = static_cast<uint32_t>(
        detail::as_uint(detail::req_field(j, "onset"), "/onset", 0, 1u << 16));
    c.window = static_cast<uint32_t>(
        detail::as_uint(detail::req_field(j, "window"), "/window", 0, 1u << 16));
    if (!j.contains("left_patterns") || !j.contains("right_patterns"))
      throw SpecError("/left_patterns", "pattern arrays required");
    for (size_t i = 0; i < j["left_patterns"].size(); ++i)
      c.left_patterns.push_back(
          set_from_json(j["left_patterns"][i], "/left_patterns/" + std::to_string(i)));
    for (size_t i = 0; i < j["right_patterns"].size(); ++i)
      c.right_patterns.push_back(
          set_from_json(j["right_patterns"][i], "/right_patterns/" + std::to_string(i)));
    return c;
  }
  if (type == "growth") {
    GrowthCertificate c;
    c.horizon = horizon;
    c.step_bound = static_cast<uint32_t>(
        detail::as_uint(detail::req_field(j, "step_bound"), "/step_bound", 0, 1u << 16));
    c.onset = static_cast<uint32_t>(
        detail::as_uint(detail::req_field(j, "onset"), "/onset", 0, 1u << 16));
    if (j.contains("multi_step")) {
      for (size_t i = 0; i < j["multi_step"].size(); ++i) {
        std::string p = "/multi_step/" + std::to_string(i);
        std::vector<uint32_t> pair = detail::as_uint_array(j["multi_step"][i], p, 0, 1u << 16);
        if (pair.size() != 2) throw SpecError(p, "expected [q, bound]");
        c.multi_step.emplace_back(pair[0], pair[1]);
      }
    }
    return c;
  }
  throw SpecError("/type", "unknown certificate type \"" + type + "\"");
}

// Deterministic dump: two-space indent, trailing newline.
inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace lengths
