// Acceptance gate: one self-contained check per release criterion, each
// printed as a single PASS/FAIL line.  The binary exits 0 only when every
// criterion passes.  Checks 1-7 drive the library directly; check 8 runs
// the installed command-line tool over the bundled spec suite.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "lengths/block_monoid.hpp"
#include "lengths/certificates.hpp"
#include "lengths/family.hpp"
#include "lengths/invariants.hpp"
#include "lengths/numerical_monoid.hpp"
#include "lengths/oracle.hpp"
#include "lengths/profile.hpp"
#include "lengths/serialize.hpp"

namespace fs = std::filesystem;
using namespace lengths;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string describe(const char* what, const std::string& detail) {
  return std::string(what) + ": " + detail;
}

// --- shared instance corpus (criteria 1 and 2) ---

struct Instance {
  std::string name;
  LengthSystem system;
  uint32_t kmax;
};

std::vector<Instance> monoid_instances() {
  std::vector<Instance> out;
  out.push_back({"numerical {2,3}", LengthSystem::from_numerical(NumericalMonoid({2, 3})), 12});
  out.push_back({"numerical {3,5}", LengthSystem::from_numerical(NumericalMonoid({3, 5})), 12});
  out.push_back({"numerical {4,6,7}", LengthSystem::from_numerical(NumericalMonoid({4, 6, 7})), 12});
  out.push_back({"block Z2", LengthSystem::from_block(BlockMonoid(FiniteAbelianGroup({2}), {1})), 8});
  out.push_back({"block Z3", LengthSystem::from_block(BlockMonoid(FiniteAbelianGroup({3}), {1, 2})), 8});
  out.push_back({"block Z4", LengthSystem::from_block(BlockMonoid(FiniteAbelianGroup({4}), {1, 2, 3})), 8});
  out.push_back({"block Z2xZ2", LengthSystem::from_block(BlockMonoid(FiniteAbelianGroup({2, 2}), {1, 2, 3})), 8});
  return out;
}

// 25 pseudo-random sumset-generated families.  The draw is conditioned on
// the system running in exact mode (a generating set containing 0 next to
// a positive value pumps lengths forever and has no finite table to
// compare), so rejected draws are simply redrawn; the fixed seed keeps the
// corpus identical on every run.
std::vector<Instance> random_generated_instances() {
  std::mt19937 rng(20260816);
  std::uniform_int_distribution<int> n_gens(1, 3), set_size(1, 3), value(0, 10);
  std::vector<Instance> out;
  while (out.size() < 25) {
    std::vector<NatSet> gens;
    int n = n_gens(rng);
    for (int g = 0; g < n; ++g) {
      NatSet s;
      int size = set_size(rng);
      for (int i = 0; i < size; ++i) s.insert(static_cast<uint32_t>(value(rng)));
      gens.push_back(s);
    }
    LengthSystem sys = LengthSystem::from_generated(GeneratedFamily(gens));
    if (!sys.exact_mode()) continue;
    std::string name = "generated";
    for (const NatSet& g : gens) name += " " + g.to_string();
    out.push_back({name, std::move(sys), 15});
  }
  return out;
}

std::vector<Instance> corpus() {
  std::vector<Instance> all = monoid_instances();
  for (Instance& i : random_generated_instances()) all.push_back(std::move(i));
  return all;
}

// --- criterion 1: fast paths agree with the slow reference ---

std::optional<std::string> criterion_oracle_equivalence(double* elapsed) {
  Clock::time_point t0 = Clock::now();
  uint64_t comparisons = 0;
  for (const Instance& inst : corpus()) {
    OracleComparison cmp = oracle::compare_with_oracle(inst.system, inst.kmax);
    comparisons += cmp.comparisons;
    if (!cmp.ok()) return describe(inst.name.c_str(), cmp.mismatches.front());
  }
  *elapsed = seconds_since(t0);
  if (*elapsed >= 60.0)
    return describe("runtime", std::to_string(*elapsed) + "s exceeds the 60s budget");
  if (comparisons == 0) return describe("corpus", "no comparisons ran");
  return std::nullopt;
}

// --- criterion 2: the invariant lemmas hold on the same corpus ---

std::optional<std::string> check_lemmas(const Instance& inst) {
  UnionsProfile profile = UnionsProfile::build(inst.system, inst.kmax);
  ElasticityReport el = inst.system.elasticity();
  DeltaReport deltas = delta_report(inst.system, profile);
  uint32_t h = profile.k_horizon;

  // Symmetry: h appears among the lengths reachable from k products iff k
  // appears among those reachable from h products.
  for (uint32_t k = 1; k <= h; ++k)
    for (uint32_t j = 1; j <= h; ++j)
      if (profile.rows[k].unions.contains(j) != profile.rows[j].unions.contains(k))
        return describe("symmetry", "k=" + std::to_string(k) + " j=" + std::to_string(j));

  // Nested sumset monotonicity.
  for (uint32_t a = 1; a <= h; ++a)
    for (uint32_t b = a; a + b <= h; ++b)
      for (uint32_t i = 1; i <= 3; ++i)
        for (uint32_t j = 1; j <= 3; ++j) {
          NatSet left = sumset(nested_unions(profile.rows[a].unions, i)
                            , nested_unions(profile.rows[b].unions, j));
          if (!left.subset_of(nested_unions(profile.rows[a + b].unions, i + j - 1)))
            return describe("nested sumset containment",
                            "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                " i=" + std::to_string(i) + " j=" + std::to_string(j));
        }

  // Local elasticities against the family bounds: rho_k <= k*rho and
  // lambda_k >= k*lambda (empty rows satisfy both via the conventions).
  for (uint32_t k = 1; k <= h; ++k) {
    if (profile.rows[k].upper > ExtNat(k) * el.rho)
      return describe("rho_k <= k*rho", "k=" + std::to_string(k));
    if (profile.rows[k].lower < ExtNat(k) * el.lambda)
      return describe("lambda_k >= k*lambda", "k=" + std::to_string(k));
  }

  std::vector<NatSet> all = inst.system.sample_members();

  // The minimal distance divides every distance, inside members and
  // inside unions alike.
  if (!deltas.delta.is_infinite()) {
    uint64_t d = deltas.delta.value();
    for (const NatSet& m : all)
      for (uint32_t g : m.delta_set().values())
        if (g % d != 0) return describe("delta divides member gaps", m.to_string());
    for (uint32_t k = 0; k <= h; ++k)
      for (uint32_t g : profile.rows[k].unions.delta_set().values())
        if (g % d != 0) return describe("delta divides union gaps", "k=" + std::to_string(k));
  }

  // The family gcd divides the distance gcd, and the two delta routes
  // agree with the union minimum.
  uint64_t wp = inst.system.positive_gcd();
  if (wp == 0 && deltas.family_gcd != 0)
    return describe("wp | gcd of distances", "wp=0 with distances present");
  if (wp != 0 && deltas.family_gcd % wp != 0)
    return describe("wp | gcd of distances", "wp=" + std::to_string(wp));
  if (!deltas.consistent || !deltas.stabilized)
    return describe("delta routes", "min/gcd routes disagree");
  if (deltas.delta.is_infinite()) {
    if (deltas.family_gcd != 0) return describe("delta routes", "empty min, non-empty gcd");
  } else if (deltas.delta.value() != deltas.family_gcd ||
             ExtNat(deltas.delta) != profile.min_union_gap()) {
    return describe("delta = gcd = min union gap", deltas.delta.to_string());
  }

  // Gaps never grow under sumsets of members.  The member sample can run
  // to thousands of sets for monoid backends, so the quadratic pair scan
  // works on a deterministic stride sample across the whole range.
  std::vector<NatSet> members;
  size_t stride = std::max<size_t>(1, all.size() / 96);
  for (size_t i = 0; i < all.size(); i += stride) members.push_back(all[i]);
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i; j < members.size(); ++j) {
      ExtNat bound = std::max(members[i].delta_set().sup(), members[j].delta_set().sup());
      if (sumset(members[i], members[j]).delta_set().sup() > bound)
        return describe("sumset gap bound",
                        members[i].to_string() + " + " + members[j].to_string());
    }
  return std::nullopt;
}

std::optional<std::string> criterion_lemma_suite(double* elapsed) {
  Clock::time_point t0 = Clock::now();
  for (const Instance& inst : corpus())
    if (auto fail = check_lemmas(inst)) return describe(inst.name.c_str(), *fail);
  *elapsed = seconds_since(t0);
  return std::nullopt;
}

// --- criterion 3: accepted-elasticity index identities ---

std::optional<std::string> check_accepted_identities(const LengthSystem& sys,
                                                     uint32_t horizon, uint32_t limit) {
  ElasticityReport el = sys.elasticity();
  if (el.accepted != Accepted::yes || !el.witness.has_value())
    return describe("acceptance", "elasticity not accepted with a witness");
  UnionsProfile profile = UnionsProfile::build(sys, horizon);
  uint64_t m0 = el.witness->min();   // shortest length in the witness
  uint64_t M0 = el.witness->max();   // longest; M0 = m0 * rho by acceptance
  if (!(ExtNat(M0) == ExtNat(m0) * el.rho))
    return describe("witness", "max is not min * rho");
  for (uint64_t n = 1; n * m0 <= limit; ++n) {
    if (profile.rows[n * m0].upper != ExtNat(n * M0))
      return describe("rho_{n*k} = n*k*rho", "n=" + std::to_string(n));
  }
  for (uint64_t n = 1; n * M0 <= limit; ++n) {
    if (profile.rows[n * M0].lower != ExtNat(n * m0))
      return describe("lambda_{n*k*rho} = n*k", "n=" + std::to_string(n));
  }
  return std::nullopt;
}

std::optional<std::string> criterion_accepted_identities(double*) {
  auto num = LengthSystem::from_numerical(NumericalMonoid({2, 3}));
  if (auto fail = check_accepted_identities(num, 60, 40))
    return describe("numerical {2,3}", *fail);
  auto blk = LengthSystem::from_block(BlockMonoid(FiniteAbelianGroup({3}), {1, 2}));
  if (auto fail = check_accepted_identities(blk, 12, 8))
    return describe("block Z3", *fail);
  return std::nullopt;
}

// --- criterion 4: interval structure certificates ---

std::optional<std::string> check_interval_structure(const LengthSystem& sys, uint32_t horizon) {
  UnionsProfile profile = UnionsProfile::build(sys, horizon);
  DeltaReport deltas = delta_report(sys, profile);
  if (deltas.delta != ExtNat(1)) return describe("delta", deltas.delta.to_string());
  auto result = certify_structure(profile, deltas);
  const auto* cert = std::get_if<StructureCertificate>(&result);
  if (cert == nullptr) return describe("certify_structure", "refused");
  if (cert->difference != 1) return describe("difference", std::to_string(cert->difference));
  if (cert->bound != 0) return describe("bound", std::to_string(cert->bound));
  VerifyResult v = verify_structure(profile, *cert);
  if (!v.ok) return describe("verifier", v.reason);
  StructureCertificate adversarial = *cert;
  adversarial.difference = 2;  // claims gaps the family does not have
  if (verify_structure(profile, adversarial).ok)
    return describe("adversarial difference 2", "verifier accepted it");
  return std::nullopt;
}

std::optional<std::string> criterion_structure_certificates(double* elapsed) {
  Clock::time_point t0 = Clock::now();
  auto num = LengthSystem::from_numerical(NumericalMonoid({2, 3}));
  if (auto fail = check_interval_structure(num, 30)) return describe("numerical {2,3}", *fail);
  auto blk = LengthSystem::from_block(BlockMonoid(FiniteAbelianGroup({3}), {1, 2}));
  if (auto fail = check_interval_structure(blk, 10)) return describe("block Z3", *fail);
  *elapsed = seconds_since(t0);
  if (*elapsed >= 10.0)
    return describe("runtime", std::to_string(*elapsed) + "s exceeds the 10s budget");
  return std::nullopt;
}

// --- criterion 5: end-pattern period certificates ---

std::optional<std::string> criterion_period_certificates(double* elapsed) {
  Clock::time_point t0 = Clock::now();

  auto z2 = LengthSystem::from_block(BlockMonoid(FiniteAbelianGroup({2}), {1}));
  UnionsProfile p2 = UnionsProfile::build(z2, 12);
  auto r2 = certify_period(p2, 5);
  const auto* cert2 = std::get_if<PeriodCertificate>(&r2);
  if (cert2 == nullptr) return describe("block Z2", "period certificate refused");
  if (cert2->period != 1) return describe("block Z2 period", std::to_string(cert2->period));
  if (!verify_period(p2, *cert2).ok) return describe("block Z2", "verifier rejected producer");

  auto num = LengthSystem::from_numerical(NumericalMonoid({2, 3}));
  UnionsProfile pn = UnionsProfile::build(num, 60);
  auto rn = certify_period(pn, 5);
  const auto* certn = std::get_if<PeriodCertificate>(&rn);
  if (certn == nullptr) return describe("numerical {2,3}", "period certificate refused");
  VerifyResult v = verify_period(pn, *certn);
  if (!v.ok) return describe("numerical {2,3}", v.reason);

  // Scale the certified pattern period up to the least multiple at which
  // both mu*rho and mu*lambda are integral, and match it against the
  // independently searched value-periodicity modulus.
  ElasticityReport el = num.elasticity();
  uint32_t mu = 0;
  for (uint32_t t = 1; t <= 64; ++t) {
    uint32_t candidate = certn->period * t;
    if ((ExtNat(candidate) * el.rho).is_integer() &&
        (ExtNat(candidate) * el.lambda).is_integer()) {
      mu = candidate;
      break;
    }
  }
  if (mu == 0) return describe("numerical {2,3}", "no integral multiple of the period");
  PeriodicityIdentities key = verify_key_periodicity(pn, el);
  if (!key.ok) return describe("value periodicity", key.counterexample);
  if (key.m % mu != 0)
    return describe("period consistency",
                    "mu=" + std::to_string(mu) + " does not divide m=" + std::to_string(key.m));

  *elapsed = seconds_since(t0);
  if (*elapsed >= 10.0)
    return describe("runtime", std::to_string(*elapsed) + "s exceeds the 10s budget");
  return std::nullopt;
}

// --- criterion 6: degenerate conventions ---

std::optional<std::string> check_gap_free(const LengthSystem& sys, const char* name) {
  UnionsProfile profile = UnionsProfile::build(sys, 12);
  for (uint32_t k = 0; k <= 12; ++k)
    if (profile.rows[k].unions != NatSet{k})
      return describe(name, "union at k=" + std::to_string(k) + " is not {k}");
  DeltaReport deltas = delta_report(sys, profile);
  if (!deltas.delta.is_infinite()) return describe(name, "delta is finite");
  auto result = certify_structure(profile, deltas);
  const auto* cert = std::get_if<StructureCertificate>(&result);
  if (cert == nullptr || !cert->trivial) return describe(name, "no trivial certificate");
  if (!verify_structure(profile, *cert).ok) return describe(name, "trivial cert rejected");
  json rendered = invariants_json(sys, profile);
  if (rendered.at("delta") != json("inf")) return describe(name, "delta not rendered as inf");
  return std::nullopt;
}

std::optional<std::string> criterion_degenerate_conventions(double*) {
  std::vector<std::pair<std::string, LengthSystem>> zero_rows;
  zero_rows.emplace_back("numerical {2,3}",
                         LengthSystem::from_numerical(NumericalMonoid({2, 3})));
  zero_rows.emplace_back("block Z3",
                         LengthSystem::from_block(BlockMonoid(FiniteAbelianGroup({3}), {1, 2})));
  zero_rows.emplace_back("generated {2,3}",
                         LengthSystem::from_generated(GeneratedFamily({NatSet{2, 3}})));
  zero_rows.emplace_back("explicit {{},{0}}",
                         LengthSystem::from_explicit(ExplicitFamily{{NatSet{}, NatSet{0}}}));
  for (const auto& [name, sys] : zero_rows) {
    UnionsProfile profile = UnionsProfile::build(sys, 6);
    if (profile.rows[0].unions != NatSet{0})
      return describe(name.c_str(), "union at k=0 is not {0}");
  }

  if (auto fail = check_gap_free(
          LengthSystem::from_block(BlockMonoid(FiniteAbelianGroup({2}), {1})), "block Z2"))
    return fail;
  if (auto fail = check_gap_free(
          LengthSystem::from_numerical(NumericalMonoid({1})), "numerical {1}"))
    return fail;

  auto degenerate = LengthSystem::from_explicit(ExplicitFamily{{NatSet{}, NatSet{0}}});
  if (degenerate.positive_gcd() != 0)
    return describe("explicit {{},{0}}", "wp != 0");
  UnionsProfile profile = UnionsProfile::build(degenerate, 6);
  for (uint32_t k = 1; k <= 6; ++k)
    if (!profile.rows[k].unions.empty())
      return describe("explicit {{},{0}}", "union at k=" + std::to_string(k) + " not empty");
  return std::nullopt;
}

// --- criterion 7: infinite elasticity and truncated-mode refusals ---

std::optional<std::string> criterion_infinite_detection(double*) {
  auto sys = LengthSystem::from_generated(GeneratedFamily({NatSet{0, 2}}));
  FinitenessReport fin = sys.elasticity_finiteness();
  if (fin.kind != Finiteness::infinite) return describe("finiteness", "not flagged infinite");
  if (!fin.witness.has_value()) return describe("finiteness", "no witness");
  if (!fin.witness->contains(0) || fin.witness->max() == 0)
    return describe("witness", fin.witness->to_string());
  ElasticityReport el = sys.elasticity();
  if (!el.rho.is_infinite()) return describe("rho", "not infinite");
  if (el.accepted == Accepted::yes) return describe("accepted", "infinite rho accepted");
  if (sys.exact_mode()) return describe("mode", "pumping family claims exactness");

  bool member_refused = false;
  try {
    sys.members_containing(2);
  } catch (const TruncatedModeError&) {
    member_refused = true;
  }
  if (!member_refused) return describe("members_containing", "no truncated-mode refusal");

  bool oracle_refused = false;
  try {
    oracle::compare_with_oracle(sys, 4);
  } catch (const std::invalid_argument&) {
    oracle_refused = true;
  }
  if (!oracle_refused) return describe("oracle", "accepted a truncated family");

  bool certify_refused = false;
  try {
    UnionsProfile profile = UnionsProfile::build(sys, 6);
    DeltaReport deltas = delta_report(sys, profile);
    certify_structure(profile, deltas);
  } catch (const std::invalid_argument&) {
    certify_refused = true;
  }
  if (!certify_refused) return describe("certify_structure", "accepted an inexact profile");
  return std::nullopt;
}

// --- criterion 8: byte-identical reruns of the bundled suite ---

std::string run_cli_capture(const std::string& args, int* exit_code) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() / "lengths_acceptance";
  fs::create_directories(dir);
  fs::path out = dir / ("run_" + std::to_string(counter++) + ".txt");
  std::string cmd = std::string(LENGTHS_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::string> criterion_determinism(double*) {
  std::vector<fs::path> specs;
  for (const auto& entry : fs::directory_iterator(LENGTHS_SPEC_DIR))
    if (entry.path().extension() == ".json") specs.push_back(entry.path());
  std::sort(specs.begin(), specs.end());
  if (specs.size() < 15) return describe("bundled suite", "fewer than 15 specs");
  for (const fs::path& spec : specs) {
    int c1 = 0, c2 = 0, c3 = 0;
    std::string first = run_cli_capture("analyze " + spec.string(), &c1);
    std::string second = run_cli_capture("analyze " + spec.string(), &c2);
    std::string parallel = run_cli_capture("analyze " + spec.string() + " --threads 4", &c3);
    if (c1 != 0 || c2 != 0 || c3 != 0)
      return describe(spec.filename().string().c_str(), "non-zero exit");
    if (first != second)
      return describe(spec.filename().string().c_str(), "reruns differ");
    if (first != parallel)
      return describe(spec.filename().string().c_str(), "parallel run differs");
  }
  return std::nullopt;
}

struct Criterion {
  int number;
  const char* label;
  std::optional<std::string> (*check)(double*);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "oracle equivalence on monoid, block, and generated corpora", criterion_oracle_equivalence},
      {2, "invariant lemma suite holds on the full corpus", criterion_lemma_suite},
      {3, "accepted-elasticity index identities", criterion_accepted_identities},
      {4, "interval structure certificates with adversarial rejection", criterion_structure_certificates},
      {5, "end-pattern period certificates and value-periodicity consistency", criterion_period_certificates},
      {6, "degenerate family conventions", criterion_degenerate_conventions},
      {7, "infinite-elasticity detection and truncated-mode refusals", criterion_infinite_detection},
      {8, "byte-identical reruns of the bundled suite", criterion_determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    double elapsed = 0.0;
    Clock::time_point t0 = Clock::now();
    std::optional<std::string> failure;
    try {
      failure = c.check(&elapsed);
    } catch (const std::exception& e) {
      failure = describe("exception", e.what());
    }
    if (elapsed == 0.0) elapsed = seconds_since(t0);
    char timing[32];
    std::snprintf(timing, sizeof timing, " (%.1fs)", elapsed);
    if (failure) {
      ++failures;
      std::cout << "FAIL  " << c.number << "  " << c.label << " -- " << *failure << timing
                << "\n";
    } else {
      std::cout << "PASS  " << c.number << "  " << c.label << timing << "\n";
    }
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}
