// Batch front-end: parse a family specification, run the requested
// analyses, and emit deterministic CSV/JSON reports and certificates.
//
// Subcommands:
//   analyze <spec.json>              run the spec's tasks
//   verify <certificate.json> <spec.json>
//                                    re-check a certificate against a fresh profile
//   oracle-check <spec.json>         cross-check fast paths against the slow reference
//
// Exit codes: 0 success, 2 certificate refusal (or failed verification),
// 1 error.  Output is byte-identical across runs for the same inputs,
// including with --threads > 1.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "lengths/certificates.hpp"
#include "lengths/family.hpp"
#include "lengths/oracle.hpp"
#include "lengths/profile.hpp"
#include "lengths/serialize.hpp"

namespace {

using lengths::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
}

struct TaskOutcome {
  std::string status;  // "ok" | "refusal" | "error"
  std::string detail;
};

lengths::OracleBudget budget_for(const lengths::AnalysisRequest& req) {
  lengths::OracleBudget b;
  b.max_k = std::max(b.max_k, req.k_horizon);
  b.max_atoms_product = std::max(b.max_atoms_product, req.k_horizon);
  if (req.system.kind() == lengths::LengthSystem::Kind::numerical) {
    uint64_t hi = static_cast<uint64_t>(req.system.numerical().max_generator()) *
                  req.k_horizon;
    b.max_value = std::max<uint32_t>(b.max_value, static_cast<uint32_t>(hi));
  }
  return b;
}

int run_analyze(lengths::AnalysisRequest req, const std::string& out_dir, uint32_t threads) {
  lengths::UnionsProfile profile =
      lengths::UnionsProfile::build(req.system, req.k_horizon, req.i_max, threads);

  std::map<std::string, std::string> documents;  // filename -> content
  std::vector<std::pair<std::string, TaskOutcome>> outcomes;
  bool invariants_done = false;

  for (const std::string& task : req.tasks) {
    TaskOutcome outcome{"ok", ""};
    try {
      if (task == "profile") {
        documents["profile.csv"] = lengths::profile_csv(profile);
      } else if (task == "delta" || task == "elasticity") {
        if (!invariants_done) {
          documents["invariants.json"] =
              lengths::dump_json(lengths::invariants_json(req.system, profile));
          invariants_done = true;
        }
        if (!profile.all_exact && task == "delta")
          outcome.detail = "computed from truncated unions";
      } else if (task == "structure") {
        auto result = lengths::certify_structure(profile, lengths::delta_report(req.system, profile));
        if (std::holds_alternative<lengths::StructureCertificate>(result)) {
          documents["structure.json"] = lengths::dump_json(
              lengths::certificate_json(std::get<lengths::StructureCertificate>(result)));
        } else {
          const auto& refusal = std::get<lengths::StructureRefusal>(result);
          documents["structure.json"] =
              lengths::dump_json(lengths::certificate_json(refusal, profile.k_horizon));
          outcome.status = "refusal";
          outcome.detail = "no bound holds from the lower half of the horizon";
        }
      } else if (task == "period") {
        auto result = lengths::certify_period(profile, req.window);
        if (std::holds_alternative<lengths::PeriodCertificate>(result)) {
          documents["period.json"] = lengths::dump_json(
              lengths::certificate_json(std::get<lengths::PeriodCertificate>(result)));
        } else {
          const auto& refusal = std::get<lengths::PeriodRefusal>(result);
          documents["period.json"] = lengths::dump_json(
              lengths::certificate_json(refusal, profile.k_horizon, req.window));
          outcome.status = "refusal";
          outcome.detail = "no period holds from the lower half of the horizon";
        }
      } else if (task == "growth") {
        documents["growth.json"] =
            lengths::dump_json(lengths::certificate_json(lengths::certify_growth(profile)));
      } else if (task == "oracle-check") {
        lengths::OracleComparison cmp =
            lengths::oracle::compare_with_oracle(req.system, req.k_horizon, budget_for(req));
        if (cmp.ok()) {
          outcome.detail = std::to_string(cmp.comparisons) + " comparisons";
        } else {
          outcome.status = "error";
          outcome.detail = cmp.mismatches.front();
        }
      }
    } catch (const std::exception& e) {
      outcome.status = "error";
      outcome.detail = e.what();
    }
    outcomes.emplace_back(task, outcome);
  }

  int exit_code = 0;
  for (const auto& [task, outcome] : outcomes)
    if (outcome.status == "refusal" && exit_code == 0) exit_code = 2;
  for (const auto& [task, outcome] : outcomes)
    if (outcome.status == "error") exit_code = 1;

  json report;
  report["tool"] = lengths::kToolVersion;
  report["k_horizon"] = req.k_horizon;
  json tasks_json;
  for (const auto& [task, outcome] : outcomes) {
    json t;
    t["status"] = outcome.status;
    if (!outcome.detail.empty()) t["detail"] = outcome.detail;
    tasks_json[task] = t;
  }
  report["tasks"] = tasks_json;
  report["exit_code"] = exit_code;
  documents["report.json"] = lengths::dump_json(report);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (const auto& [name, content] : documents) {
      write_file(std::filesystem::path(out_dir) / name, content);
      std::cout << "wrote " << (std::filesystem::path(out_dir) / name).string() << "\n";
    }
  } else {
    for (const auto& [name, content] : documents)
      std::cout << "--- " << name << " ---\n" << content;
  }
  for (const auto& [task, outcome] : outcomes) {
    std::cout << task << ": " << outcome.status;
    if (!outcome.detail.empty()) std::cout << " (" << outcome.detail << ")";
    std::cout << "\n";
  }
  return exit_code;
}

lengths::VerifyResult verify_against(const lengths::UnionsProfile& profile,
                                     const lengths::StructureCertificate& c) {
  return lengths::verify_structure(profile, c);
}
lengths::VerifyResult verify_against(const lengths::UnionsProfile& profile,
                                     const lengths::PeriodCertificate& c) {
  return lengths::verify_period(profile, c);
}
lengths::VerifyResult verify_against(const lengths::UnionsProfile& profile,
                                     const lengths::GrowthCertificate& c) {
  return lengths::verify_growth(profile, c);
}

int run_verify(const std::string& cert_path, const std::string& spec_path, uint32_t threads) {
  lengths::ParsedCertificate cert = lengths::parse_certificate(read_json_file(cert_path));
  lengths::AnalysisRequest req = lengths::parse_analysis_request(read_json_file(spec_path));
  uint32_t horizon = std::visit([](const auto& c) { return c.horizon; }, cert);
  req.system.fit_limits(horizon);
  lengths::UnionsProfile profile =
      lengths::UnionsProfile::build(req.system, horizon, 1, threads);
  lengths::VerifyResult result = std::visit(
      [&](const auto& c) { return verify_against(profile, c); }, cert);
  if (result.ok) {
    std::cout << "verification: OK\n";
    return 0;
  }
  std::cout << "verification failed: " << result.reason << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact invariants and machine-checkable certificates for families of length sets"};
  app.require_subcommand(1);

  std::string spec_path, cert_path, out_dir;
  int64_t kmax = -1, window = -1, imax = -1;
  uint32_t threads = 1;
  bool with_oracle = false;

  CLI::App* analyze = app.add_subcommand("analyze", "run the analyses requested by a spec file");
  analyze->add_option("spec", spec_path, "JSON analysis spec")->required();
  analyze->add_option("--kmax", kmax, "override the spec's k_horizon");
  analyze->add_option("--window", window, "override the spec's end-pattern window");
  analyze->add_option("--imax", imax, "override the spec's nested-union depth");
  analyze->add_option("--out", out_dir, "directory for output documents");
  analyze->add_flag("--oracle", with_oracle, "also run the oracle cross-check");
  analyze->add_option("--threads", threads, "worker threads for the profile build");

  CLI::App* verify = app.add_subcommand("verify", "re-check a certificate against a fresh profile");
  verify->add_option("certificate", cert_path, "certificate JSON")->required();
  verify->add_option("spec", spec_path, "JSON analysis spec")->required();
  verify->add_option("--threads", threads, "worker threads for the profile build");

  CLI::App* oracle_check = app.add_subcommand("oracle-check", "cross-check fast paths against the slow reference");
  oracle_check->add_option("spec", spec_path, "JSON analysis spec")->required();
  oracle_check->add_option("--kmax", kmax, "override the spec's k_horizon");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed() || oracle_check->parsed()) {
      lengths::AnalysisRequest req = lengths::parse_analysis_request(read_json_file(spec_path));
      if (kmax >= 0) {
        req.k_horizon = static_cast<uint32_t>(kmax);
        req.system.fit_limits(req.k_horizon);
      }
      if (window >= 0) req.window = static_cast<uint32_t>(window);
      if (imax >= 1) req.i_max = static_cast<uint32_t>(imax);
      if (oracle_check->parsed()) {
        req.tasks = {"oracle-check"};
      } else if (with_oracle) {
        bool present = false;
        for (const std::string& t : req.tasks)
          if (t == "oracle-check") present = true;
        if (!present) req.tasks.push_back("oracle-check");
      }
      return run_analyze(std::move(req), oracle_check->parsed() ? std::string() : out_dir,
                         threads);
    }
    return run_verify(cert_path, spec_path, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
