#pragma once

// Command-line front end. Needs the vendored CLI11.hpp and json.hpp on the
// include path in addition to the core headers.

#include "dualpair/driver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dualpair::cli {

enum ExitCode : int { all_pass = 0, some_fail = 1, usage_error = 2 };

/// "1/2,3/2,5/2" -> exact rationals. Throws ConfigError on malformed input.
inline std::vector<Rational> parse_k_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const std::exception& e) {
      throw ConfigError("--k: malformed rational '" + item + "'");
    }
  }
  if (out.empty() || text.empty() || text.back() == ',') throw ConfigError("--k: empty value list");
  return out;
}

struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = all_pass;
  std::string message;
};

/// Parses `dualpair verify <suite>... [options]`. On --help or errors the
/// result carries no config, the exit code and the text to print.
inline ParseResult parse_args(int argc, const char* const* argv) {
  CLI::App app{"Exact verifier for the Bannai-Ito / Dirac dual pair identities", "dualpair"};
  app.require_subcommand(1);
  auto* verify = app.add_subcommand("verify", "Run verification suites");

  RunConfig cfg;
  std::vector<std::string> suites;
  std::string k_text;
  int jobs = static_cast<int>(cfg.jobs);
  verify->add_option("suite", suites, "Suites: all, clifford, osp, coproduct, bi, commutant, centralizer, racah, embedding, dimred, appendix")
      ->required();
  verify->add_option("--pairs", cfg.n_pairs, "Number of coordinate pairs n (2n variables)")->capture_default_str();
  verify->add_option("--max-degree", cfg.max_degree, "Largest polynomial degree checked")->capture_default_str();
  verify->add_option("--window", cfg.laurent_bound, "Laurent box bound W")->capture_default_str();
  verify->add_option("--k", k_text, "Angular momenta as exact rationals, e.g. 1/2,3/2,5/2");
  verify->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  verify->add_option("--report", cfg.report_path, "Write the JSON report to this path");
  verify->add_flag("--quiet", cfg.quiet, "Print failures and the summary only");
  verify->add_flag("--inject-fault", cfg.inject_fault, "Negative control: flip the sign of one gamma entry");

  ParseResult res;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    res.exit_code = all_pass;
    res.message = app.help();
    if (app.got_subcommand(verify)) res.message = verify->help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.exit_code = usage_error;
    res.message = std::string(e.what()) + "\nRun with --help for usage.";
    return res;
  }

  try {
    cfg.suites = suites;
    if (jobs < 1) throw ConfigError("--jobs must be >= 1");
    cfg.jobs = static_cast<unsigned>(jobs);
    if (!k_text.empty() || verify->count("--k") > 0) cfg.k_values = parse_k_list(k_text);
    cfg.validate();
  } catch (const ConfigError& e) {
    res.exit_code = usage_error;
    res.message = e.what();
    return res;
  }
  res.config = std::move(cfg);
  return res;
}

inline std::string blocks_str(const std::vector<int>& b) {
  if (b.empty()) return "-";
  bool contiguous = true;
  for (std::size_t k = 1; k < b.size(); ++k) contiguous = contiguous && b[k] == b[k - 1] + 1;
  if (contiguous && b.size() > 1) return std::to_string(b.front()) + ".." + std::to_string(b.back());
  std::string s;
  for (std::size_t k = 0; k < b.size(); ++k) s += (k ? "," : "") + std::to_string(b[k]);
  return s;
}

inline std::string witness_str(const Witness& w) {
  return "witness: degree=" + std::to_string(w.degree) + " shift=" + std::to_string(w.shift) + " row=" +
         std::to_string(w.row) + " col=" + std::to_string(w.col) + " value=" + w.value.str();
}

/// `PASS|FAIL  name(params)  blocks=...  [witness]`
inline std::string text_line(const CheckReport& r) {
  std::string s = std::string(r.pass ? "PASS" : "FAIL") + "  " + r.label() + "  blocks=" + blocks_str(r.blocks);
  if (r.witness) s += "  " + witness_str(*r.witness);
  return s;
}

inline nlohmann::ordered_json to_json(const RunReport& rep) {
  using nlohmann::ordered_json;
  ordered_json config;
  config["suites"] = rep.config.suites;
  config["n_pairs"] = rep.config.n_pairs;
  config["max_degree"] = rep.config.max_degree;
  config["laurent_bound"] = rep.config.laurent_bound;
  std::vector<std::string> ks;
  for (const auto& k : rep.config.k_values) ks.push_back(k.str());
  config["k_values"] = ks;
  config["inject_fault"] = rep.config.inject_fault;

  ordered_json checks = ordered_json::array();
  for (const auto& r : rep.checks) {
    ordered_json c;
    c["name"] = r.name;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    c["params"] = params;
    c["blocks"] = r.blocks;
    c["status"] = r.pass ? "pass" : "fail";
    if (r.witness) {
      const Witness& w = *r.witness;
      c["witness"] = ordered_json{{"degree", w.degree}, {"shift", w.shift}, {"row", w.row}, {"col", w.col}, {"value", w.value.str()}};
    }
    c["elapsed_ms"] = r.elapsed_ms;
    checks.push_back(std::move(c));
  }

  ordered_json j;
  j["version"] = engine_version();
  j["config"] = std::move(config);
  j["checks"] = std::move(checks);
  j["summary"] = ordered_json{{"pass", rep.pass}, {"fail", rep.fail}};
  j["elapsed_ms"] = rep.elapsed_ms;
  return j;
}

/// Full driver: parse, run, print, write the report. Returns the exit code.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  ParseResult parsed = parse_args(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == all_pass ? out : err) << parsed.message << "\n";
    return parsed.exit_code;
  }
  const RunConfig& cfg = *parsed.config;
  RunReport rep;
  try {
    rep = run(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const WindowError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  for (const auto& r : rep.checks)
    if (!cfg.quiet || !r.pass) out << text_line(r) << "\n";
  out << "summary: " << rep.pass << " passed, " << rep.fail << " failed, " << rep.checks.size() << " checks\n";
  if (!cfg.report_path.empty()) {
    std::ofstream f(cfg.report_path);
    if (!f) {
      err << "error: cannot write report to " << cfg.report_path << "\n";
      return usage_error;
    }
    f << to_json(rep).dump(2) << "\n";
  }
  return rep.exit_code();
}

} // namespace dualpair::cli
