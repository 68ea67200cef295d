#pragma once

#include "dualpair/basic_checks.hpp"
#include "dualpair/dimred.hpp"
#include "dualpair/osp.hpp"
#include "dualpair/parallel.hpp"
#include "dualpair/racah.hpp"
#include "dualpair/relations.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef DUALPAIR_VERSION
#define DUALPAIR_VERSION "1.0.0"
#endif

namespace dualpair {

inline const char* engine_version() { return DUALPAIR_VERSION; }

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"clifford", "osp",    "coproduct", "bi",     "commutant",
                                              "centralizer", "racah", "embedding", "dimred", "appendix"};
  return names;
}

/// Invalid configuration; the driver maps it to the usage exit code.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::vector<std::string> suites{"all"};
  int n_pairs = 3;
  int max_degree = 4;
  int laurent_bound = 4;
  std::vector<Rational> k_values{Rational(1, 2), Rational(3, 2), Rational(5, 2)};
  unsigned jobs = default_jobs();
  std::string report_path;
  bool quiet = false;
  bool inject_fault = false;

  bool explicit_suite(const std::string& s) const { return std::find(suites.begin(), suites.end(), s) != suites.end(); }
  bool wants(const std::string& s) const { return explicit_suite("all") || explicit_suite(s); }

  void validate() const {
    if (suites.empty()) throw ConfigError("no suite selected");
    for (const auto& s : suites)
      if (s != "all" && std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
        throw ConfigError("unknown suite '" + s + "'");
    if (n_pairs < 1) throw ConfigError("--pairs must be >= 1");
    if (n_pairs > 6) throw ConfigError("--pairs must be <= 6");
    if (max_degree < 1) throw ConfigError("--max-degree must be >= 1");
    if (laurent_bound < 2) throw ConfigError("--window must be >= 2");
    if (jobs < 1) throw ConfigError("--jobs must be >= 1");
    if (wants("dimred") && (k_values.empty() || k_values.size() > 5)) throw ConfigError("--k needs 1 to 5 values");
    auto need = [&](const std::string& s, int min_n) {
      if (explicit_suite(s) && n_pairs < min_n)
        throw ConfigError("suite '" + s + "' needs --pairs >= " + std::to_string(min_n));
    };
    need("bi", 2);
    need("embedding", 2);
    need("racah", 3);
  }

  GammaFault fault() const { return inject_fault ? GammaFault::flip_sign : GammaFault::none; }
};

struct RunReport {
  RunConfig config;
  std::vector<CheckReport> checks;
  std::size_t pass = 0;
  std::size_t fail = 0;
  double elapsed_ms = 0.0;

  int exit_code() const { return fail == 0 ? 0 : 1; }
};

namespace detail {
inline void append(std::vector<CheckReport>& out, std::vector<CheckReport> more) {
  for (auto& r : more) out.push_back(std::move(r));
}
} // namespace detail

/// Runs the selected suites in canonical order. Parallelism lives inside each
/// suite; the report order depends only on the configuration.
inline RunReport run(const RunConfig& cfg) {
  cfg.validate();
  Stopwatch total;
  RunReport rep;
  rep.config = cfg;
  auto& out = rep.checks;
  const int n = cfg.n_pairs, D = cfg.max_degree;
  const auto degrees = degree_range(0, D);
  const unsigned jobs = cfg.jobs;
  const GammaFault fault = cfg.fault();

  std::unique_ptr<SpinModule> spin;
  auto module = [&]() -> const SpinModule& {
    if (!spin) spin = std::make_unique<SpinModule>(n, D + 2, fault);
    return *spin;
  };

  if (cfg.wants("clifford"))
    for (int p = 1; p <= n; ++p) detail::append(out, verify_clifford(build_gammas(p, fault)));

  if (cfg.wants("osp")) {
    const PolynomialFamily fam(2 * n, D);
    detail::append(out, verify_so_brackets(fam, degrees));
    detail::append(out, verify_quadratic_identity(fam, degrees));
    std::vector<IndexSet> subsets;
    for (int j = 1; j <= n; ++j) subsets.push_back(PairSet{j}.doubled());
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) subsets.push_back(PairSet{i, j}.doubled());
    const IndexSet full = IndexSet::range(1, 2 * n);
    if (std::find(subsets.begin(), subsets.end(), full) == subsets.end()) subsets.push_back(full);
    const SpinModule& m = module();
    auto per = parallel_map(jobs, subsets.size(), [&](std::size_t k) { return verify_osp_realization(subsets[k], m, degrees); });
    for (auto& v : per) detail::append(out, std::move(v));
  }

  if (cfg.wants("coproduct")) {
    const SpinModule m4(2, D, fault);
    out.push_back(verify_coproduct_factorization(m4, degrees));
    detail::append(out, verify_coproduct_alignment(m4.gammas()));
  }

  if (cfg.wants("bi") && n >= 2) detail::append(out, verify_bi_all(module(), n, degrees, jobs));
  if (cfg.wants("commutant")) detail::append(out, verify_commutant(module(), degrees, jobs));
  if (cfg.wants("centralizer")) detail::append(out, verify_centralizer(module(), degrees, jobs));

  if (cfg.wants("racah") && n >= 3) {
    const PolynomialFamily fam(2 * n, D);
    std::vector<RacahRelation> families;
    for (RacahRelation r : all_racah_relations())
      if (labels_needed(r) <= n) families.push_back(r);
    detail::append(out, verify_racah(n, fam, degrees, families, jobs));
  }

  if (cfg.wants("embedding") && n >= 2) detail::append(out, verify_embedding(module(), degrees, jobs));

  if (cfg.wants("dimred")) {
    const ReducedModel rm = build_reduced(cfg.k_values, cfg.laurent_bound, fault);
    detail::append(out, verify_reduced_osp(rm));
    detail::append(out, verify_reduced_casimir_values(rm));
    detail::append(out, verify_reduced_bi(rm, jobs));
    const std::vector<RationalCirclePoint> pts{{1, 0}, {Rational(3, 5), Rational(4, 5)}, {0, 1}};
    for (const auto& p : pts) out.push_back(rotation_identity_check(rm.gammas(), std::vector<RationalCirclePoint>(rm.n(), p)));
    std::vector<RationalCirclePoint> mixed;
    for (int j = 0; j < rm.n(); ++j) mixed.push_back(pts[static_cast<std::size_t>(j) % pts.size()]);
    if (rm.n() > 1) out.push_back(rotation_identity_check(rm.gammas(), mixed));
  }

  if (cfg.wants("appendix")) {
    std::vector<Rational> ks{Rational(0)};
    for (const auto& k : cfg.k_values)
      if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
    const LaurentBox box(1, cfg.laurent_bound);
    for (const auto& k : ks) detail::append(out, fubini_checks(k, box, fault));
  }

  for (const auto& r : out) (r.pass ? rep.pass : rep.fail)++;
  rep.elapsed_ms = total.ms();
  return rep;
}

} // namespace dualpair
