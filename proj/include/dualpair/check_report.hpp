#pragma once

#include "dualpair/graded_operator.hpp"

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dualpair {

/// Requested degrees are not fully representable in the truncation window.
class WindowError : public std::domain_error {
public:
  WindowError(const std::string& check, int minimum_max_degree)
      : std::domain_error(check + ": degree window too small for safe evaluation; need max degree >= " +
                          std::to_string(minimum_max_degree)),
        minimum_(minimum_max_degree) {}
  int minimum_max_degree() const noexcept { return minimum_; }

private:
  int minimum_;
};

using Params = std::vector<std::pair<std::string, std::string>>;

/// Outcome of one verified relation.
struct CheckReport {
  std::string name;
  Params params;
  std::vector<int> blocks;
  bool pass = false;
  std::optional<Witness> witness;
  double elapsed_ms = 0.0;

  std::string label() const {
    std::string s = name + "(";
    for (std::size_t k = 0; k < params.size(); ++k) s += (k ? ", " : "") + params[k].first + "=" + params[k].second;
    return s + ")";
  }
};

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

inline std::vector<int> degree_range(int lo, int hi) {
  std::vector<int> v;
  for (int d = lo; d <= hi; ++d) v.push_back(d);
  return v;
}

inline int max_of(const std::vector<int>& degrees) {
  int m = 0;
  for (int d : degrees) m = std::max(m, d);
  return m;
}

/// Throws WindowError unless `max_degree` leaves `margin` degrees of headroom.
inline void require_window(const std::string& check, int max_degree, const std::vector<int>& degrees, int margin) {
  const int need = max_of(degrees) + margin;
  if (max_degree < need) throw WindowError(check, need);
}

/// Report for "residual == 0" on polynomial degree blocks; every requested
/// block must be fully valid.
inline CheckReport zero_report(std::string name, Params params, const GradedOperator& residual,
                               const std::vector<int>& degrees, const Stopwatch& sw) {
  CheckReport r{std::move(name), std::move(params), degrees, false, std::nullopt, 0.0};
  for (int d : degrees) {
    const auto* b = residual.block(d);
    if (!b || !b->fully_valid()) throw WindowError(r.label(), d + 1);
  }
  auto verdict = residual.is_zero_on(degrees);
  r.pass = verdict.zero;
  r.witness = verdict.witness;
  r.elapsed_ms = sw.ms();
  return r;
}

/// Report for "residual == 0" on a single-block module where only some
/// columns are representable; `required` marks columns that must be valid.
/// The zero test covers every valid column, a superset of `required`.
inline CheckReport zero_report_columns(std::string name, Params params, const GradedOperator& residual,
                                       const std::vector<char>& required, const Stopwatch& sw) {
  CheckReport r{std::move(name), std::move(params), {0}, false, std::nullopt, 0.0};
  const auto* b = residual.block(0);
  for (std::size_t c = 0; c < required.size(); ++c)
    if (required[c] && (!b || !b->valid[c]))
      throw std::domain_error(r.label() + ": safe column " + std::to_string(c) + " is not representable in the box");
  auto verdict = residual.is_zero();
  r.pass = verdict.zero;
  r.witness = verdict.witness;
  r.elapsed_ms = sw.ms();
  return r;
}

/// Report for "m == 0" on a plain matrix.
inline CheckReport zero_report_matrix(std::string name, Params params, const SparseMatrix& m, const Stopwatch& sw) {
  CheckReport r{std::move(name), std::move(params), {0}, false, std::nullopt, 0.0};
  if (auto t = m.first_nonzero()) r.witness = Witness{0, 0, t->row, t->col, t->value};
  r.pass = !r.witness;
  r.elapsed_ms = sw.ms();
  return r;
}

} // namespace dualpair
