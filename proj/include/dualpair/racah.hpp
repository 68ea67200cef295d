#pragma once

#include "dualpair/check_report.hpp"
#include "dualpair/osp.hpp"
#include "dualpair/parallel.hpp"
#include "dualpair/weyl.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualpair {

/// G^i = L²_{2i-1,2i} on the scalar polynomial module (pair labels are 1-based).
inline GradedOperator g_invariant(int i, const PolynomialFamily& fam) {
  const GradedOperator l = angular_op(2 * i - 1, 2 * i, fam);
  return compose(l, l);
}

/// K^{ij}: the six squared angular momenta inside the four coordinates of pairs i and j.
inline GradedOperator k_invariant(int i, int j, const PolynomialFamily& fam) {
  if (i == j) throw std::invalid_argument("k_invariant: pair labels must differ");
  if (i > j) std::swap(i, j);
  const std::array<int, 4> v{2 * i - 1, 2 * i, 2 * j - 1, 2 * j};
  std::vector<GradedOperator> terms;
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = p + 1; q < 4; ++q) {
      const GradedOperator l = angular_op(v[p], v[q], fam);
      terms.push_back(compose(l, l));
    }
  return sum(terms);
}

/// Racah invariants and the redefined generators
///   C^i = -G^i/4 - 1/4,  C^{ij} = -K^{ij}/4,  P^{ij} = C^{ij} - C^i - C^j,
///   F^{ijk} = ½[P^{ij}, P^{jk}].
/// F is stored for i < j < k only; other orderings use its antisymmetric extension.
class RacahGenerators {
public:
  RacahGenerators(int n, const PolynomialFamily& fam) : n_(n) {
    if (n < 3) throw std::invalid_argument("racah_generators: need n >= 3 pair labels, got " + std::to_string(n));
    if (fam.n_vars() != 2 * n) throw std::invalid_argument("racah_generators: module must have 2n variables");
    const Rational quarter(1, 4);
    for (int i = 1; i <= n; ++i) {
      G_.push_back(g_invariant(i, fam));
      C1_.push_back(G_.back().scaled(-quarter).plus_scalar(-quarter));
    }
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        GradedOperator k = k_invariant(i, j, fam);
        GradedOperator c2 = k.scaled(-quarter);
        P_.emplace(std::pair{i, j}, c2 - C(i) - C(j));
        K_.emplace(std::pair{i, j}, std::move(k));
        C2_.emplace(std::pair{i, j}, std::move(c2));
      }
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k)
          F_.emplace(std::array{i, j, k}, commutator(P(i, j), P(j, k)).scaled(Rational(1, 2)));
  }

  int n() const noexcept { return n_; }
  const GradedOperator& G(int i) const { return G_.at(label(i)); }
  const GradedOperator& C(int i) const { return C1_.at(label(i)); }
  const GradedOperator& K(int i, int j) const { return K_.at(sorted(i, j)); }
  const GradedOperator& C2(int i, int j) const { return C2_.at(sorted(i, j)); }
  const GradedOperator& P(int i, int j) const { return P_.at(sorted(i, j)); }

  /// F^{ijk} for pairwise distinct labels: sign(σ) F^{sorted}.
  GradedOperator F(int i, int j, int k) const {
    std::array<int, 3> v{i, j, k};
    if (i == j || j == k || i == k) throw std::invalid_argument("RacahGenerators::F: labels must be distinct");
    int sign = 1;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 2 - a; ++b)
        if (v[b] > v[b + 1]) {
          std::swap(v[b], v[b + 1]);
          sign = -sign;
        }
    const GradedOperator& f = F_.at(v);
    return sign > 0 ? f : -f;
  }

private:
  std::size_t label(int i) const {
    if (i < 1 || i > n_) throw std::out_of_range("RacahGenerators: label " + std::to_string(i) + " outside [n]");
    return static_cast<std::size_t>(i - 1);
  }
  std::pair<int, int> sorted(int i, int j) const {
    if (i == j) throw std::invalid_argument("RacahGenerators: labels must differ");
    label(i), label(j);
    return i < j ? std::pair{i, j} : std::pair{j, i};
  }

  int n_;
  std::vector<GradedOperator> G_, C1_;
  std::map<std::pair<int, int>, GradedOperator> K_, C2_, P_;
  std::map<std::array<int, 3>, GradedOperator> F_;
};

inline RacahGenerators racah_generators(int n, const PolynomialFamily& fam) { return RacahGenerators(n, fam); }

/// The five relation families, by the number of distinct labels they involve.
enum class RacahRelation { pp, pf_shared, pf_disjoint, ff_two_shared, ff_one_shared };

inline const char* relation_name(RacahRelation r) {
  switch (r) {
  case RacahRelation::pp: return "racah.pp";
  case RacahRelation::pf_shared: return "racah.pf_shared";
  case RacahRelation::pf_disjoint: return "racah.pf_disjoint";
  case RacahRelation::ff_two_shared: return "racah.ff_two_shared";
  case RacahRelation::ff_one_shared: return "racah.ff_one_shared";
  }
  return "racah.unknown";
}

inline int labels_needed(RacahRelation r) {
  switch (r) {
  case RacahRelation::pp:
  case RacahRelation::pf_shared: return 3;
  case RacahRelation::pf_disjoint:
  case RacahRelation::ff_two_shared: return 4;
  case RacahRelation::ff_one_shared: return 5;
  }
  return 0;
}

inline std::vector<RacahRelation> all_racah_relations() {
  return {RacahRelation::pp, RacahRelation::pf_shared, RacahRelation::pf_disjoint, RacahRelation::ff_two_shared,
          RacahRelation::ff_one_shared};
}

/// Left minus right side of one relation for labels t = (i, j, k, l, m).
inline GradedOperator racah_residual(const RacahGenerators& R, RacahRelation rel, const std::vector<int>& t) {
  const Scalar two(2);
  const int i = t[0], j = t[1], k = t[2];
  switch (rel) {
  case RacahRelation::pp: return commutator(R.P(i, j), R.P(j, k)) - R.F(i, j, k).scaled(two);
  case RacahRelation::pf_shared:
    return commutator(R.P(j, k), R.F(i, j, k)) -
           (compose(R.P(i, k), R.P(j, k)) - compose(R.P(j, k), R.P(i, j)) +
            compose(R.P(i, k), R.C(j)).scaled(two) - compose(R.P(i, j), R.C(k)).scaled(two));
  case RacahRelation::pf_disjoint: {
    const int l = t[3];
    return commutator(R.P(k, l), R.F(i, j, k)) - (compose(R.P(i, k), R.P(j, l)) - compose(R.P(i, l), R.P(j, k)));
  }
  case RacahRelation::ff_two_shared: {
    const int l = t[3];
    return commutator(R.F(i, j, k), R.F(j, k, l)) -
           (compose(R.F(j, k, l), R.P(i, j)) - compose(R.F(i, k, l), R.P(j, k) + R.C(j).scaled(two)) -
            compose(R.F(i, j, k), R.P(j, l)));
  }
  case RacahRelation::ff_one_shared: {
    const int l = t[3], m = t[4];
    return commutator(R.F(i, j, k), R.F(k, l, m)) -
           (compose(R.F(i, l, m), R.P(j, k)) - compose(R.P(i, k), R.F(j, l, m)));
  }
  }
  throw std::logic_error("racah_residual: unknown relation");
}

namespace detail {
/// All ordered tuples of `len` pairwise distinct labels from [n], lexicographic.
inline std::vector<std::vector<int>> distinct_tuples(int n, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto& self) -> void {
    if (static_cast<int>(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (std::find(cur.begin(), cur.end(), v) != cur.end()) continue;
      cur.push_back(v);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

inline std::string tuple_str(const std::vector<int>& t) {
  std::string s;
  for (int v : t) s += std::to_string(v);
  return s;
}
} // namespace detail

/// Checks the requested relation families for every ordered tuple of
/// distinct labels. All operators are shift 0, so every block is exact.
inline std::vector<CheckReport> verify_racah(const RacahGenerators& R, const std::vector<int>& degrees,
                                             const std::vector<RacahRelation>& families, unsigned jobs = 1) {
  struct Cell {
    RacahRelation rel;
    std::vector<int> labels;
  };
  std::vector<Cell> cells;
  for (RacahRelation rel : families) {
    const int need = labels_needed(rel);
    if (R.n() < need)
      throw std::domain_error(std::string(relation_name(rel)) + ": needs n >= " + std::to_string(need) + " labels, got " +
                              std::to_string(R.n()));
    for (auto& t : detail::distinct_tuples(R.n(), need)) cells.push_back({rel, std::move(t)});
  }
  return parallel_map(jobs, cells.size(), [&](std::size_t c) {
    Stopwatch sw;
    const Cell& cell = cells[c];
    GradedOperator res = racah_residual(R, cell.rel, cell.labels).restricted(degrees);
    return zero_report(relation_name(cell.rel), {{"n", std::to_string(R.n())}, {"labels", detail::tuple_str(cell.labels)}},
                       res, degrees, sw);
  });
}

inline std::vector<CheckReport> verify_racah(int n, const PolynomialFamily& fam, const std::vector<int>& degrees,
                                             const std::vector<RacahRelation>& families, unsigned jobs = 1) {
  return verify_racah(racah_generators(n, fam), degrees, families, jobs);
}

/// C^i and C^{ij}, lifted to the spin module, recovered from the two- and
/// four-index sCasimirs as ¼(S² - S - ¾).
inline std::vector<CheckReport> verify_embedding(const SpinModule& m, const std::vector<int>& degrees, unsigned jobs = 1) {
  const int n = m.n_pairs();
  if (n < 2) throw std::invalid_argument("verify_embedding: need n >= 2");
  require_window("embedding", m.max_degree(), degrees, 0);
  std::vector<std::vector<int>> cells;
  for (int i = 1; i <= n; ++i) cells.push_back({i});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) cells.push_back({i, j});

  const Rational quarter(1, 4);
  auto from_scasimir = [&](const IndexSet& a) {
    const GradedOperator s = scasimir_closed_form(a, m).restricted(degrees);
    return (compose(s, s) - s).plus_scalar(Rational(-3, 4)).scaled(quarter);
  };
  return parallel_map(jobs, cells.size(), [&](std::size_t c) {
    Stopwatch sw;
    const auto& t = cells[c];
    const int i = t[0];
    if (t.size() == 1) {
      const GradedOperator ci = m.lift(g_invariant(i, m.poly()).scaled(-quarter).plus_scalar(-quarter));
      return zero_report("embedding.pair", {{"n", std::to_string(n)}, {"i", std::to_string(i)}},
                         ci.restricted(degrees) - from_scasimir({2 * i - 1, 2 * i}), degrees, sw);
    }
    const int j = t[1];
    const GradedOperator cij = m.lift(k_invariant(i, j, m.poly()).scaled(-quarter));
    return zero_report("embedding.two_pair", {{"n", std::to_string(n)}, {"i", std::to_string(i)}, {"j", std::to_string(j)}},
                       cij.restricted(degrees) - from_scasimir({2 * i - 1, 2 * i, 2 * j - 1, 2 * j}), degrees, sw);
  });
}

} // namespace dualpair
