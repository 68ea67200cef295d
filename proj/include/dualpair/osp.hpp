#pragma once

#include "dualpair/check_report.hpp"
#include "dualpair/spin_module.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualpair {

/// osp(1|2) realized on the spin module by the coordinates in an even subset A:
/// J- = -i Σ γμ∂μ, J+ = -i Σ γμxμ, J0 = |A|/2 + Σ xμ∂μ, with grading S^A.
struct OspRealization {
  IndexSet subset;
  GradedOperator J_minus;
  GradedOperator J_plus;
  GradedOperator J_zero;
  GradedOperator S;
};

struct CasimirOp {
  IndexSet subset;
  GradedOperator op;
};

enum class CasimirMethod { bracket, closed_form };

namespace detail {
inline void check_even_subset(const IndexSet& a, const SpinModule& m, const char* who) {
  if (a.empty()) throw std::invalid_argument(std::string(who) + ": empty subset");
  if (a.size() % 2 != 0) throw std::domain_error(std::string(who) + ": subset " + a.str() + " has odd size");
  if (a.max() > m.n_vars()) throw std::out_of_range(std::string(who) + ": subset " + a.str() + " exceeds [2n]");
}

/// True when A = {2i-1, 2i, 2j-1, 2j, ...}; fills the pair labels.
inline bool pair_labels(const IndexSet& a, std::vector<int>& labels) {
  labels.clear();
  const auto& v = a.indices();
  if (v.size() % 2 != 0) return false;
  for (std::size_t k = 0; k < v.size(); k += 2) {
    if (v[k] % 2 != 1 || v[k + 1] != v[k] + 1) return false;
    labels.push_back((v[k] + 1) / 2);
  }
  return true;
}

/// Σ_{μ<ν ∈ A} L_{μν} ⊗ (coeff(μ,ν) · right)
template <class Coeff>
GradedOperator angular_sum(const SpinModule& m, const IndexSet& a, Coeff coeff, const SparseMatrix& right) {
  std::vector<GradedOperator> terms;
  const auto& v = a.indices();
  for (std::size_t p = 0; p < v.size(); ++p)
    for (std::size_t q = p + 1; q < v.size(); ++q) terms.push_back(m.lift(m.L_ordered(v[p], v[q]), coeff(v[p], v[q]) * right));
  return sum(terms);
}
} // namespace detail

inline OspRealization osp_realization(const IndexSet& a, const SpinModule& m) {
  detail::check_even_subset(a, m, "osp_realization");
  const Scalar mi = -Scalar::i();
  std::vector<GradedOperator> minus, plus;
  for (int mu : a) {
    const SparseMatrix g = m.gamma(mu).scaled(mi);
    minus.push_back(m.lift(m.dx(mu), g));
    plus.push_back(m.lift(m.x(mu), g));
  }
  GradedOperator j0 = m.lift(euler_op(m.poly(), a)).plus_scalar(Rational(static_cast<std::int64_t>(a.size()), 2));
  return {a, sum(minus), sum(plus), std::move(j0), m.spinor(involution(m.gammas(), a))};
}

/// ½([J-, J+] - 1)
inline GradedOperator scasimir(const OspRealization& r) {
  return commutator(r.J_minus, r.J_plus).plus_scalar(Scalar(-1)).scaled(Rational(1, 2));
}

/// Closed forms of the sCasimir: L_{μν}γμγν + ½ for two indices, the six-term
/// sum + 3/2 for four, and Σ -iL_{μν}Σ_{μν} + (2n-1)/2 for the full set.
inline GradedOperator scasimir_closed_form(const IndexSet& a, const SpinModule& m) {
  detail::check_even_subset(a, m, "scasimir_closed_form");
  const auto half_rank = Rational(static_cast<std::int64_t>(a.size()) - 1, 2);
  if (a.size() == 2 || a.size() == 4) {
    auto gg = [&](int mu, int nu) { return m.gamma(mu) * m.gamma(nu); };
    return detail::angular_sum(m, a, gg, m.gammas().identity()).plus_scalar(half_rank);
  }
  if (a == IndexSet::range(1, m.n_vars())) {
    auto lsig = [&](int mu, int nu) { return m.sigma(mu, nu).scaled(-Scalar::i()); };
    return detail::angular_sum(m, a, lsig, m.gammas().identity()).plus_scalar(half_rank);
  }
  throw std::domain_error("scasimir_closed_form: no closed form for subset " + a.str());
}

/// Γ_A = ½([J-^A, J+^A] - 1) S^A, either composed from the osp generators or
/// assembled from the closed forms: -iL + ½Σ for one pair of indices,
/// (six L γγ + 3/2) Σ_ī Σ_j̄ for four, and (Σ -iLΣ + (2n-1)/2) ∏ Σ_j̄ for [2n].
/// With `up_to` >= 0 the bracket route only assembles degrees 0..up_to+1 and
/// the result is exact on 0..up_to.
inline CasimirOp casimir(const IndexSet& a, const SpinModule& m, CasimirMethod method, int up_to = -1) {
  detail::check_even_subset(a, m, "casimir");
  if (method == CasimirMethod::bracket) {
    OspRealization r = osp_realization(a, m);
    if (up_to >= 0) {
      const auto keep = degree_range(0, std::min(up_to + 1, m.max_degree()));
      r.J_minus = r.J_minus.restricted(keep);
      r.J_plus = r.J_plus.restricted(keep);
      r.S = r.S.restricted(keep);
    }
    return {a, compose(scasimir(r), r.S)};
  }
  const Scalar i = Scalar::i();
  std::vector<int> labels;
  const bool pairs = detail::pair_labels(a, labels);
  if (a.size() == 2) {
    const int mu = a.indices()[0], nu = a.indices()[1];
    return {a, m.lift(m.L_ordered(mu, nu), m.gammas().identity().scaled(-i)) +
                   m.spinor(m.sigma(mu, nu).scaled(Rational(1, 2)))};
  }
  if (a.size() == 4) {
    SparseMatrix grading = m.gammas().identity();
    if (pairs) grading = m.pair_sigma(labels[0]) * m.pair_sigma(labels[1]);
    else grading = involution(m.gammas(), a);
    auto gg = [&](int mu, int nu) { return m.gamma(mu) * m.gamma(nu); };
    return {a, detail::angular_sum(m, a, gg, grading) + m.spinor(grading.scaled(Rational(3, 2)))};
  }
  if (a == IndexSet::range(1, m.n_vars())) {
    SparseMatrix grading = m.gammas().identity();
    for (int j = 1; j <= m.n_pairs(); ++j) grading = grading * m.pair_sigma(j);
    auto lsig = [&](int mu, int nu) { return m.sigma(mu, nu).scaled(-i); };
    const Rational c(static_cast<std::int64_t>(a.size()) - 1, 2);
    return {a, detail::angular_sum(m, a, lsig, grading) + m.spinor(grading.scaled(c))};
  }
  throw std::domain_error("casimir: closed form supports |A| in {2, 4} and A = [2n]; got " + a.str());
}

/// J_{μν} = -iL_{μν} + ½Σ_{μν}
inline GradedOperator total_J(int mu, int nu, const SpinModule& m) {
  if (mu == nu) throw std::invalid_argument("total_J: indices must differ");
  return m.lift(m.L(mu, nu), m.gammas().identity().scaled(-Scalar::i())) +
         m.spinor(m.sigma(mu, nu).scaled(Rational(1, 2)));
}

/// (Σ_{μ<ν ∈ ī∪j̄} L_{μν}γμγν) Σ_ī Σ_j̄ for pair labels i < j.
inline GradedOperator commutant_generator(int i, int j, const SpinModule& m) {
  if (i == j) throw std::invalid_argument("commutant_generator: pair labels must differ");
  if (i > j) std::swap(i, j);
  if (i < 1 || j > m.n_pairs()) throw std::out_of_range("commutant_generator: pair label outside [n]");
  const IndexSet a{2 * i - 1, 2 * i, 2 * j - 1, 2 * j};
  auto gg = [&](int mu, int nu) { return m.gamma(mu) * m.gamma(nu); };
  return detail::angular_sum(m, a, gg, m.pair_sigma(i) * m.pair_sigma(j));
}

/// Checks D_[4] = D_[2] ⊗ S + 1 ⊗ D_[2] through the isomorphism
/// P(x1..x4) ⊗ C^4 ≅ (P(x1,x2) ⊗ C^2) ⊗ (P(x3,x4) ⊗ C^2), left factor = pair 1̄.
/// The right side is assembled from one-pair operators only.
inline CheckReport verify_coproduct_factorization(const SpinModule& module4, const std::vector<int>& degrees) {
  Stopwatch sw;
  if (module4.n_pairs() != 2) throw std::invalid_argument("verify_coproduct_factorization: need a 4-variable module");
  require_window("coproduct.dirac", module4.max_degree(), degrees, 0);

  const SpinModule factor(1, module4.max_degree());
  const GradedOperator d2 = factor.lift(factor.dx(1), factor.gamma(1)) + factor.lift(factor.dx(2), factor.gamma(2));
  const SparseMatrix s2 = involution(factor.gammas(), {1, 2});

  std::vector<GradedOperator> d4_terms;
  for (int mu = 1; mu <= 4; ++mu) d4_terms.push_back(module4.lift(module4.dx(mu), module4.gamma(mu)));
  const GradedOperator d4 = sum(d4_terms);

  const auto& fp = factor.poly();
  const auto& p4 = module4.poly();
  GradedOperator rhs;
  for (int d : degrees) {
    const auto& src = p4.basis(d);
    std::vector<Triplet> ts;
    for (std::size_t c = 0; c < src.size(); ++c) {
      const Exponent& e = src[c];
      const Exponent left{e[0], e[1]}, right{e[2], e[3]};
      const int d1 = e[0] + e[1], d2deg = e[2] + e[3];
      for (std::size_t s = 0; s < 4; ++s) {
        const std::size_t s1 = s / 2, s2i = s % 2;
        const std::size_t col = c * 4 + s;
        const std::size_t i1 = fp.basis(d1).index_of(left) * 2 + s1;
        const std::size_t i2 = fp.basis(d2deg).index_of(right) * 2 + s2i;
        // (D_[2] v1) ⊗ (S v2)
        if (const SparseMatrix* p = d2.part(d1, -1))
          for (const auto& e1 : p->column(i1)) {
            const Exponent& f = fp.basis(d1 - 1)[e1.row / 2];
            const std::size_t t1 = e1.row % 2;
            for (const auto& es : s2.column(s2i)) {
              const std::size_t row = p4.basis(d - 1).index_of({f[0], f[1], e[2], e[3]}) * 4 + t1 * 2 + es.row;
              ts.push_back({row, col, e1.value * es.value});
            }
          }
        // v1 ⊗ (D_[2] v2)
        if (const SparseMatrix* p = d2.part(d2deg, -1))
          for (const auto& e2 : p->column(i2)) {
            const Exponent& g = fp.basis(d2deg - 1)[e2.row / 2];
            const std::size_t t2 = e2.row % 2;
            const std::size_t row = p4.basis(d - 1).index_of({e[0], e[1], g[0], g[1]}) * 4 + s1 * 2 + t2;
            ts.push_back({row, col, e2.value});
          }
      }
    }
    rhs.set_part(d, -1, SparseMatrix::from_triplets(module4.block_dim(d - 1), module4.block_dim(d), std::move(ts)));
  }
  return zero_report("coproduct.dirac", {{"n", "2"}}, d4 - rhs, degrees, sw);
}

/// The osp(1|2) relations, grading, sCasimir and Casimir properties for one
/// even subset, each on every requested degree. Needs two degrees of headroom.
inline std::vector<CheckReport> verify_osp_realization(const IndexSet& a, const SpinModule& m, const std::vector<int>& degrees) {
  detail::check_even_subset(a, m, "verify_osp_realization");
  require_window("osp(A=" + a.str() + ")", m.max_degree(), degrees, 2);
  const OspRealization r = osp_realization(a, m);
  const GradedOperator sc = scasimir(r);
  const GradedOperator gamma = compose(sc, r.S);
  const Scalar two(2);
  std::vector<std::pair<std::string, GradedOperator>> rels{
      {"J0J+", commutator(r.J_zero, r.J_plus) - r.J_plus},
      {"J0J-", commutator(r.J_zero, r.J_minus) + r.J_minus},
      {"J+J-", anticommutator(r.J_plus, r.J_minus) - r.J_zero.scaled(two)},
      {"SS", compose(r.S, r.S) - m.identity()},
      {"SJ+", anticommutator(r.S, r.J_plus)},
      {"SJ-", anticommutator(r.S, r.J_minus)},
      {"SJ0", commutator(r.S, r.J_zero)},
      {"scJ0", commutator(sc, r.J_zero)},
      {"scJ+", anticommutator(sc, r.J_plus)},
      {"scJ-", anticommutator(sc, r.J_minus)},
      {"GJ0", commutator(gamma, r.J_zero)},
      {"GJ+", commutator(gamma, r.J_plus)},
      {"GJ-", commutator(gamma, r.J_minus)},
      {"GS", commutator(gamma, r.S)},
  };
  std::vector<int> labels;
  const bool closed = a.size() == 2 || a.size() == 4 || a == IndexSet::range(1, m.n_vars());
  if (closed) {
    rels.emplace_back("sc=closed", sc - scasimir_closed_form(a, m));
    rels.emplace_back("G=closed", gamma - casimir(a, m, CasimirMethod::closed_form).op);
  }
  if (a.size() == 2 && detail::pair_labels(a, labels))
    rels.emplace_back("G=J", gamma - total_J(a.indices()[0], a.indices()[1], m));
  std::vector<CheckReport> out;
  for (const auto& [name, res] : rels) {
    Stopwatch sw;
    out.push_back(zero_report("osp", {{"n", std::to_string(m.n_pairs())}, {"A", a.str()}, {"rel", name}},
                              res.restricted(degrees), degrees, sw));
  }
  return out;
}

/// Spinor side of the coproduct: the two-pair gammas are γ_k ⊗ S and 1 ⊗ γ_k
/// built from the one-pair set, and S^[4] = S^(1) ⊗ S^(2).
inline std::vector<CheckReport> verify_coproduct_alignment(const GammaSet& g2) {
  if (g2.n_pairs() != 2) throw std::invalid_argument("verify_coproduct_alignment: need the two-pair gamma set");
  const GammaSet g1 = build_gammas(1);
  const SparseMatrix s1 = involution(g1, {1, 2});
  const SparseMatrix id = g1.identity();
  std::vector<CheckReport> out;
  const std::vector<SparseMatrix> expect{kron(g1[1], s1), kron(g1[2], s1), kron(id, g1[1]), kron(id, g1[2])};
  for (int mu = 1; mu <= 4; ++mu) {
    Stopwatch sw;
    out.push_back(zero_report_matrix("coproduct.gamma", {{"mu", std::to_string(mu)}},
                                     g2[mu] - expect[static_cast<std::size_t>(mu - 1)], sw));
  }
  Stopwatch sw;
  out.push_back(zero_report_matrix("coproduct.involution", {}, involution(g2, {1, 2, 3, 4}) - kron(s1, s1), sw));
  return out;
}

} // namespace dualpair
