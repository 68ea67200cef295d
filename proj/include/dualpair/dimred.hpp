#pragma once

#include "dualpair/check_report.hpp"
#include "dualpair/parallel.hpp"
#include "dualpair/relations.hpp"
#include "dualpair/spin_module.hpp"
#include "dualpair/weyl.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace dualpair {

/// Reduced radial model on the Laurent box over ρ_1..ρ_n tensored with C^{2^n}:
///   D̃ = Σ_j (γ_{2j-1} ∂_{ρ_j} + i k_j γ_{2j} / ρ_j),  x̃ = Σ_j ρ_j γ_{2j-1},  Ẽ = Σ_j ρ_j ∂_{ρ_j}.
/// The per-pair pieces are kept so subset restrictions are plain sums.
class ReducedModel {
public:
  ReducedModel(std::vector<Rational> k, int bound, GammaFault fault = GammaFault::none)
      : k_(std::move(k)), box_(static_cast<int>(k_.size()), bound), gammas_(build_gammas(static_cast<int>(k_.size()), fault)) {
    if (bound < 2) throw std::invalid_argument("build_reduced: Laurent bound must be >= 2, got " + std::to_string(bound));
    const int n = this->n();
    for (int j = 1; j <= n; ++j) {
      const LaurentOps ops = laurent_ops(j, box_);
      const SparseMatrix& g_odd = gammas_[2 * j - 1];
      const SparseMatrix& g_even = gammas_[2 * j];
      const Scalar ik = Scalar::i() * Scalar(k_[static_cast<std::size_t>(j - 1)]);
      d_.push_back(kron(ops.d_rho, g_odd) + kron(ops.inv_rho, g_even.scaled(ik)));
      x_.push_back(kron(ops.rho, g_odd));
      e_.push_back(kron(ops.euler, gammas_.identity()));
    }
    D_tilde = sum(d_);
    x_tilde = sum(x_);
    E_tilde = sum(e_);
  }

  int n() const noexcept { return static_cast<int>(k_.size()); }
  const std::vector<Rational>& k() const noexcept { return k_; }
  const LaurentBox& box() const noexcept { return box_; }
  const GammaSet& gammas() const noexcept { return gammas_; }

  /// D̃ and x̃ restricted to the pairs in A.
  GradedOperator D(const PairSet& a) const { return pick(d_, a); }
  GradedOperator x(const PairSet& a) const { return pick(x_, a); }

  GradedOperator identity() const { return kron(box_.identity(), gammas_.identity()); }
  GradedOperator spinor(const SparseMatrix& m) const { return kron(box_.identity(), m); }

  /// Σ̃_A = ∏_{j̄ ∈ A} Σ_{2j-1,2j}
  SparseMatrix sigma(const PairSet& a) const {
    SparseMatrix s = gammas_.identity();
    for (int j : a.labels()) s = s * spin_op(gammas_, 2 * j - 1, 2 * j);
    return s;
  }

  /// Reduced osp(1|2): J- = -iD̃, J+ = -ix̃, J0 = Ẽ + n/2, grading Σ̃_[n].
  GradedOperator J_minus() const { return D_tilde.scaled(-Scalar::i()); }
  GradedOperator J_plus() const { return x_tilde.scaled(-Scalar::i()); }
  GradedOperator J_zero() const { return E_tilde.plus_scalar(Rational(n(), 2)); }
  GradedOperator S() const { return spinor(sigma(full())); }
  PairSet full() const { return PairSet::from_mask((1u << n()) - 1); }

  GradedOperator D_tilde, x_tilde, E_tilde;

private:
  GradedOperator pick(const std::vector<GradedOperator>& parts, const PairSet& a) const {
    if (a.empty()) throw std::invalid_argument("ReducedModel: empty pair subset");
    if (a.max() > n()) throw std::out_of_range("ReducedModel: subset " + a.str() + " outside [n]");
    std::vector<GradedOperator> terms;
    for (int j : a.labels()) terms.push_back(parts[static_cast<std::size_t>(j - 1)]);
    return sum(terms);
  }

  std::vector<Rational> k_;
  LaurentBox box_;
  GammaSet gammas_;
  std::vector<GradedOperator> d_, x_, e_;
};

inline ReducedModel build_reduced(std::vector<Rational> k, int bound, GammaFault fault = GammaFault::none) {
  if (k.empty()) throw std::invalid_argument("build_reduced: need at least one k value");
  return ReducedModel(std::move(k), bound, fault);
}

/// Γ̃_A = ½([x̃_A, D̃_A] - 1) Σ̃_A
inline GradedOperator reduced_casimir(const ReducedModel& m, const PairSet& a) {
  const GradedOperator s = m.spinor(m.sigma(a));
  return compose(commutator(m.x(a), m.D(a)).plus_scalar(Scalar(-1)).scaled(Rational(1, 2)), s);
}

namespace detail {
inline std::string k_str(const std::vector<Rational>& k) {
  std::string s;
  for (std::size_t j = 0; j < k.size(); ++j) s += (j ? "," : "") + k[j].str();
  return s;
}

/// Safe columns of the spin-tensored box for a given per-variable excursion.
inline std::vector<char> safe_columns(const ReducedModel& m, int margin) {
  const auto box_mask = m.box().safe_mask(margin);
  const std::size_t sd = m.gammas().dim();
  std::vector<char> mask(box_mask.size() * sd);
  for (std::size_t c = 0; c < box_mask.size(); ++c)
    for (std::size_t s = 0; s < sd; ++s) mask[c * sd + s] = box_mask[c];
  return mask;
}
} // namespace detail

/// osp(1|2) relations and grading properties of the reduced operators.
inline std::vector<CheckReport> verify_reduced_osp(const ReducedModel& m) {
  const Params base{{"n", std::to_string(m.n())}, {"k", detail::k_str(m.k())}, {"W", std::to_string(m.box().bound())}};
  const auto safe1 = detail::safe_columns(m, 1);
  const GradedOperator jm = m.J_minus(), jp = m.J_plus(), j0 = m.J_zero(), s = m.S();
  const std::vector<std::pair<std::string, GradedOperator>> rels{
      {"J0J+", commutator(j0, jp) - jp},
      {"J0J-", commutator(j0, jm) + jm},
      {"J+J-", anticommutator(jp, jm) - j0.scaled(Scalar(2))},
      {"SS", compose(s, s) - m.identity()},
      {"SJ+", anticommutator(s, jp)},
      {"SJ-", anticommutator(s, jm)},
      {"SJ0", commutator(s, j0)},
  };
  std::vector<CheckReport> out;
  for (const auto& [name, res] : rels) {
    Stopwatch sw;
    Params p = base;
    p.emplace_back("rel", name);
    out.push_back(zero_report_columns("dimred.osp", std::move(p), res, safe1, sw));
  }
  return out;
}

/// Γ̃_j̄ = k_j on safe columns, for every pair.
inline std::vector<CheckReport> verify_reduced_casimir_values(const ReducedModel& m) {
  const auto safe1 = detail::safe_columns(m, 1);
  std::vector<CheckReport> out;
  for (int j = 1; j <= m.n(); ++j) {
    Stopwatch sw;
    const Rational& kj = m.k()[static_cast<std::size_t>(j - 1)];
    GradedOperator res = reduced_casimir(m, PairSet{j}).plus_scalar(-Scalar(kj));
    out.push_back(zero_report_columns("dimred.casimir_value", {{"n", std::to_string(m.n())}, {"j", std::to_string(j)}, {"k", kj.str()}},
                                      res, safe1, sw));
  }
  return out;
}

/// The reduced anticommutation relation for every unordered pair of nonempty
/// subsets, then every reduced Casimir against the reduced J±, J0 and S.
inline std::vector<CheckReport> verify_reduced_bi(const ReducedModel& m, unsigned jobs = 1) {
  const int n = m.n();
  const auto sets = nonempty_pair_sets(n);
  const auto safe2 = detail::safe_columns(m, 2);
  auto ops = parallel_map(jobs, sets.size(), [&](std::size_t k) { return reduced_casimir(m, sets[k]); });
  const GradedOperator empty = m.identity().scaled(Rational(-1, 2));
  auto g = [&](PairSet a) -> const GradedOperator& {
    if (a.empty()) return empty;
    return ops[a.mask() - 1]; // sets are ordered by mask, starting at 1
  };
  const std::string ks = detail::k_str(m.k());
  const GradedOperator jm = m.J_minus(), jp = m.J_plus(), j0 = m.J_zero(), s = m.S();
  const std::vector<std::pair<std::string, const GradedOperator*>> gens{{"J-", &jm}, {"J+", &jp}, {"J0", &j0}, {"S", &s}};

  struct Cell {
    PairSet a, b;
    int gen; // -1 for the relation, else index into gens
  };
  std::vector<Cell> cells;
  for (std::size_t p = 0; p < sets.size(); ++p)
    for (std::size_t q = p; q < sets.size(); ++q) cells.push_back({sets[p], sets[q], -1});
  for (const PairSet& a : sets)
    for (int x = 0; x < static_cast<int>(gens.size()); ++x) cells.push_back({a, {}, x});

  return parallel_map(jobs, cells.size(), [&](std::size_t c) {
    Stopwatch sw;
    const Cell& cell = cells[c];
    if (cell.gen < 0) {
      const PairSet a = cell.a, b = cell.b;
      const Scalar two(2);
      GradedOperator res = anticommutator(g(a), g(b)) - g(a ^ b) - compose(g(a & b), g(a | b)).scaled(two) -
                           compose(g(a - b), g(b - a)).scaled(two);
      return zero_report_columns("dimred.bi", {{"n", std::to_string(n)}, {"k", ks}, {"A", a.str()}, {"B", b.str()}}, res,
                                 safe2, sw);
    }
    const auto& [name, gen] = gens[static_cast<std::size_t>(cell.gen)];
    return zero_report_columns("dimred.centralizer", {{"n", std::to_string(n)}, {"k", ks}, {"A", cell.a.str()}, {"X", name}},
                               commutator(g(cell.a), *gen), safe2, sw);
  });
}

/// Exact point on the unit circle, standing for (cos θ/2, sin θ/2).
class RationalCirclePoint {
public:
  RationalCirclePoint(Rational c, Rational s) : c_(std::move(c)), s_(std::move(s)) {
    if (c_ * c_ + s_ * s_ != Rational(1))
      throw std::domain_error("RationalCirclePoint: c^2 + s^2 != 1 for (" + c_.str() + ", " + s_.str() + ")");
  }
  const Rational& c() const noexcept { return c_; }
  const Rational& s() const noexcept { return s_; }
  Rational cos_theta() const { return c_ * c_ - s_ * s_; }
  Rational sin_theta() const { return Rational(2) * c_ * s_; }
  std::string str() const { return "(" + c_.str() + "," + s_.str() + ")"; }

private:
  Rational c_, s_;
};

/// With γ̄_{2j-1} = cos θ_j γ_{2j-1} + sin θ_j γ_{2j}, γ̄_{2j} = -sin θ_j γ_{2j-1} + cos θ_j γ_{2j}
/// and S = ∏_j (c_j - i s_j Σ_j̄), checks S⁻¹ γ̄_μ S = γ_μ for every μ.
/// S⁻¹ = ∏_j (c_j + i s_j Σ_j̄) because Σ_j̄² = 1 and the factors commute.
inline CheckReport rotation_identity_check(const GammaSet& g, const std::vector<RationalCirclePoint>& points) {
  Stopwatch sw;
  const int n = g.n_pairs();
  if (static_cast<int>(points.size()) != n)
    throw std::invalid_argument("rotation_identity_check: need one circle point per pair");
  const Scalar i = Scalar::i();
  SparseMatrix rot = g.identity(), inv = g.identity();
  std::vector<SparseMatrix> bar;
  std::string pts;
  for (int j = 1; j <= n; ++j) {
    const auto& p = points[static_cast<std::size_t>(j - 1)];
    const SparseMatrix sig = spin_op(g, 2 * j - 1, 2 * j);
    rot = rot * (SparseMatrix::identity(g.dim(), Scalar(p.c())) - sig.scaled(i * Scalar(p.s())));
    inv = inv * (SparseMatrix::identity(g.dim(), Scalar(p.c())) + sig.scaled(i * Scalar(p.s())));
    const Scalar ct(p.cos_theta()), st(p.sin_theta());
    bar.push_back(g[2 * j - 1].scaled(ct) + g[2 * j].scaled(st));
    bar.push_back(g[2 * j].scaled(ct) - g[2 * j - 1].scaled(st));
    pts += (j > 1 ? ";" : "") + p.str();
  }
  // Stack the 2n residuals side by side so one witness locates the first failing μ.
  std::vector<Triplet> ts;
  const std::size_t d = g.dim();
  const SparseMatrix check_inv = inv * rot - g.identity();
  for (int mu = 1; mu <= 2 * n; ++mu) {
    const SparseMatrix res = inv * bar[static_cast<std::size_t>(mu - 1)] * rot - g[mu];
    for (const auto& t : res.triplets()) ts.push_back({t.row, t.col + d * static_cast<std::size_t>(mu - 1), t.value});
  }
  for (const auto& t : check_inv.triplets()) ts.push_back({t.row, t.col + d * static_cast<std::size_t>(2 * n), t.value});
  const SparseMatrix all = SparseMatrix::from_triplets(d, d * static_cast<std::size_t>(2 * n + 1), std::move(ts));
  return zero_report_matrix("dimred.rotation", {{"n", std::to_string(n)}, {"points", pts}}, all, sw);
}

/// One-pair checks: D̃² - x̃² = -∂² + k(k - σ3)/ρ² + ρ², and [D̃² - x̃², σ3] = 0.
inline std::vector<CheckReport> fubini_checks(const Rational& k, const LaurentBox& box, GammaFault fault = GammaFault::none) {
  if (box.n_vars() != 1) throw std::invalid_argument("fubini_checks: need a one-variable box");
  const ReducedModel m({k}, box.bound(), fault);
  const auto safe2 = detail::safe_columns(m, 2);
  const LaurentOps ops = laurent_ops(1, box);
  const SparseMatrix id = SparseMatrix::identity(2);
  const SparseMatrix s3 = pauli::sigma3();
  const GradedOperator h = compose(m.D_tilde, m.D_tilde) - compose(m.x_tilde, m.x_tilde);
  const GradedOperator inv2 = compose(ops.inv_rho, ops.inv_rho);
  const GradedOperator model = -kron(compose(ops.d_rho, ops.d_rho), id) +
                               kron(inv2, (id.scaled(Scalar(k)) - s3).scaled(Scalar(k))) +
                               kron(compose(ops.rho, ops.rho), id);
  std::vector<CheckReport> out;
  const Params p{{"k", k.str()}, {"W", std::to_string(box.bound())}};
  {
    Stopwatch sw;
    out.push_back(zero_report_columns("appendix.hamiltonian", p, h - model, safe2, sw));
  }
  {
    Stopwatch sw;
    out.push_back(zero_report_columns("appendix.sigma3", p, commutator(h, m.spinor(s3)), safe2, sw));
  }
  return out;
}

} // namespace dualpair
