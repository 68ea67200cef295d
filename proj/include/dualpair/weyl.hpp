#pragma once

#include "dualpair/clifford.hpp"
#include "dualpair/graded_operator.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualpair {

using Exponent = std::vector<int>;

namespace detail {
/// Number of exponent vectors with `vars` nonnegative entries summing to `sum`.
inline std::size_t compositions(int vars, int sum) {
  if (sum < 0) return 0;
  if (vars == 0) return sum == 0 ? 1 : 0;
  // C(sum + vars - 1, vars - 1), computed incrementally; exact in 64 bits at our sizes
  std::size_t r = 1;
  for (int k = 1; k < vars; ++k) r = r * static_cast<std::size_t>(sum + k) / static_cast<std::size_t>(k);
  return r;
}

inline void check_var(int mu, int n_vars, const char* who) {
  if (mu < 1 || mu > n_vars)
    throw std::out_of_range(std::string(who) + ": variable index " + std::to_string(mu) + " outside [1, " +
                            std::to_string(n_vars) + "]");
}
} // namespace detail

/// All exponent vectors of one total degree, in increasing lexicographic order.
class MonomialBasis {
public:
  MonomialBasis(int n_vars, int degree) : n_vars_(n_vars), degree_(degree) {
    if (n_vars < 1) throw std::invalid_argument("MonomialBasis: need at least one variable");
    if (degree < 0) throw std::invalid_argument("MonomialBasis: negative degree");
    exps_.reserve(detail::compositions(n_vars, degree));
    Exponent e(static_cast<std::size_t>(n_vars), 0);
    enumerate(e, 0, degree);
  }

  int n_vars() const noexcept { return n_vars_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return exps_.size(); }
  const Exponent& operator[](std::size_t k) const { return exps_[k]; }
  const std::vector<Exponent>& exponents() const noexcept { return exps_; }

  /// Rank of `e` in this basis; `e` must have the basis degree.
  std::size_t index_of(const Exponent& e) const {
    std::size_t rank = 0;
    int rem = degree_;
    for (int k = 0; k + 1 < n_vars_; ++k) {
      const int ek = e[static_cast<std::size_t>(k)];
      for (int t = 0; t < ek; ++t) rank += detail::compositions(n_vars_ - k - 1, rem - t);
      rem -= ek;
    }
    return rank;
  }

private:
  void enumerate(Exponent& e, int k, int rem) {
    if (k == n_vars_ - 1) {
      e[static_cast<std::size_t>(k)] = rem;
      exps_.push_back(e);
      return;
    }
    for (int t = 0; t <= rem; ++t) {
      e[static_cast<std::size_t>(k)] = t;
      enumerate(e, k + 1, rem - t);
    }
    e[static_cast<std::size_t>(k)] = 0;
  }

  int n_vars_;
  int degree_;
  std::vector<Exponent> exps_;
};

/// Polynomial ring truncated to degrees 0..max_degree, one basis per degree.
/// Negative degrees are the zero space, so lowering operators are exact at
/// the bottom; only the top of the window truncates.
class PolynomialFamily {
public:
  PolynomialFamily(int n_vars, int max_degree) : n_vars_(n_vars), max_degree_(max_degree) {
    if (max_degree < 0) throw std::invalid_argument("PolynomialFamily: negative max degree");
    for (int d = 0; d <= max_degree; ++d) bases_.emplace_back(n_vars, d);
  }

  int n_vars() const noexcept { return n_vars_; }
  int max_degree() const noexcept { return max_degree_; }
  bool in_window(int d) const noexcept { return d <= max_degree_; }
  const MonomialBasis& basis(int d) const { return bases_.at(static_cast<std::size_t>(d)); }
  std::size_t dim(int d) const { return d < 0 || d > max_degree_ ? 0 : bases_[static_cast<std::size_t>(d)].size(); }
  std::map<int, std::size_t> dims() const {
    std::map<int, std::size_t> m;
    for (int d = 0; d <= max_degree_; ++d) m[d] = dim(d);
    return m;
  }
  GradedOperator identity(const Scalar& c = Scalar(1)) const { return GradedOperator::scalar(dims(), c); }

private:
  int n_vars_;
  int max_degree_;
  std::vector<MonomialBasis> bases_;
};

/// Multiplication by x_μ (1-based); shift +1. Undefined on the top degree.
inline GradedOperator mult_op(int mu, const PolynomialFamily& fam) {
  detail::check_var(mu, fam.n_vars(), "mult_op");
  const auto k = static_cast<std::size_t>(mu - 1);
  GradedOperator op;
  for (int d = 0; d < fam.max_degree(); ++d) {
    const auto& src = fam.basis(d);
    const auto& dst = fam.basis(d + 1);
    std::vector<Triplet> ts;
    ts.reserve(src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      Exponent e = src[c];
      ++e[k];
      ts.push_back({dst.index_of(e), c, Scalar(1)});
    }
    op.set_part(d, +1, SparseMatrix::from_triplets(dst.size(), src.size(), std::move(ts)));
  }
  return op;
}

/// ∂/∂x_μ (1-based); shift -1. Exact on every degree of the window.
inline GradedOperator deriv_op(int mu, const PolynomialFamily& fam) {
  detail::check_var(mu, fam.n_vars(), "deriv_op");
  const auto k = static_cast<std::size_t>(mu - 1);
  GradedOperator op;
  for (int d = 0; d <= fam.max_degree(); ++d) {
    const auto& src = fam.basis(d);
    std::vector<Triplet> ts;
    for (std::size_t c = 0; c < src.size(); ++c) {
      Exponent e = src[c];
      if (e[k] == 0) continue;
      const int coeff = e[k]--;
      ts.push_back({fam.basis(d - 1).index_of(e), c, Scalar(coeff)});
    }
    op.set_part(d, -1, SparseMatrix::from_triplets(fam.dim(d - 1), src.size(), std::move(ts)));
  }
  return op;
}

/// L_{μν} = x_μ ∂_ν - x_ν ∂_μ, assembled directly on each degree; shift 0.
inline GradedOperator angular_op(int mu, int nu, const PolynomialFamily& fam) {
  if (mu == nu) throw std::invalid_argument("angular_op: indices must differ");
  detail::check_var(mu, fam.n_vars(), "angular_op");
  detail::check_var(nu, fam.n_vars(), "angular_op");
  const auto a = static_cast<std::size_t>(mu - 1), b = static_cast<std::size_t>(nu - 1);
  GradedOperator op;
  for (int d = 0; d <= fam.max_degree(); ++d) {
    const auto& basis = fam.basis(d);
    std::vector<Triplet> ts;
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const Exponent& e = basis[c];
      if (e[b] > 0) { // x_μ ∂_ν
        Exponent f = e;
        --f[b];
        ++f[a];
        ts.push_back({basis.index_of(f), c, Scalar(e[b])});
      }
      if (e[a] > 0) { // -x_ν ∂_μ
        Exponent f = e;
        --f[a];
        ++f[b];
        ts.push_back({basis.index_of(f), c, Scalar(-e[a])});
      }
    }
    op.set_part(d, 0, SparseMatrix::from_triplets(basis.size(), basis.size(), std::move(ts)));
  }
  return op;
}

/// Σ_{μ∈A} x_μ ∂_μ, diagonal with the A-partial degree. Empty A means all variables.
inline GradedOperator euler_op(const PolynomialFamily& fam, const IndexSet& subset = {}) {
  for (int mu : subset) detail::check_var(mu, fam.n_vars(), "euler_op");
  GradedOperator op;
  for (int d = 0; d <= fam.max_degree(); ++d) {
    const auto& basis = fam.basis(d);
    std::vector<Triplet> ts;
    for (std::size_t c = 0; c < basis.size(); ++c) {
      int partial = 0;
      if (subset.empty()) partial = d;
      else
        for (int mu : subset) partial += basis[c][static_cast<std::size_t>(mu - 1)];
      if (partial != 0) ts.push_back({c, c, Scalar(partial)});
    }
    op.set_part(d, 0, SparseMatrix::from_triplets(basis.size(), basis.size(), std::move(ts)));
  }
  return op;
}

/// All Laurent monomials with every exponent in [-W, W], lexicographic on the
/// shifted exponents e + W. Stored as a single degree-0 block: exponent
/// shifts are per variable, and columns whose image would leave the box are
/// marked invalid instead.
class LaurentBox {
public:
  LaurentBox(int n_vars, int bound) : n_vars_(n_vars), bound_(bound) {
    if (n_vars < 1) throw std::invalid_argument("LaurentBox: need at least one variable");
    if (bound < 0) throw std::invalid_argument("LaurentBox: negative bound");
    size_ = 1;
    for (int k = 0; k < n_vars; ++k) size_ *= static_cast<std::size_t>(2 * bound + 1);
  }

  int n_vars() const noexcept { return n_vars_; }
  int bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return size_; }

  Exponent exponent(std::size_t index) const {
    Exponent e(static_cast<std::size_t>(n_vars_));
    const auto side = static_cast<std::size_t>(2 * bound_ + 1);
    for (int k = n_vars_ - 1; k >= 0; --k) {
      e[static_cast<std::size_t>(k)] = static_cast<int>(index % side) - bound_;
      index /= side;
    }
    return e;
  }

  std::optional<std::size_t> index_of(const Exponent& e) const {
    std::size_t idx = 0;
    const auto side = static_cast<std::size_t>(2 * bound_ + 1);
    for (int k = 0; k < n_vars_; ++k) {
      const int v = e[static_cast<std::size_t>(k)];
      if (v < -bound_ || v > bound_) return std::nullopt;
      idx = idx * side + static_cast<std::size_t>(v + bound_);
    }
    return idx;
  }

  /// Columns with every exponent in [-W+margin, W-margin].
  std::vector<char> safe_mask(int margin) const {
    std::vector<char> mask(size_);
    for (std::size_t c = 0; c < size_; ++c) {
      bool ok = true;
      for (int v : exponent(c)) ok = ok && v >= -bound_ + margin && v <= bound_ - margin;
      mask[c] = ok ? 1 : 0;
    }
    return mask;
  }

  std::map<int, std::size_t> dims() const { return {{0, size_}}; }
  GradedOperator identity(const Scalar& c = Scalar(1)) const { return GradedOperator::scalar(dims(), c); }

private:
  int n_vars_;
  int bound_;
  std::size_t size_ = 0;
};

struct LaurentOps {
  GradedOperator rho;     ///< ρ^e ↦ ρ^{e+1}
  GradedOperator d_rho;   ///< ρ^e ↦ e ρ^{e-1}
  GradedOperator inv_rho; ///< ρ^e ↦ ρ^{e-1}
  GradedOperator euler;   ///< ρ^e ↦ e ρ^e, exact on the whole box
};

namespace detail {
/// Single-variable exponent shift on the box with a per-exponent coefficient.
template <class Coeff>
GradedOperator laurent_shift(const LaurentBox& box, std::size_t var, int step, Coeff coeff) {
  std::vector<Triplet> ts;
  GradedOperator::Block b;
  b.valid.assign(box.size(), 1);
  for (std::size_t c = 0; c < box.size(); ++c) {
    Exponent e = box.exponent(c);
    const Scalar w = coeff(e[var]);
    if (w.is_zero()) continue;
    e[var] += step;
    if (auto r = box.index_of(e)) ts.push_back({*r, c, w});
    else b.valid[c] = 0;
  }
  b.parts.emplace(0, SparseMatrix::from_triplets(box.size(), box.size(), std::move(ts)));
  GradedOperator op;
  op.set_block(0, std::move(b));
  return op;
}
} // namespace detail

/// ρ_j, ∂/∂ρ_j, 1/ρ_j and ρ_j∂/∂ρ_j on the box (j is 1-based).
inline LaurentOps laurent_ops(int j, const LaurentBox& box) {
  detail::check_var(j, box.n_vars(), "laurent_ops");
  const auto k = static_cast<std::size_t>(j - 1);
  return {detail::laurent_shift(box, k, +1, [](int) { return Scalar(1); }),
          detail::laurent_shift(box, k, -1, [](int e) { return Scalar(e); }),
          detail::laurent_shift(box, k, -1, [](int) { return Scalar(1); }),
          detail::laurent_shift(box, k, 0, [](int e) { return Scalar(e); })};
}

} // namespace dualpair
