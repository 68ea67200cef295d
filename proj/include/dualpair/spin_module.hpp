#pragma once

#include "dualpair/clifford.hpp"
#include "dualpair/weyl.hpp"

#include <map>
#include <vector>

namespace dualpair {

/// Tensor an operator with a constant spinor matrix: (P ⊗ M). Column (m, s)
/// of the product is valid iff column m of P is.
inline GradedOperator kron(const GradedOperator& poly, const SparseMatrix& spin) {
  GradedOperator out;
  const std::size_t sd = spin.cols();
  for (const auto& [d, b] : poly.blocks()) {
    GradedOperator::Block nb;
    nb.valid.resize(b.dim() * sd);
    for (std::size_t c = 0; c < b.dim(); ++c)
      for (std::size_t s = 0; s < sd; ++s) nb.valid[c * sd + s] = b.valid[c];
    for (const auto& [s, m] : b.parts) nb.parts.emplace(s, kron(m, spin));
    out.set_block(d, std::move(nb));
  }
  return out;
}

/// Polynomial-spinor module P(x_1..x_{2n}) ⊗ C^{2^n}, truncated at a maximal
/// polynomial degree. Blocks are ordered monomial-major, spinor-minor.
class SpinModule {
public:
  SpinModule(int n_pairs, int max_degree, GammaFault fault = GammaFault::none)
      : gammas_(build_gammas(n_pairs, fault)), poly_(2 * n_pairs, max_degree) {
    const int nv = n_vars();
    for (int mu = 1; mu <= nv; ++mu) {
      x_.push_back(mult_op(mu, poly_));
      dx_.push_back(deriv_op(mu, poly_));
    }
    for (int mu = 1; mu <= nv; ++mu)
      for (int nu = mu + 1; nu <= nv; ++nu) l_.emplace(std::pair{mu, nu}, angular_op(mu, nu, poly_));
  }

  int n_pairs() const noexcept { return gammas_.n_pairs(); }
  int n_vars() const noexcept { return 2 * gammas_.n_pairs(); }
  int max_degree() const noexcept { return poly_.max_degree(); }
  std::size_t spinor_dim() const noexcept { return gammas_.dim(); }
  std::size_t block_dim(int d) const { return poly_.dim(d) * spinor_dim(); }
  const GammaSet& gammas() const noexcept { return gammas_; }
  const PolynomialFamily& poly() const noexcept { return poly_; }

  std::map<int, std::size_t> dims() const {
    std::map<int, std::size_t> m;
    for (int d = 0; d <= max_degree(); ++d) m[d] = block_dim(d);
    return m;
  }

  GradedOperator identity(const Scalar& c = Scalar(1)) const { return GradedOperator::scalar(dims(), c); }
  /// 1 ⊗ m
  GradedOperator spinor(const SparseMatrix& m) const { return kron(poly_.identity(), m); }
  /// P ⊗ m
  GradedOperator lift(const GradedOperator& p, const SparseMatrix& m) const { return kron(p, m); }
  /// P ⊗ 1
  GradedOperator lift(const GradedOperator& p) const { return kron(p, gammas_.identity()); }

  /// Scalar-module building blocks (1-based indices).
  const GradedOperator& x(int mu) const { return x_.at(static_cast<std::size_t>(mu - 1)); }
  const GradedOperator& dx(int mu) const { return dx_.at(static_cast<std::size_t>(mu - 1)); }
  /// L_{μν}; antisymmetric, so L(ν, μ) = -L(μ, ν).
  GradedOperator L(int mu, int nu) const {
    if (mu == nu) throw std::invalid_argument("SpinModule::L: indices must differ");
    return mu < nu ? l_.at({mu, nu}) : -l_.at({nu, mu});
  }
  const GradedOperator& L_ordered(int mu, int nu) const { return l_.at({mu, nu}); }

  const SparseMatrix& gamma(int mu) const { return gammas_[mu]; }
  SparseMatrix sigma(int mu, int nu) const { return spin_op(gammas_, mu, nu); }
  /// Σ_{j̄} = Σ_{2j-1,2j}
  SparseMatrix pair_sigma(int j) const { return spin_op(gammas_, 2 * j - 1, 2 * j); }

private:
  GammaSet gammas_;
  PolynomialFamily poly_;
  std::vector<GradedOperator> x_;
  std::vector<GradedOperator> dx_;
  std::map<std::pair<int, int>, GradedOperator> l_;
};

} // namespace dualpair
