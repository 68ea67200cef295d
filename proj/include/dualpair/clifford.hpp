#pragma once

#include "dualpair/sparse_matrix.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualpair {

/// Strictly increasing set of 1-based coordinate indices.
class IndexSet {
public:
  IndexSet() = default;
  IndexSet(std::initializer_list<int> idx) : IndexSet(std::vector<int>(idx)) {}
  explicit IndexSet(std::vector<int> idx) : idx_(std::move(idx)) {
    for (std::size_t k = 0; k < idx_.size(); ++k) {
      if (idx_[k] < 1) throw std::invalid_argument("IndexSet: indices are 1-based");
      if (k > 0 && idx_[k] <= idx_[k - 1]) throw std::invalid_argument("IndexSet: indices must be strictly increasing");
    }
  }

  /// {first, first+1, ..., last}
  static IndexSet range(int first, int last) {
    std::vector<int> v;
    for (int k = first; k <= last; ++k) v.push_back(k);
    return IndexSet(std::move(v));
  }

  const std::vector<int>& indices() const noexcept { return idx_; }
  std::size_t size() const noexcept { return idx_.size(); }
  bool empty() const noexcept { return idx_.empty(); }
  bool contains(int mu) const { return std::binary_search(idx_.begin(), idx_.end(), mu); }
  int max() const { return idx_.empty() ? 0 : idx_.back(); }
  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }

  std::string str() const {
    std::string s = "{";
    for (std::size_t k = 0; k < idx_.size(); ++k) s += (k ? "," : "") + std::to_string(idx_[k]);
    return s + "}";
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
  std::vector<int> idx_;
};

/// Negative-control hook: corrupts the gamma set so verifications must fail.
enum class GammaFault { none, flip_sign };

/// Generators of Cl_{2n} as 2^n x 2^n matrices with {γμ, γν} = -2δμν.
class GammaSet {
public:
  GammaSet(int n_pairs, std::vector<SparseMatrix> gammas) : n_pairs_(n_pairs), gammas_(std::move(gammas)) {}

  int n_pairs() const noexcept { return n_pairs_; }
  int n_gammas() const noexcept { return 2 * n_pairs_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_pairs_; }
  /// 1-based.
  const SparseMatrix& operator[](int mu) const {
    if (mu < 1 || mu > n_gammas()) throw std::out_of_range("GammaSet: index " + std::to_string(mu) + " out of range");
    return gammas_[static_cast<std::size_t>(mu - 1)];
  }
  const std::vector<SparseMatrix>& all() const noexcept { return gammas_; }
  SparseMatrix identity() const { return SparseMatrix::identity(dim()); }

private:
  int n_pairs_;
  std::vector<SparseMatrix> gammas_;
};

namespace pauli {
inline SparseMatrix sigma1() { return SparseMatrix::dense({{0, 1}, {1, 0}}); }
inline SparseMatrix sigma2() {
  const Scalar i = Scalar::i();
  return SparseMatrix::dense({{0, -i}, {i, 0}});
}
inline SparseMatrix sigma3() { return SparseMatrix::dense({{1, 0}, {0, -1}}); }
} // namespace pauli

/// Recursive Pauli-tensor realization: γ1 = iσ1, γ2 = iσ2 for one pair, and
/// each further pair maps {γk} to {γk ⊗ σ3} ∪ {1 ⊗ iσ1, 1 ⊗ iσ2}.
inline GammaSet build_gammas(int n_pairs, GammaFault fault = GammaFault::none) {
  if (n_pairs < 1) throw std::invalid_argument("build_gammas: need at least one pair");
  const Scalar i = Scalar::i();
  const SparseMatrix g1 = pauli::sigma1().scaled(i);
  const SparseMatrix g2 = pauli::sigma2().scaled(i);
  // iγ1γ2 of the two-dimensional base, which equals σ3
  const SparseMatrix top = (g1 * g2).scaled(i);

  std::vector<SparseMatrix> gs{g1, g2};
  for (int m = 1; m < n_pairs; ++m) {
    const SparseMatrix id = SparseMatrix::identity(std::size_t{1} << m);
    std::vector<SparseMatrix> next;
    next.reserve(gs.size() + 2);
    for (const auto& g : gs) next.push_back(kron(g, top));
    next.push_back(kron(id, g1));
    next.push_back(kron(id, g2));
    gs = std::move(next);
  }

  if (fault == GammaFault::flip_sign) {
    auto ts = gs[0].triplets();
    ts.front().value = -ts.front().value;
    gs[0] = SparseMatrix::from_triplets(gs[0].rows(), gs[0].cols(), std::move(ts));
  }
  return GammaSet(n_pairs, std::move(gs));
}

/// Σμν = iγμγν.
inline SparseMatrix spin_op(const GammaSet& g, int mu, int nu) {
  if (mu == nu) throw std::invalid_argument("spin_op: indices must differ");
  return (g[mu] * g[nu]).scaled(Scalar::i());
}

/// S^A = i^{|A|/2} ∏_{μ∈A} γμ, product in increasing index order.
inline SparseMatrix involution(const GammaSet& g, const IndexSet& a) {
  if (a.empty()) throw std::invalid_argument("involution: empty index set");
  if (a.size() % 2 != 0)
    throw std::domain_error("involution: no grading involution exists for the odd subset " + a.str());
  if (a.max() > g.n_gammas()) throw std::out_of_range("involution: index set " + a.str() + " exceeds Cl generators");
  SparseMatrix p = g.identity();
  for (int mu : a) p = p * g[mu];
  return p.scaled(Scalar::i_pow(static_cast<int>(a.size() / 2)));
}

} // namespace dualpair
