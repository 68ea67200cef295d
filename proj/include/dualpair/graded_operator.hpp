#pragma once

#include "dualpair/sparse_matrix.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dualpair {

/// One nonzero entry of an operator, located by degree shift, input degree,
/// row (in the output degree basis) and column (in the input degree basis).
struct Witness {
  int shift = 0;
  int degree = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  Scalar value;
};

struct ZeroVerdict {
  bool zero = true;
  std::optional<Witness> witness;
  explicit operator bool() const noexcept { return zero; }
};

enum class BracketKind { commutator, anticommutator };

/// Linear operator on a graded module, stored as one block per input degree.
///
/// The block for input degree d holds one sparse part per degree shift s,
/// mapping the degree-d basis into the degree-(d+s) basis, plus a column
/// validity mask. A column is valid when its image is known exactly; it is
/// invalid when computing it would have needed a basis element outside the
/// truncation window. Invalid columns never carry entries. A missing degree
/// block means the operator is unknown there altogether.
///
/// Composition propagates validity: column c of A*B is valid iff c is valid
/// in B and every row that B's column c reaches with a nonzero coefficient is
/// a valid column of A. Truncation therefore can neither create nor hide a
/// nonzero residual.
class GradedOperator {
public:
  struct Block {
    std::map<int, SparseMatrix> parts;
    std::vector<char> valid;

    std::size_t dim() const noexcept { return valid.size(); }
    bool fully_valid() const { return std::all_of(valid.begin(), valid.end(), [](char v) { return v != 0; }); }
    std::size_t valid_count() const { return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), 1)); }
  };

  GradedOperator() = default;

  /// Installs the block at `degree`; entries in invalid columns are dropped.
  void set_block(int degree, Block block) {
    for (auto it = block.parts.begin(); it != block.parts.end();) {
      if (it->second.cols() != block.dim())
        throw std::logic_error("GradedOperator: part column count does not match block dimension");
      if (!block.fully_valid()) it->second = it->second.masked_columns(block.valid);
      if (it->second.is_zero()) it = block.parts.erase(it);
      else ++it;
    }
    blocks_[degree] = std::move(block);
  }

  /// Convenience: fully valid single-part block.
  void set_part(int degree, int shift, SparseMatrix m) {
    Block b;
    b.valid.assign(m.cols(), 1);
    b.parts.emplace(shift, std::move(m));
    set_block(degree, std::move(b));
  }

  /// c * identity on the given degree dimensions.
  static GradedOperator scalar(const std::map<int, std::size_t>& dims, const Scalar& c = Scalar(1)) {
    GradedOperator op;
    for (const auto& [d, n] : dims) op.set_part(d, 0, SparseMatrix::identity(n, c));
    return op;
  }

  const std::map<int, Block>& blocks() const noexcept { return blocks_; }
  const Block* block(int degree) const {
    auto it = blocks_.find(degree);
    return it == blocks_.end() ? nullptr : &it->second;
  }
  bool has_degree(int d) const { return blocks_.count(d) != 0; }

  /// Degrees on which every column is valid.
  std::vector<int> full_degrees() const {
    std::vector<int> out;
    for (const auto& [d, b] : blocks_)
      if (b.fully_valid()) out.push_back(d);
    return out;
  }

  bool fully_valid_on(const std::vector<int>& degrees) const {
    for (int d : degrees) {
      const Block* b = block(d);
      if (!b || !b->fully_valid()) return false;
    }
    return true;
  }

  /// The part for (degree, shift), or nullptr when it is identically zero or unknown.
  const SparseMatrix* part(int degree, int shift) const {
    const Block* b = block(degree);
    if (!b) return nullptr;
    auto it = b->parts.find(shift);
    return it == b->parts.end() ? nullptr : &it->second;
  }

  GradedOperator restricted(const std::vector<int>& degrees) const {
    GradedOperator op;
    for (int d : degrees)
      if (auto it = blocks_.find(d); it != blocks_.end()) op.blocks_.emplace(d, it->second);
    return op;
  }

  GradedOperator scaled(const Scalar& c) const {
    GradedOperator op;
    for (const auto& [d, b] : blocks_) {
      Block nb;
      nb.valid = b.valid;
      for (const auto& [s, m] : b.parts) nb.parts.emplace(s, m.scaled(c));
      op.set_block(d, std::move(nb));
    }
    return op;
  }

  /// this + c * identity.
  GradedOperator plus_scalar(const Scalar& c) const {
    GradedOperator op;
    for (const auto& [d, b] : blocks_) {
      Block nb = b;
      SparseMatrix id = SparseMatrix::identity(b.dim(), c);
      auto it = nb.parts.find(0);
      if (it == nb.parts.end()) nb.parts.emplace(0, std::move(id));
      else it->second = it->second + id;
      op.set_block(d, std::move(nb));
    }
    return op;
  }

  friend GradedOperator operator+(const GradedOperator& a, const GradedOperator& b) { return combine(a, b, false); }
  friend GradedOperator operator-(const GradedOperator& a, const GradedOperator& b) { return combine(a, b, true); }
  GradedOperator operator-() const { return scaled(Scalar(-1)); }
  GradedOperator& operator+=(const GradedOperator& o) { return *this = *this + o; }
  GradedOperator& operator-=(const GradedOperator& o) { return *this = *this - o; }

  friend GradedOperator operator*(const Scalar& c, const GradedOperator& a) { return a.scaled(c); }

  /// Operator product a∘b (b acts first).
  friend GradedOperator compose(const GradedOperator& a, const GradedOperator& b) {
    GradedOperator out;
    for (const auto& [d, bb] : b.blocks_) {
      Block nb;
      nb.valid = bb.valid;
      for (const auto& [sb, mb] : bb.parts) {
        const Block* ab = a.block(d + sb);
        for (std::size_t c = 0; c < mb.cols(); ++c) {
          if (!nb.valid[c]) continue;
          for (const auto& e : mb.column(c))
            if (!ab || !ab->valid[e.row]) {
              nb.valid[c] = 0;
              break;
            }
        }
      }
      if (std::none_of(nb.valid.begin(), nb.valid.end(), [](char v) { return v != 0; })) continue;
      for (const auto& [sb, mb] : bb.parts) {
        const Block* ab = a.block(d + sb);
        if (!ab) continue;
        for (const auto& [sa, ma] : ab->parts) {
          SparseMatrix prod = SparseMatrix::multiply(ma, mb, &nb.valid);
          auto it = nb.parts.find(sa + sb);
          if (it == nb.parts.end()) nb.parts.emplace(sa + sb, std::move(prod));
          else it->second = it->second + prod;
        }
      }
      out.set_block(d, std::move(nb));
    }
    return out;
  }

  friend GradedOperator bracket(const GradedOperator& a, const GradedOperator& b, BracketKind kind) {
    GradedOperator ab = compose(a, b);
    GradedOperator ba = compose(b, a);
    return kind == BracketKind::commutator ? ab - ba : ab + ba;
  }
  friend GradedOperator commutator(const GradedOperator& a, const GradedOperator& b) {
    return bracket(a, b, BracketKind::commutator);
  }
  friend GradedOperator anticommutator(const GradedOperator& a, const GradedOperator& b) {
    return bracket(a, b, BracketKind::anticommutator);
  }

  /// Zero test over all valid columns of every stored block, in degree order.
  ZeroVerdict is_zero() const {
    for (const auto& [d, b] : blocks_)
      for (const auto& [s, m] : b.parts)
        if (auto t = m.first_nonzero()) return {false, Witness{s, d, t->row, t->col, t->value}};
    return {true, std::nullopt};
  }

  /// Zero test restricted to the listed degrees.
  ZeroVerdict is_zero_on(const std::vector<int>& degrees) const { return restricted(degrees).is_zero(); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& [d, b] : blocks_)
      for (const auto& [s, m] : b.parts) n += m.nnz();
    return n;
  }

private:
  static GradedOperator combine(const GradedOperator& a, const GradedOperator& b, bool subtract) {
    GradedOperator out;
    for (const auto& [d, ba] : a.blocks_) {
      const Block* bb = b.block(d);
      if (!bb) continue;
      if (ba.dim() != bb->dim()) throw std::logic_error("GradedOperator: block dimension mismatch in sum");
      Block nb;
      nb.valid.resize(ba.dim());
      for (std::size_t c = 0; c < ba.dim(); ++c) nb.valid[c] = static_cast<char>(ba.valid[c] && bb->valid[c]);
      nb.parts = ba.parts;
      for (const auto& [s, m] : bb->parts) {
        auto it = nb.parts.find(s);
        if (it == nb.parts.end()) nb.parts.emplace(s, subtract ? -m : m);
        else it->second = subtract ? it->second - m : it->second + m;
      }
      out.set_block(d, std::move(nb));
    }
    return out;
  }

  std::map<int, Block> blocks_;
};

inline GradedOperator sum(const std::vector<GradedOperator>& terms) {
  if (terms.empty()) throw std::invalid_argument("sum: no terms");
  GradedOperator acc = terms.front();
  for (std::size_t k = 1; k < terms.size(); ++k) acc += terms[k];
  return acc;
}

} // namespace dualpair
