#pragma once

#include "dualpair/check_report.hpp"
#include "dualpair/osp.hpp"
#include "dualpair/parallel.hpp"
#include "dualpair/racah.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualpair {

/// Strictly increasing set of pair labels j̄ ∈ [n̄], with its doubled index set
/// {2j-1, 2j : j̄ ∈ labels}. Stored as a bitmask (bit j-1 for label j).
class PairSet {
public:
  PairSet() = default;
  PairSet(std::initializer_list<int> labels) : PairSet(std::vector<int>(labels)) {}
  explicit PairSet(const std::vector<int>& labels) {
    int prev = 0;
    for (int j : labels) {
      if (j <= prev) throw std::invalid_argument("PairSet: labels must be strictly increasing and >= 1");
      if (j > 30) throw std::out_of_range("PairSet: label too large");
      mask_ |= 1u << (j - 1);
      prev = j;
    }
  }
  static PairSet from_mask(unsigned mask) {
    PairSet p;
    p.mask_ = mask;
    return p;
  }

  unsigned mask() const noexcept { return mask_; }
  bool empty() const noexcept { return mask_ == 0; }
  int size() const noexcept { return __builtin_popcount(mask_); }
  int max() const noexcept { return mask_ == 0 ? 0 : 32 - __builtin_clz(mask_); }

  std::vector<int> labels() const {
    std::vector<int> v;
    for (int j = 1; j <= 30; ++j)
      if (mask_ & (1u << (j - 1))) v.push_back(j);
    return v;
  }
  IndexSet doubled() const {
    std::vector<int> v;
    for (int j : labels()) {
      v.push_back(2 * j - 1);
      v.push_back(2 * j);
    }
    return IndexSet(std::move(v));
  }
  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (int j : labels()) {
      s += (first ? "" : ",") + std::to_string(j);
      first = false;
    }
    return s + "}";
  }

  friend PairSet operator|(PairSet a, PairSet b) { return from_mask(a.mask_ | b.mask_); }
  friend PairSet operator&(PairSet a, PairSet b) { return from_mask(a.mask_ & b.mask_); }
  friend PairSet operator-(PairSet a, PairSet b) { return from_mask(a.mask_ & ~b.mask_); }
  friend PairSet operator^(PairSet a, PairSet b) { return from_mask(a.mask_ ^ b.mask_); }
  friend bool operator==(PairSet, PairSet) = default;

private:
  unsigned mask_ = 0;
};

/// Nonempty subsets of [n̄] in increasing bitmask order.
inline std::vector<PairSet> nonempty_pair_sets(int n, int max_size = 64) {
  std::vector<PairSet> out;
  for (unsigned m = 1; m < (1u << n); ++m)
    if (__builtin_popcount(m) <= max_size) out.push_back(PairSet::from_mask(m));
  return out;
}

/// Route used for Γ_A: closed forms for one and two pairs, the bracket
/// composition for three or more.
inline CasimirMethod preferred_method(const PairSet& a) {
  return a.size() <= 2 ? CasimirMethod::closed_form : CasimirMethod::bracket;
}

/// Extra polynomial degrees of headroom Γ_A needs to be exact on a degree.
inline int casimir_margin(const PairSet& a) { return preferred_method(a) == CasimirMethod::bracket ? 1 : 0; }

/// Γ_A for pair subsets, restricted to a fixed degree list. Γ_∅ is -½.
/// Everything is computed up front; lookups are read-only and thread-safe.
class CasimirCache {
public:
  CasimirCache(const SpinModule& m, std::vector<int> degrees, const std::vector<PairSet>& subsets, unsigned jobs = 1)
      : degrees_(std::move(degrees)) {
    std::map<int, std::size_t> dims;
    for (int d : degrees_) dims[d] = m.block_dim(d);
    empty_ = GradedOperator::scalar(dims, Rational(-1, 2));
    std::vector<PairSet> todo;
    for (const PairSet& a : subsets)
      if (!a.empty() && std::find(todo.begin(), todo.end(), a) == todo.end()) todo.push_back(a);
    auto ops = parallel_map(jobs, todo.size(), [&](std::size_t k) {
      if (todo[k].max() > m.n_pairs()) throw std::out_of_range("CasimirCache: subset " + todo[k].str() + " outside [n]");
      return casimir(todo[k].doubled(), m, preferred_method(todo[k]), max_of(degrees_)).op.restricted(degrees_);
    });
    for (std::size_t k = 0; k < todo.size(); ++k) ops_.emplace(todo[k].mask(), std::move(ops[k]));
  }

  const std::vector<int>& degrees() const noexcept { return degrees_; }
  const GradedOperator& operator[](const PairSet& a) const {
    if (a.empty()) return empty_;
    auto it = ops_.find(a.mask());
    if (it == ops_.end()) throw std::out_of_range("CasimirCache: subset " + a.str() + " not precomputed");
    return it->second;
  }

private:
  std::vector<int> degrees_;
  GradedOperator empty_;
  std::map<unsigned, GradedOperator> ops_;
};

/// Every subset the relation for (A, B) touches.
inline std::vector<PairSet> bi_subsets(PairSet a, PairSet b) {
  return {a, b, a ^ b, a & b, a | b, a - b, b - a};
}

/// {Γ_A, Γ_B} - Γ_{AΔB} - 2Γ_{A∩B}Γ_{A∪B} - 2Γ_{A\B}Γ_{B\A}
inline GradedOperator bi_residual(const CasimirCache& g, PairSet a, PairSet b) {
  const Scalar two(2);
  return anticommutator(g[a], g[b]) - g[a ^ b] - compose(g[a & b], g[a | b]).scaled(two) -
         compose(g[a - b], g[b - a]).scaled(two);
}

namespace detail {
inline void require_casimir_window(const std::string& check, const SpinModule& m, const std::vector<int>& degrees,
                                   const std::vector<PairSet>& subsets, int extra) {
  int margin = 0;
  for (const PairSet& s : subsets)
    if (!s.empty()) margin = std::max(margin, casimir_margin(s));
  require_window(check, m.max_degree(), degrees, margin + extra);
}
} // namespace detail

inline CheckReport verify_bi_pair(const CasimirCache& g, int n, PairSet a, PairSet b) {
  Stopwatch sw;
  if (a.empty() || b.empty()) throw std::invalid_argument("verify_bi_pair: subsets must be nonempty");
  return zero_report("bi", {{"n", std::to_string(n)}, {"A", a.str()}, {"B", b.str()}}, bi_residual(g, a, b), g.degrees(), sw);
}

/// Standalone form: builds the Casimirs it needs on `m`.
inline CheckReport verify_bi_pair(PairSet a, PairSet b, const SpinModule& m, const std::vector<int>& degrees) {
  if (a.empty() || b.empty()) throw std::invalid_argument("verify_bi_pair: subsets must be nonempty");
  if ((a | b).max() > m.n_pairs()) throw std::out_of_range("verify_bi_pair: subsets outside [n]");
  const auto subsets = bi_subsets(a, b);
  detail::require_casimir_window("bi(A=" + a.str() + ", B=" + b.str() + ")", m, degrees, subsets, 0);
  return verify_bi_pair(CasimirCache(m, degrees, subsets), m.n_pairs(), a, b);
}

/// The anticommutation relation for every unordered pair of nonempty subsets
/// of [n̄] with at most `max_pair_size` labels (A = B included), followed by
/// centrality of every Γ_j̄ and of Γ_[n̄].
inline std::vector<CheckReport> verify_bi_all(const SpinModule& m, int max_pair_size, const std::vector<int>& degrees,
                                              unsigned jobs = 1) {
  const int n = m.n_pairs();
  if (n < 2) throw std::invalid_argument("verify_bi_all: need n >= 2");
  const auto sets = nonempty_pair_sets(n, max_pair_size);
  std::vector<PairSet> needed;
  for (std::size_t p = 0; p < sets.size(); ++p)
    for (std::size_t q = p; q < sets.size(); ++q)
      for (const PairSet& s : bi_subsets(sets[p], sets[q])) needed.push_back(s);
  const PairSet full = PairSet::from_mask((1u << n) - 1);
  for (int j = 1; j <= n; ++j) needed.push_back(PairSet{j});
  needed.push_back(full);
  detail::require_casimir_window("bi", m, degrees, needed, 0);
  const CasimirCache g(m, degrees, needed, jobs);

  struct Cell {
    PairSet a, b;
    bool central;
  };
  std::vector<Cell> cells;
  for (std::size_t p = 0; p < sets.size(); ++p)
    for (std::size_t q = p; q < sets.size(); ++q) cells.push_back({sets[p], sets[q], false});
  std::vector<PairSet> centers;
  for (int j = 1; j <= n; ++j) centers.push_back(PairSet{j});
  if (n > 1) centers.push_back(full);
  for (const PairSet& c : centers)
    for (const PairSet& s : sets)
      if (!(s == c)) cells.push_back({c, s, true});

  return parallel_map(jobs, cells.size(), [&](std::size_t k) {
    const Cell& c = cells[k];
    if (!c.central) return verify_bi_pair(g, n, c.a, c.b);
    Stopwatch sw;
    return zero_report("bi.central", {{"n", std::to_string(n)}, {"C", c.a.str()}, {"A", c.b.str()}},
                       commutator(g[c.a], g[c.b]), degrees, sw);
  });
}

/// Every pair-subset Casimir, G^i, K^{ij} and M_{ij} against every J_{2k-1,2k}.
inline std::vector<CheckReport> verify_commutant(const SpinModule& m, const std::vector<int>& degrees, unsigned jobs = 1) {
  const int n = m.n_pairs();
  const auto sets = nonempty_pair_sets(n);
  detail::require_casimir_window("commutant", m, degrees, sets, 0);
  const CasimirCache g(m, degrees, sets, jobs);

  std::vector<GradedOperator> js;
  for (int k = 1; k <= n; ++k) js.push_back(total_J(2 * k - 1, 2 * k, m).restricted(degrees));

  struct Item {
    std::string kind;
    std::string label;
    GradedOperator op;
  };
  std::vector<Item> items;
  for (const PairSet& s : sets) items.push_back({"gamma", s.str(), g[s]});
  for (int i = 1; i <= n; ++i) items.push_back({"G", std::to_string(i), m.lift(g_invariant(i, m.poly())).restricted(degrees)});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const std::string l = std::to_string(i) + std::to_string(j);
      items.push_back({"K", l, m.lift(k_invariant(i, j, m.poly())).restricted(degrees)});
      items.push_back({"M", l, commutant_generator(i, j, m).restricted(degrees)});
    }

  const std::size_t cells = items.size() * static_cast<std::size_t>(n);
  return parallel_map(jobs, cells, [&](std::size_t c) {
    Stopwatch sw;
    const Item& it = items[c / static_cast<std::size_t>(n)];
    const int k = static_cast<int>(c % static_cast<std::size_t>(n)) + 1;
    return zero_report("commutant",
                       {{"n", std::to_string(n)}, {it.kind, it.label}, {"J", std::to_string(2 * k - 1) + std::to_string(2 * k)}},
                       commutator(it.op, js[static_cast<std::size_t>(k - 1)]), degrees, sw);
  });
}

/// Every pair-subset Casimir against the total J-, J+, J0 and S on [2n].
inline std::vector<CheckReport> verify_centralizer(const SpinModule& m, const std::vector<int>& degrees, unsigned jobs = 1) {
  const int n = m.n_pairs();
  const auto sets = nonempty_pair_sets(n);
  // Γ is also needed one degree above and below, where J+ and J- land.
  detail::require_casimir_window("centralizer", m, degrees, sets, 1);
  std::vector<int> wider = degrees;
  for (int d : degrees) {
    wider.push_back(d + 1);
    if (d > 0) wider.push_back(d - 1);
  }
  std::sort(wider.begin(), wider.end());
  wider.erase(std::unique(wider.begin(), wider.end()), wider.end());
  const CasimirCache g(m, wider, sets, jobs);
  const OspRealization total = osp_realization(IndexSet::range(1, m.n_vars()), m);
  const std::vector<std::pair<std::string, const GradedOperator*>> gens{
      {"J-", &total.J_minus}, {"J+", &total.J_plus}, {"J0", &total.J_zero}, {"S", &total.S}};

  const std::size_t cells = sets.size() * gens.size();
  return parallel_map(jobs, cells, [&](std::size_t c) {
    Stopwatch sw;
    const PairSet& a = sets[c / gens.size()];
    const auto& [gname, gen] = gens[c % gens.size()];
    const GradedOperator x = gen->restricted(wider);
    GradedOperator res = commutator(g[a], x).restricted(degrees);
    return zero_report("centralizer", {{"n", std::to_string(n)}, {"A", a.str()}, {"X", gname}}, res, degrees, sw);
  });
}

} // namespace dualpair
