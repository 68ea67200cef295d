#pragma once

#include "dualpair/check_report.hpp"
#include "dualpair/clifford.hpp"
#include "dualpair/weyl.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dualpair {

/// {γμ, γν} + 2δμν = 0 for μ <= ν, γμ† = -γμ, and the full-set involution
/// squaring to one and anticommuting with every γ.
inline std::vector<CheckReport> verify_clifford(const GammaSet& g) {
  std::vector<CheckReport> out;
  const std::string n = std::to_string(g.n_pairs());
  const SparseMatrix id = g.identity();
  for (int mu = 1; mu <= g.n_gammas(); ++mu)
    for (int nu = mu; nu <= g.n_gammas(); ++nu) {
      Stopwatch sw;
      SparseMatrix res = g[mu] * g[nu] + g[nu] * g[mu];
      if (mu == nu) res = res + id.scaled(Scalar(2));
      out.push_back(zero_report_matrix("clifford.anticomm", {{"n", n}, {"mu", std::to_string(mu)}, {"nu", std::to_string(nu)}},
                                       res, sw));
    }
  for (int mu = 1; mu <= g.n_gammas(); ++mu) {
    Stopwatch sw;
    out.push_back(zero_report_matrix("clifford.antihermitian", {{"n", n}, {"mu", std::to_string(mu)}}, g[mu].adjoint() + g[mu], sw));
  }
  const SparseMatrix s = involution(g, IndexSet::range(1, g.n_gammas()));
  {
    Stopwatch sw;
    out.push_back(zero_report_matrix("clifford.involution", {{"n", n}, {"rel", "SS"}}, s * s - id, sw));
  }
  for (int mu = 1; mu <= g.n_gammas(); ++mu) {
    Stopwatch sw;
    out.push_back(zero_report_matrix("clifford.involution", {{"n", n}, {"rel", "Sgamma"}, {"mu", std::to_string(mu)}},
                                     s * g[mu] + g[mu] * s, sw));
  }
  return out;
}

/// [L_{μν}, L_{ρσ}] = δνρ L_{μσ} - δνσ L_{μρ} - δμρ L_{νσ} + δμσ L_{νρ} for every
/// unordered pair of generators μ<ν, ρ<σ.
inline std::vector<CheckReport> verify_so_brackets(const PolynomialFamily& fam, const std::vector<int>& degrees) {
  require_window("so.bracket", fam.max_degree(), degrees, 0);
  const int nv = fam.n_vars();
  std::vector<std::pair<int, int>> gens;
  for (int a = 1; a <= nv; ++a)
    for (int b = a + 1; b <= nv; ++b) gens.emplace_back(a, b);
  auto L = [&](int a, int b) { return angular_op(a, b, fam).restricted(degrees); };
  std::map<std::pair<int, int>, GradedOperator> cache;
  for (auto [a, b] : gens) cache.emplace(std::pair{a, b}, L(a, b));
  const GradedOperator zero = GradedOperator::scalar(fam.dims(), Scalar(0)).restricted(degrees);
  // L_{ab} with a == b is zero; otherwise antisymmetric lookup.
  auto get = [&](int a, int b) -> GradedOperator {
    if (a == b) return zero;
    return a < b ? cache.at({a, b}) : -cache.at({b, a});
  };
  std::vector<CheckReport> out;
  for (std::size_t p = 0; p < gens.size(); ++p)
    for (std::size_t q = p + 1; q < gens.size(); ++q) {
      Stopwatch sw;
      const auto [mu, nu] = gens[p];
      const auto [rho, sg] = gens[q];
      GradedOperator rhs = zero;
      if (nu == rho) rhs += get(mu, sg);
      if (nu == sg) rhs -= get(mu, rho);
      if (mu == rho) rhs -= get(nu, sg);
      if (mu == sg) rhs += get(nu, rho);
      out.push_back(zero_report("so.bracket",
                                {{"n_vars", std::to_string(nv)},
                                 {"L1", std::to_string(mu) + std::to_string(nu)},
                                 {"L2", std::to_string(rho) + std::to_string(sg)}},
                                commutator(cache.at({mu, nu}), cache.at({rho, sg})) - rhs, degrees, sw));
    }
  return out;
}

/// L_{ab}L_{cd} + L_{ac}L_{db} + L_{ad}L_{bc} = 0; one report per 4-set,
/// covering all 24 orderings of its elements.
inline std::vector<CheckReport> verify_quadratic_identity(const PolynomialFamily& fam, const std::vector<int>& degrees) {
  require_window("so.quadratic", fam.max_degree(), degrees, 0);
  const int nv = fam.n_vars();
  std::map<std::pair<int, int>, GradedOperator> cache;
  for (int a = 1; a <= nv; ++a)
    for (int b = a + 1; b <= nv; ++b) {
      GradedOperator l = angular_op(a, b, fam).restricted(degrees);
      cache.emplace(std::pair{b, a}, -l);
      cache.emplace(std::pair{a, b}, std::move(l));
    }
  auto L = [&](int a, int b) -> const GradedOperator& { return cache.at({a, b}); };
  std::vector<CheckReport> out;
  for (int a = 1; a <= nv; ++a)
    for (int b = a + 1; b <= nv; ++b)
      for (int c = b + 1; c <= nv; ++c)
        for (int d = c + 1; d <= nv; ++d) {
          Stopwatch sw;
          std::array<int, 4> v{a, b, c, d};
          const std::string set = std::to_string(a) + std::to_string(b) + std::to_string(c) + std::to_string(d);
          std::optional<CheckReport> fail;
          do {
            const GradedOperator res = compose(L(v[0], v[1]), L(v[2], v[3])) + compose(L(v[0], v[2]), L(v[3], v[1])) +
                                       compose(L(v[0], v[3]), L(v[1], v[2]));
            std::string order;
            for (int x : v) order += std::to_string(x);
            CheckReport r = zero_report("so.quadratic", {{"n_vars", std::to_string(nv)}, {"set", set}, {"order", order}}, res,
                                        degrees, sw);
            if (!r.pass) {
              fail = std::move(r);
              break;
            }
          } while (std::next_permutation(v.begin(), v.end()));
          if (fail) out.push_back(std::move(*fail));
          else {
            CheckReport r{"so.quadratic", {{"n_vars", std::to_string(nv)}, {"set", set}, {"order", "all"}}, degrees, true,
                          std::nullopt, sw.ms()};
            out.push_back(std::move(r));
          }
        }
  return out;
}

} // namespace dualpair
