#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

using namespace dualpair;
using oracle::Dense;
using oracle::PolySpinor;

namespace {

/// Reduced operators on Laurent vectors: variable j is ρ_j.
struct ReducedOracle {
  oracle::DiracOracle dirac;
  std::vector<Rational> k;

  ReducedOracle(const GammaSet& g, std::vector<Rational> kv) : dirac(g), k(std::move(kv)) {}

  PolySpinor D(const PolySpinor& v, PairSet a) const {
    PolySpinor r{dirac.spin_dim, {}};
    for (int j : a.labels()) {
      r = r + oracle::spin(oracle::diff(v, j), dirac.g(2 * j - 1));
      r = r + oracle::spin(oracle::inv_x(v, j), dirac.g(2 * j)).scaled(Scalar::i() * Scalar(k[static_cast<std::size_t>(j - 1)]));
    }
    return r;
  }
  PolySpinor x(const PolySpinor& v, PairSet a) const {
    PolySpinor r{dirac.spin_dim, {}};
    for (int j : a.labels()) r = r + oracle::spin(oracle::mul_x(v, j), dirac.g(2 * j - 1));
    return r;
  }
  Dense sigma(PairSet a) const {
    Dense s = oracle::identity(dirac.spin_dim);
    for (int j : a.labels()) s = oracle::multiply(s, dirac.grading({2 * j - 1, 2 * j}));
    return s;
  }
  PolySpinor casimir(const PolySpinor& v, PairSet a) const {
    const PolySpinor sv = oracle::spin(v, sigma(a));
    return (x(D(sv, a), a) - D(x(sv, a), a) - sv).scaled(Rational(1, 2));
  }
};

PolySpinor box_column(const GradedOperator& op, const LaurentBox& box, std::size_t sd, std::size_t col) {
  PolySpinor r{sd, {}};
  const auto* b = op.block(0);
  if (!b) return r;
  for (const auto& [shift, m] : b->parts)
    for (const auto& e : m.column(col)) r.add(box.exponent(e.row / sd), e.row % sd, e.value);
  return r;
}

/// First safe column where `op` is invalid or differs from `fn`; -1 if none.
template <class Fn>
long box_mismatch(const GradedOperator& op, const ReducedModel& m, int margin, Fn fn) {
  const auto safe = m.box().safe_mask(margin);
  const std::size_t sd = m.gammas().dim();
  const auto* b = op.block(0);
  for (std::size_t c = 0; c < safe.size(); ++c) {
    if (!safe[c]) continue;
    for (std::size_t s = 0; s < sd; ++s) {
      const std::size_t col = c * sd + s;
      if (!b || !b->valid[col]) return static_cast<long>(col);
      const PolySpinor want = fn(oracle::basis_vector(m.box().exponent(c), s, sd));
      if (!(box_column(op, m.box(), sd, col) - want).is_zero()) return static_cast<long>(col);
    }
  }
  return -1;
}

/// Safe columns of the residual are all zero.
bool zero_on_safe(const GradedOperator& op, const ReducedModel& m, int margin) {
  return box_mismatch(op, m, margin, [&](const PolySpinor&) { return PolySpinor{m.gammas().dim(), {}}; }) == -1;
}

void expect_all_pass(const std::vector<CheckReport>& reps) {
  ASSERT_FALSE(reps.empty());
  for (const auto& r : reps) EXPECT_TRUE(r.pass) << r.label();
}

std::vector<Rational> ks(std::initializer_list<Rational> v) { return v; }

} // namespace

TEST(ReducedModel, ZeroMomentumIsRadialDirac) {
  const ReducedModel m(ks({0}), 3);
  const LaurentOps ops = laurent_ops(1, m.box());
  EXPECT_TRUE((m.D_tilde - kron(ops.d_rho, m.gammas()[1])).is_zero());
  EXPECT_TRUE((m.x_tilde - kron(ops.rho, m.gammas()[1])).is_zero());
  EXPECT_TRUE((m.E_tilde - kron(ops.euler, m.gammas().identity())).is_zero());
}

TEST(ReducedModel, OperatorsMatchLaurentOracle) {
  const ReducedModel m(ks({Rational(1, 2), Rational(3, 2)}), 3);
  const ReducedOracle o(m.gammas(), m.k());
  const PairSet full = m.full();
  EXPECT_EQ(box_mismatch(m.D_tilde, m, 1, [&](const PolySpinor& v) { return o.D(v, full); }), -1);
  EXPECT_EQ(box_mismatch(m.x_tilde, m, 1, [&](const PolySpinor& v) { return o.x(v, full); }), -1);
  EXPECT_EQ(box_mismatch(m.D(PairSet{2}), m, 1, [&](const PolySpinor& v) { return o.D(v, PairSet{2}); }), -1);
  for (int j = 1; j <= 2; ++j)
    EXPECT_EQ(box_mismatch(reduced_casimir(m, PairSet{j}), m, 1, [&](const PolySpinor& v) { return o.casimir(v, PairSet{j}); }), -1);
  EXPECT_EQ(box_mismatch(reduced_casimir(m, full), m, 1, [&](const PolySpinor& v) { return o.casimir(v, full); }), -1);
}

TEST(ReducedModel, Errors) {
  EXPECT_THROW(ReducedModel(ks({1}), 1), std::invalid_argument);
  EXPECT_THROW(build_reduced({}, 3), std::invalid_argument);
  const ReducedModel m(ks({1, 2}), 2);
  EXPECT_THROW(m.D(PairSet{}), std::invalid_argument);
  EXPECT_THROW(m.x(PairSet{3}), std::out_of_range);
}

TEST(ReducedOsp, RelationsOnSafeColumns) {
  const ReducedModel m(ks({Rational(1, 2), Rational(3, 2)}), 3);
  const GradedOperator jm = m.J_minus(), jp = m.J_plus(), j0 = m.J_zero();
  EXPECT_TRUE(zero_on_safe(anticommutator(jp, jm) - j0.scaled(Scalar(2)), m, 1));
  EXPECT_TRUE(zero_on_safe(commutator(j0, jm) + jm, m, 1));
  EXPECT_TRUE(zero_on_safe(commutator(j0, jp) - jp, m, 1));
  const auto reps = verify_reduced_osp(m);
  expect_all_pass(reps);
  EXPECT_EQ(reps.size(), 7u);
  EXPECT_EQ(reps[2].label(), "dimred.osp(n=2, k=1/2,3/2, W=3, rel=J+J-)");
}

// {J+, J-} fixes J0; a shift of n instead of n/2 leaves a residual of n.
TEST(ReducedOsp, EulerShiftIsHalfTheRank) {
  const ReducedModel m(ks({Rational(1, 2), Rational(3, 2)}), 3);
  const GradedOperator anti = anticommutator(m.J_plus(), m.J_minus());
  EXPECT_TRUE(zero_on_safe(anti - m.E_tilde.plus_scalar(Scalar(1)).scaled(Scalar(2)), m, 1));
  EXPECT_FALSE(zero_on_safe(anti - m.E_tilde.plus_scalar(Scalar(2)).scaled(Scalar(2)), m, 1));
}

TEST(ReducedOsp, IndependentOfMomenta) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
  for (int t = 0; t < 6; ++t) {
    const ReducedModel m(ks({Rational(num(rng), den(rng)), Rational(num(rng), den(rng))}), 2);
    expect_all_pass(verify_reduced_osp(m));
  }
}

TEST(ReducedCasimir, OnePairValuesAreMomenta) {
  const ReducedModel m(ks({Rational(1, 2), Rational(3, 2)}), 3);
  for (int j = 1; j <= 2; ++j) {
    const Scalar kj(m.k()[static_cast<std::size_t>(j - 1)]);
    EXPECT_TRUE(zero_on_safe(reduced_casimir(m, PairSet{j}).plus_scalar(-kj), m, 1)) << j;
  }
  const auto reps = verify_reduced_casimir_values(m);
  expect_all_pass(reps);
  EXPECT_EQ(reps[1].label(), "dimred.casimir_value(n=2, j=2, k=3/2)");
}

TEST(ReducedCasimir, ValuesForRandomRationalMomenta) {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 13);
  for (int t = 0; t < 25; ++t) {
    const int n = 1 + t % 3;
    std::vector<Rational> k;
    for (int j = 0; j < n; ++j) k.emplace_back(num(rng), den(rng));
    const ReducedModel m(k, 2);
    for (const auto& r : verify_reduced_casimir_values(m)) ASSERT_TRUE(r.pass) << r.label();
  }
}

TEST(ReducedCasimir, FullSetCommutesWithLadders) {
  const ReducedModel m(ks({Rational(1, 2), Rational(3, 2), Rational(5, 2)}), 3);
  const GradedOperator g = reduced_casimir(m, m.full());
  EXPECT_TRUE(zero_on_safe(commutator(g, m.J_minus()), m, 2));
  EXPECT_TRUE(zero_on_safe(commutator(g, m.J_plus()), m, 2));
  // a two-pair Casimir is not central
  EXPECT_FALSE(zero_on_safe(commutator(reduced_casimir(m, PairSet{1, 2}), reduced_casimir(m, PairSet{2, 3})), m, 2));
}

TEST(ReducedBi, ThreePairExample) {
  const ReducedModel m(ks({Rational(1, 2), Rational(3, 2), Rational(5, 2)}), 3);
  auto g = [&](PairSet a) { return reduced_casimir(m, a); };
  const Scalar two(2);
  const GradedOperator res = anticommutator(g({1, 2}), g({2, 3})) -
                             (g({1, 3}) + compose(g({2}), g({1, 2, 3})).scaled(two) + compose(g({1}), g({3})).scaled(two));
  EXPECT_TRUE(zero_on_safe(res, m, 2));
}

TEST(ReducedBi, AllRelationsTwoAndThreePairs) {
  {
    const ReducedModel m(ks({Rational(1, 2), Rational(3, 2)}), 3);
    const auto reps = verify_reduced_bi(m);
    expect_all_pass(reps);
    EXPECT_EQ(reps.size(), 6u + 3u * 4u);
  }
  const ReducedModel m(ks({Rational(1, 2), Rational(3, 2), Rational(5, 2)}), 3);
  const auto reps = verify_reduced_bi(m, 2);
  expect_all_pass(reps);
  EXPECT_EQ(reps.size(), 28u + 7u * 4u);
}

TEST(ReducedBi, FaultIsDetected) {
  const ReducedModel m(ks({Rational(1, 2), Rational(3, 2)}), 3, GammaFault::flip_sign);
  bool failed = false;
  for (const auto& r : verify_reduced_osp(m)) failed = failed || !r.pass;
  EXPECT_TRUE(failed);
}

TEST(Rotation, CirclePoints) {
  const GammaSet g = build_gammas(2);
  const RationalCirclePoint p(Rational(3, 5), Rational(4, 5));
  EXPECT_EQ(p.cos_theta(), Rational(-7, 25));
  EXPECT_EQ(p.sin_theta(), Rational(24, 25));
  EXPECT_TRUE(rotation_identity_check(g, {RationalCirclePoint(1, 0), RationalCirclePoint(1, 0)}).pass);
  EXPECT_TRUE(rotation_identity_check(g, {p, RationalCirclePoint(0, 1)}).pass);
  EXPECT_TRUE(rotation_identity_check(build_gammas(3), {RationalCirclePoint(Rational(5, 13), Rational(-12, 13)), p,
                                                        RationalCirclePoint(Rational(-8, 17), Rational(15, 17))})
                  .pass);
  EXPECT_THROW(RationalCirclePoint(1, 1), std::domain_error);
  EXPECT_THROW(rotation_identity_check(g, {p}), std::invalid_argument);
}

// One pair, by hand: S = c - isΣ, S⁻¹ = c + isΣ, γ̄1 = cosθ γ1 + sinθ γ2.
TEST(Rotation, DenseOracleOnePair) {
  const GammaSet g = build_gammas(1);
  const Dense g1 = oracle::to_dense(g[1]), g2 = oracle::to_dense(g[2]);
  Dense sig = oracle::multiply(g1, g2);
  for (auto& row : sig)
    for (auto& x : row) x = x * Scalar::i();
  const Scalar c(Rational(3, 5)), s(Rational(4, 5)), ct(Rational(-7, 25)), st(Rational(24, 25));
  auto lin = [](const Dense& a, const Scalar& x, const Dense& b, const Scalar& y) {
    Dense r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j) r[i][j] = a[i][j] * x + b[i][j] * y;
    return r;
  };
  const Dense id = oracle::identity(2);
  const Dense rot = lin(id, c, sig, -Scalar::i() * s), inv = lin(id, c, sig, Scalar::i() * s);
  EXPECT_EQ(oracle::multiply(inv, rot), id);
  EXPECT_EQ(oracle::multiply(oracle::multiply(inv, lin(g1, ct, g2, st)), rot), g1);
  EXPECT_EQ(oracle::multiply(oracle::multiply(inv, lin(g2, ct, g1, -st)), rot), g2);
  // the rotated pair alone is not invariant
  EXPECT_NE(lin(g1, ct, g2, st), g1);
}

TEST(Superconformal, HamiltonianAndSigmaThree) {
  for (const Rational& k : {Rational(0), Rational(1, 2), Rational(3, 2), Rational(-5, 3)}) {
    const auto reps = fubini_checks(k, LaurentBox(1, 5));
    expect_all_pass(reps);
    ASSERT_EQ(reps.size(), 2u);
    EXPECT_EQ(reps[0].name, "appendix.hamiltonian");
    EXPECT_EQ(reps[1].name, "appendix.sigma3");
  }
  EXPECT_THROW(fubini_checks(Rational(1), LaurentBox(2, 3)), std::invalid_argument);
}

// k = 1/2: H̃ = D̃² - x̃² against -∂² + k(k - σ3)/ρ² + ρ², both on vectors.
TEST(Superconformal, LaurentVectorOracle) {
  const Rational k(1, 2);
  const ReducedModel m({k}, 5);
  const ReducedOracle o(m.gammas(), m.k());
  const Dense s3{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(-1)}};
  const Dense kk{{Scalar(k * (k - Rational(1))), Scalar(0)}, {Scalar(0), Scalar(k * (k + Rational(1)))}};
  ASSERT_EQ(oracle::to_dense(spin_op(m.gammas(), 1, 2)), s3);
  const PairSet one{1};
  const GradedOperator h = compose(m.D_tilde, m.D_tilde) - compose(m.x_tilde, m.x_tilde);
  auto model = [&](const PolySpinor& v) {
    return oracle::diff(oracle::diff(v, 1), 1).scaled(Scalar(-1)) + oracle::spin(oracle::inv_x(oracle::inv_x(v, 1), 1), kk) +
           oracle::mul_x(oracle::mul_x(v, 1), 1);
  };
  EXPECT_EQ(box_mismatch(h, m, 2, model), -1);
  EXPECT_EQ(box_mismatch(h, m, 2, [&](const PolySpinor& v) { return o.D(o.D(v, one), one) - o.x(o.x(v, one), one); }), -1);
  // the k-term alone is needed: dropping it breaks the identity
  auto oscillator = [&](const PolySpinor& v) {
    return oracle::diff(oracle::diff(v, 1), 1).scaled(Scalar(-1)) + oracle::mul_x(oracle::mul_x(v, 1), 1);
  };
  EXPECT_NE(box_mismatch(h, m, 2, oscillator), -1);
}

TEST(Superconformal, FaultIsDetected) {
  bool failed = false;
  for (const auto& r : fubini_checks(Rational(1, 2), LaurentBox(1, 4), GammaFault::flip_sign)) failed = failed || !r.pass;
  EXPECT_TRUE(failed);
}
