#include <gtest/gtest.h>

#include "oracles.hpp"
#include "posethom/corpus.hpp"
#include "posethom/functors.hpp"
#include "posethom/generators.hpp"
#include "posethom/report.hpp"
#include "posethom/theories.hpp"
#include "posethom/verify.hpp"

using namespace posethom;

namespace {

const Coefficients kZ = Coefficients::integers();
const Coefficients kQ = Coefficients::rationals();
const AbelianGroup kZ1{1, {}};

Mask m_(std::initializer_list<int> vs) { return mask_of(std::vector<int>(vs)); }

PoincareSeries series(std::initializer_list<std::tuple<int, int, long long>> terms) {
  PoincareSeries p;
  for (auto [q, l, c] : terms) p.add(q, l, c);
  return p;
}

}  // namespace

TEST(Functors, DegreeZeroValues) {
  const auto f = functor_H(cycle(4), 0, false, kZ);
  EXPECT_EQ(f.dims[m_({1, 3})], 2u);
  EXPECT_EQ(f.dims[m_({1, 2})], 1u);
  EXPECT_EQ(f.dims[0], 0u);

  const auto e = functor_H(cycle(5), -1, true, kZ);
  for (Mask j = 0; j < e.num_subsets(); ++j) EXPECT_EQ(e.dims[j], j == 0 ? 1u : 0u);

  const auto r = functor_H(random_complex(6, 1, 0.3, 4), 0, true, kZ);
  for (Mask j = 0; j < r.num_subsets(); ++j)
    if (cardinality(j) <= 1) { EXPECT_EQ(r.dims[j], 0u); }
  EXPECT_FALSE(find_noncommuting_square(r).has_value());
}

TEST(Functors, RegimeRules) {
  EXPECT_THROW(functor_H(cycle(4), 1, false, kZ), RegimeError);
  EXPECT_THROW(functor_H(cycle(4), -2, true, kZ), ContractError);
  HomologyEngine mod2(cycle(4), Coefficients::prime(2));
  EXPECT_THROW(functor_H(mod2, 0, false, kZ), ContractError);
  EXPECT_NO_THROW(functor_H(cycle(4), 1, false, kQ));
  const auto zero = functor_H(cycle(4), -1, false, kZ);
  for (auto d : zero.dims) EXPECT_EQ(d, 0u);
}

TEST(Functors, FunctorAValues) {
  const auto a1 = functor_A(1);
  EXPECT_EQ(a1.dims, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(poset_cohomology(a1, kZ), (std::vector<AbelianGroup>{{}, kZ1}));
  const auto a3 = functor_A(3);
  EXPECT_EQ(poset_cohomology(a3, kZ), (std::vector<AbelianGroup>{{}, kZ1, {}, {}}));
  // Composites along any chain of covers are the identity.
  EXPECT_EQ(a3.map(m_({1, 2}), 3) * a3.map(m_({1}), 2), IntMatrix{{1}});
}

TEST(Functors, FaceFunctorValues) {
  const auto f = functor_face(simplex(2));
  for (auto d : f.dims) EXPECT_EQ(d, 1u);
  EXPECT_TRUE(poset_cohomology(f, kZ) == std::vector<AbelianGroup>(3));
  EXPECT_EQ(functor_face(skeleton(2, 0)).dims[m_({1, 2})], 0u);
  EXPECT_EQ(poset_cohomology(functor_face(cycle(3)), kZ)[2], kZ1);
}

TEST(DoubleHomology, Examples) {
  for (const auto& e : standard_corpus()) {
    if (e.complex.m() > 6) continue;
    const auto t = double_homology(e.complex, kZ);
    // DH_{0,0} = H^0(H~_{-1}) = Z and the rest of the q = -1 row vanishes.
    EXPECT_EQ(t.at(-1, 0), kZ1) << e.name;
    EXPECT_EQ(dh_bidegree(-1, 0), std::make_pair(0, 0));
    for (int l = 1; l <= e.complex.m(); ++l) EXPECT_TRUE(t.at(-1, l).is_zero());
    if (e.complex.is_neighbourly()) { EXPECT_TRUE(t.at(0, 2).is_zero()) << e.name; }
  }
  const auto c4 = double_homology(cycle(4), kZ);
  const auto u4 = uber_B(cycle(4), kZ);
  EXPECT_EQ(c4.at(0, 2).free_rank, u4.at(0, 2).free_rank + 1);
  EXPECT_EQ(dh_bidegree(0, 2), std::make_pair(-1, 4));
}

TEST(DoubleHomology, ReindexingIsLiteral) {
  for (int m : {3, 4, 5}) {
    const auto k = cycle(m);
    const auto t = double_homology(k, kQ);
    for (int q = -1; q <= k.dimension(); ++q) {
      const auto direct = poset_cohomology(functor_H(k, q, true, kQ), kQ);
      for (int l = 0; l <= m; ++l) EXPECT_EQ(t.at(q, l), direct[l]);
    }
  }
}

TEST(DoubleHomology, RegimeAndRange) {
  ComputeOptions opt;
  opt.q_max = 1;
  EXPECT_THROW(double_homology(cycle(4), kZ, opt), RegimeError);
  opt.q_max = 7;
  EXPECT_THROW(double_homology(cycle(4), kQ, opt), InputError);
}

TEST(Uber, Examples) {
  EXPECT_EQ(uber_B(cycle(3), kZ).at(0, 1), kZ1);
  EXPECT_EQ(uber_B(simplex(4), kZ).at(0, 1), kZ1);
  EXPECT_TRUE(uber_B(cycle(5), kZ).at(0, 1).is_zero());
  for (const auto& e : standard_corpus()) {
    if (e.complex.m() > 5) continue;
    const auto t = uber_B(e.complex, kZ);
    for (int l = 0; l <= e.complex.m(); ++l) EXPECT_TRUE(t.at(-1, l).is_zero()) << e.name;
  }
}

TEST(Poincare, Examples) {
  for (const auto& e : standard_corpus()) {
    if (e.complex.m() > 5) continue;
    const auto red = poincare_series(e.complex, true, kQ);
    const auto unr = poincare_series(e.complex, false, kQ);
    EXPECT_EQ(red.at(-1, 0), 1) << e.name;
    for (int l = 0; l <= e.complex.m(); ++l) EXPECT_EQ(unr.at(-1, l), 0);
  }
  // A single point: H~_{-1} is Z at the empty set only; H_0 is Z at {1}.
  const auto point = simplex(1);
  EXPECT_EQ(poincare_series(point, true, kQ), series({{-1, 0, 1}}));
  EXPECT_EQ(poincare_series(point, false, kQ), series({{0, 1, 1}}));
  EXPECT_THROW(poincare_series(point, true, kZ), ContractError);
}

TEST(Poincare, Formatting) {
  EXPECT_EQ(series({{-1, 0, 1}, {0, 1, -1}}).to_string(), "x^-1 - y");
  EXPECT_EQ(series({{-1, 0, 1}, {0, 2, 1}}).to_string(), "x^-1 + y^2");
  EXPECT_EQ(series({{1, 3, 2}, {0, 0, -1}}).to_string(), "-1 + 2*x*y^3");
  EXPECT_EQ(PoincareSeries{}.to_string(), "0");
  EXPECT_TRUE((series({{0, 1, 3}}) - series({{0, 1, 3}})).coefficients.empty());
}

TEST(PoincareDifference, Examples) {
  const auto c3 = poincare_difference_check(cycle(3), kQ);
  EXPECT_TRUE(c3.pass);
  EXPECT_EQ(c3.difference.to_string(), "x^-1 - y");
  for (int m = 4; m <= 8; ++m)
    for (auto field : {kQ, Coefficients::prime(2)}) {
      const auto r = poincare_difference_check(cycle(m), field);
      EXPECT_TRUE(r.pass) << m;
      EXPECT_EQ(r.difference.to_string(), "x^-1 + y^2");
    }
  for (int m = 2; m <= 6; ++m) EXPECT_EQ(poincare_difference_check(skeleton(m, 0), kQ).difference.to_string(), "x^-1 + y^2");
  EXPECT_THROW(poincare_difference_check(cycle(3), kZ), ContractError);
}

TEST(PoincareDifference, ExactlyOnePolynomialMatches) {
  for (const auto& e : standard_corpus()) {
    if (e.complex.m() > 6) continue;
    const auto r = poincare_difference_check(e.complex, kQ);
    const bool nb = r.difference == expected_difference(true);
    const bool other = r.difference == expected_difference(false);
    EXPECT_NE(nb, other) << e.name;
    EXPECT_EQ(nb, e.complex.is_neighbourly()) << e.name;
  }
}

TEST(DegreeZeroComparison, Examples) {
  const auto c3 = degree_zero_comparison_check(cycle(3));
  EXPECT_TRUE(c3.pass());
  EXPECT_TRUE(c3.neighbourly);
  EXPECT_EQ(c3.h1_unreduced, kZ1);
  EXPECT_TRUE(c3.h2_reduced.is_zero());
  EXPECT_TRUE(c3.h2_unreduced.is_zero());

  const auto c4 = degree_zero_comparison_check(cycle(4));
  EXPECT_TRUE(c4.pass()) << c4.failures.size();
  EXPECT_FALSE(c4.neighbourly);
  EXPECT_TRUE(c4.h1_unreduced.is_zero());
  EXPECT_EQ(c4.h2_reduced.free_rank, c4.h2_unreduced.free_rank + 1);
  EXPECT_EQ(c4.kernel_rank_h2, 1u);
  EXPECT_TRUE(c4.splits);

  const auto d2 = degree_zero_comparison_check(simplex(3));
  EXPECT_TRUE(d2.pass());
  EXPECT_TRUE(d2.neighbourly);
  for (int l = 3; l < static_cast<int>(d2.reduced_groups.size()); ++l) {
    EXPECT_TRUE(d2.reduced_groups[l].is_zero());
    EXPECT_TRUE(d2.unreduced_groups[l].is_zero());
  }
}

TEST(DegreeZeroComparison, ConeDimensions) {
  for (const auto& e : standard_corpus()) {
    if (e.complex.m() > 6) continue;
    const auto r = degree_zero_comparison_check(e.complex);
    EXPECT_TRUE(r.pass()) << e.name << ": " << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_TRUE(r.cochain_map_commutes);
    for (int l = 2; l <= e.complex.m(); ++l) EXPECT_EQ(r.cone_betti[l + 1], 0u) << e.name;
    for (const auto& v : r.degrees) EXPECT_TRUE(v.holds);
  }
}

TEST(Lemmas, Biconditionals) {
  for (int n = 1; n <= 5; ++n)
    for (const auto& k : complexes_up_to_isomorphism(n)) {
      HomologyEngine engine(k, kZ);
      const auto a = check_reduced_h2_vanishing(engine);
      const auto b = check_unreduced_h1(engine);
      EXPECT_TRUE(a.holds);
      EXPECT_TRUE(b.holds);
      EXPECT_EQ(a.group.is_zero(), k.is_neighbourly());
      EXPECT_EQ(b.group.is_zero(), !k.is_neighbourly());
      if (k.is_neighbourly()) { EXPECT_EQ(b.group, kZ1); }
    }
}

TEST(Lemmas, PairBlocksOfTheDifferential) {
  for (const auto& e : standard_corpus()) {
    if (e.complex.m() > 6) continue;
    EXPECT_TRUE(verify_unreduced_h1(e.complex).pass) << e.name << verify_unreduced_h1(e.complex).detail;
  }
}

TEST(ShortExactSequence, DegreeZero) {
  for (const auto& e : standard_corpus()) {
    HomologyEngine engine(e.complex, kZ);
    const auto r = check_degree_zero_sequence(engine);
    EXPECT_TRUE(r.pass()) << e.name;
  }
}

TEST(ShortExactSequence, PointwiseRanksByOracle) {
  for (const auto& e : standard_corpus()) {
    if (e.complex.m() > 6) continue;
    const auto red = functor_H(e.complex, 0, true, kZ), unr = functor_H(e.complex, 0, false, kZ);
    for (Mask j = 1; j < red.num_subsets(); ++j) {
      EXPECT_EQ(unr.dims[j], oracle::components(e.complex, j));
      EXPECT_EQ(red.dims[j] + 1, unr.dims[j]);
    }
  }
}

TEST(Verify, RunnerDispatch) {
  for (const auto& name : verifier_names()) {
    const auto coeffs = name == "B" ? kQ : kZ;
    EXPECT_TRUE(run_verifier(name, cycle(5), coeffs).pass) << name;
  }
  EXPECT_THROW(run_verifier("B", cycle(5), kZ), RegimeError);
  EXPECT_THROW(run_verifier("C", cycle(5), kZ), InputError);
}

TEST(Report, JsonSchema) {
  const auto t = uber_B(cycle(4), kZ);
  const auto j = to_json(t);
  EXPECT_EQ(j["theory"], "uber");
  EXPECT_EQ(j["coeffs"], "Z");
  EXPECT_EQ(j["m"], 4);
  EXPECT_EQ(j["entries"].size(), 10u);
  EXPECT_EQ(j["entries"][0]["q"], -1);
  EXPECT_TRUE(j["entries"][0]["torsion"].is_array());
  const auto d = to_json(double_homology(cycle(3), kQ));
  EXPECT_EQ(d["entries"][0]["bidegree"], nlohmann::json::parse("[0,0]"));
}
