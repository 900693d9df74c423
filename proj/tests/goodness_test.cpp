#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "dlp/goodness.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dlp;
using namespace testing_helpers;

namespace {

// {x1 − x2 = x3 − x4, x1 + x2 = x3 + x4}
KConfiguration example_invalid() {
  return config_of(4, {eq1(4, 1, 2, 3, 4), terms(4, {{1, 1}, {2, 1}, {3, -1}, {4, -1}})});
}

// {x1 − x2 = x3 − x4, x1 + x2 = x3 + x5}
KConfiguration example_collinear() {
  return config_of(5, {eq1(5, 1, 2, 3, 4), terms(5, {{1, 1}, {2, 1}, {3, -1}, {5, -1}})});
}

// {x1 − x2 = x3 − x4 = x5 − x6 = x7 − x8, x1 − x3 = x5 − x7}
KConfiguration example_cube() {
  return config_of(8, {eq1(8, 1, 2, 3, 4), eq1(8, 3, 4, 5, 6), eq1(8, 5, 6, 7, 8), eq1(8, 1, 3, 5, 7)});
}

// dim of span ∩ coord(S) through the dense oracle.
std::size_t oracle_section(const KConfiguration& c, VariableSet s) {
  oracle::Matrix m = to_matrix(c.basis().rows());
  for (auto i : s.indices()) m.push_back(to_q(ExactVector::unit(c.k(), i)));
  return c.rank() + s.size() - oracle::rank(m);
}

bool oracle_heavy(const KConfiguration& c, const Rational& cc) {
  const std::uint64_t full = VariableSet::first(c.k()).bits();
  for (std::uint64_t bits = 1; bits <= full; ++bits) {
    const VariableSet s{bits};
    const std::size_t t = oracle_section(c, s);
    if (t >= 1 && Rational(s.size()) < cc * t + 1) return true;
  }
  return false;
}

bool oracle_valid(const KConfiguration& c) {
  for (std::size_t i = 0; i < c.k(); ++i)
    for (std::size_t j = i + 1; j < c.k(); ++j)
      if (oracle::in_span(to_matrix(c.basis().rows()), to_q(ExactVector::unit(c.k(), i) - ExactVector::unit(c.k(), j))))
        return false;
  return true;
}

// For valid configurations: a support-3 member exists iff some 3-set carries a section.
bool oracle_collinear(const KConfiguration& c) {
  for (std::size_t a = 0; a < c.k(); ++a)
    for (std::size_t b = a + 1; b < c.k(); ++b)
      for (std::size_t d = b + 1; d < c.k(); ++d)
        if (oracle_section(c, VariableSet::of({a, b, d})) >= 1) return true;
  return false;
}

// Largest star by exhaustive search over sets of disjoint pairs.
std::size_t oracle_star(const KConfiguration& c) {
  const std::size_t k = c.k();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) pairs.push_back({a, b});
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, std::uint64_t)> grow = [&](std::size_t from, std::uint64_t used) {
    best = std::max(best, chosen.size());
    for (std::size_t q = from; q < pairs.size(); ++q) {
      const auto [a, b] = pairs[q];
      if ((used >> a & 1) || (used >> b & 1)) continue;
      if (!chosen.empty()) {
        const auto [x, y] = pairs[chosen.front()];
        if (!c.implies(ExactVector::unit(k, a) + ExactVector::unit(k, b) - ExactVector::unit(k, x) - ExactVector::unit(k, y)))
          continue;
      }
      chosen.push_back(q);
      grow(q + 1, used | (1ULL << a) | (1ULL << b));
      chosen.pop_back();
    }
  };
  grow(0, 0);
  return best >= 2 ? 2 * best : 0;
}

const std::vector<Rational> kCs = {Rational(5, 4), Rational(3, 2), Rational(7, 4), Rational(15, 8), Rational(2)};

}  // namespace

TEST(Validity, Examples) {
  const auto v = is_valid(example_invalid());
  EXPECT_FALSE(v.valid);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, (EqualityWitness{0, 2}));
  EXPECT_EQ(describe(*v.witness), "x1 = x3");
  EXPECT_TRUE(is_valid(points_config({1, 2, 5, 6, 9})).valid);
  EXPECT_TRUE(is_valid(KConfiguration(5)).valid);
}

TEST(Collinearity, Examples) {
  const auto b = is_collinearity_free(example_collinear());
  EXPECT_FALSE(b.collinearity_free);
  ASSERT_TRUE(b.witness.has_value());
  EXPECT_EQ(b.witness->equation, terms(5, {{2, 2}, {4, -1}, {5, -1}}));
  EXPECT_EQ(describe(*b.witness), "2x2 - x4 - x5 = 0");

  const auto intro = is_collinearity_free(points_config({1, 2, 5, 6, 9}));
  EXPECT_FALSE(intro.collinearity_free);
  EXPECT_EQ(intro.witness->equation, terms(5, {{1, 1}, {3, -2}, {5, 1}}));

  for (std::size_t p = 2; p <= 5; ++p) EXPECT_TRUE(is_collinearity_free(star_configuration(2 * p + 1, p)).collinearity_free);
}

TEST(Lightness, Examples) {
  const auto cube = is_c_light(example_cube(), 2);
  EXPECT_FALSE(cube.light);
  ASSERT_TRUE(cube.witness.has_value());
  EXPECT_EQ(cube.witness->variables, VariableSet::first(8));
  EXPECT_EQ(cube.witness->t, 4U);
  EXPECT_EQ(describe(*cube.witness), "8 variables {x1,x2,x3,x4,x5,x6,x7,x8}, t=4");
  EXPECT_TRUE(is_valid(example_cube()).valid);
  EXPECT_TRUE(is_collinearity_free(example_cube()).collinearity_free);

  for (std::size_t p = 2; p <= 6; ++p) EXPECT_TRUE(is_c_light(star_configuration(2 * p, p), 2).light);
  for (const auto& c : kCs) EXPECT_TRUE(is_c_light(KConfiguration(6), c).light);
  EXPECT_TRUE(is_c_light(example_collinear(), 2).light);
}

TEST(Lightness, RejectsOutOfRangeC) {
  EXPECT_THROW(is_c_light(example_cube(), 1), std::invalid_argument);
  EXPECT_THROW(is_c_light(example_cube(), Rational(5, 2)), std::invalid_argument);
  EXPECT_NO_THROW(require_c_in_range(near_two_c()));
  EXPECT_EQ(near_two_c(), Rational(2) - Rational(1, 1 << 29));
}

TEST(Goodness, ShortCircuitOrder) {
  const auto star = is_c_good(star_configuration(8, 4), 2);
  EXPECT_TRUE(star.c_good());
  EXPECT_TRUE(std::holds_alternative<std::monostate>(star.witness));

  const auto col = is_c_good(example_collinear(), 2);
  EXPECT_TRUE(col.valid);
  EXPECT_FALSE(col.collinearity_free);
  EXPECT_TRUE(col.c_light);
  EXPECT_FALSE(col.c_good());
  EXPECT_TRUE(std::holds_alternative<CollinearityWitness>(col.witness));

  const auto cube = is_c_good(example_cube(), 2);
  EXPECT_FALSE(cube.c_light);
  EXPECT_TRUE(std::holds_alternative<HeavinessWitness>(cube.witness));

  const auto inv = is_c_good(example_invalid(), 2);
  EXPECT_FALSE(inv.valid);
  EXPECT_TRUE(inv.collinearity_free);
  EXPECT_TRUE(std::holds_alternative<EqualityWitness>(inv.witness));
}

TEST(Goodness, AgreesWithBruteForceOracles) {
  std::mt19937_64 rng(31);
  int heavy_seen = 0;
  int collinear_seen = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 4 + rng() % 4;
    const auto c = points_config(oracle::distinct_sample(rng, k, 0, 3 * static_cast<std::int64_t>(k)));
    ASSERT_TRUE(oracle_valid(c));
    const bool collinear = oracle_collinear(c);
    collinear_seen += collinear ? 1 : 0;
    EXPECT_EQ(is_collinearity_free(c).collinearity_free, !collinear);
    for (const auto& cc : kCs) {
      const bool heavy = oracle_heavy(c, cc);
      heavy_seen += heavy ? 1 : 0;
      const auto v = is_c_light(c, cc);
      ASSERT_EQ(v.light, !heavy);
      if (!v.light) {
        EXPECT_TRUE(witness_holds(c, *v.witness, cc));
        EXPECT_EQ(v.witness->section.support(), v.witness->variables);
      }
    }
  }
  EXPECT_GT(heavy_seen, 10);
  EXPECT_GT(collinear_seen, 10);
}

TEST(Goodness, HandBuiltSystemsAgreeWithOracles) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 5 + rng() % 3;
    std::vector<ExactVector> cs;
    for (std::size_t n = 1 + rng() % 3; cs.size() < n;) {
      const auto e = DifferenceEquality::from_content(
          ExactVector::unit(k, rng() % k) - ExactVector::unit(k, rng() % k) - ExactVector::unit(k, rng() % k) +
          ExactVector::unit(k, rng() % k));
      if (e) cs.push_back(e->content);
    }
    const auto c = KConfiguration::from_contents(k, cs);
    const auto v = is_valid(c);
    EXPECT_EQ(v.valid, oracle_valid(c));
    if (!v.valid) {
      EXPECT_TRUE(witness_holds(c, *v.witness, 2));
      continue;
    }
    EXPECT_EQ(is_collinearity_free(c).collinearity_free, !oracle_collinear(c));
    EXPECT_EQ(is_c_light(c, 2).light, !oracle_heavy(c, 2));
    const auto rep = is_c_good(c, 2);
    if (!rep.c_good()) EXPECT_TRUE(witness_holds(c, rep.witness, 2));
  }
}

TEST(Goodness, WitnessHoldsRejectsForgeries) {
  const auto c = points_config({1, 2, 5, 6, 9});
  EXPECT_FALSE(witness_holds(c, EqualityWitness{0, 1}, 2));
  EXPECT_FALSE(witness_holds(c, CollinearityWitness{terms(5, {{1, 1}, {2, -2}, {3, 1}})}, 2));
  EXPECT_FALSE(witness_holds(c, HeavinessWitness{VariableSet::first(5), 1, reduce({}, 5)}, 2));
  EXPECT_TRUE(witness_holds(c, CollinearityWitness{terms(5, {{1, 1}, {3, -2}, {5, 1}})}, 2));
  const auto cube = example_cube();
  EXPECT_TRUE(witness_holds(cube, *is_c_light(cube, 2).witness, 2));
  EXPECT_FALSE(witness_holds(cube, *is_c_light(cube, 2).witness, Rational(3, 2)));
}

TEST(Goodness, HeavinessMonotoneInC) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 5 + rng() % 4;
    const auto c = points_config(oracle::distinct_sample(rng, k, 0, 20));
    bool heavy_below = false;
    for (const auto& cc : kCs) {
      const bool heavy = !is_c_light(c, cc).light;
      if (heavy_below) EXPECT_TRUE(heavy);
      heavy_below = heavy_below || heavy;
    }
  }
}

TEST(Goodness, FewGeneratorsGoodAtCIsGoodAtTwo) {
  // rank < 1/(2 − c) means the span is generated by fewer than 1/(2 − c) difference equalities.
  std::mt19937_64 rng(34);
  int nontrivial = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t k = 5 + rng() % 4;
    const auto c = points_config(oracle::distinct_sample(rng, k, 0, 25));
    for (const auto& cc : kCs) {
      if (cc == 2 || Rational(c.rank()) * (2 - cc) >= 1) continue;
      if (is_c_good(c, cc).c_good()) {
        ++nontrivial;
        EXPECT_TRUE(is_c_good(c, 2).c_good());
      }
    }
  }
  EXPECT_GT(nontrivial, 20);
}

TEST(Goodness, EvenSubsetsRespectCertificationBound) {
  // All 4-subsets of [1, 16] and random 6-subsets of [1, 30].
  std::size_t good = 0;
  for (std::int64_t a = 1; a <= 16; ++a)
    for (std::int64_t b = a + 1; b <= 16; ++b)
      for (std::int64_t d = b + 1; d <= 16; ++d)
        for (std::int64_t e = d + 1; e <= 16; ++e) {
          const auto c = points_config({a, b, d, e});
          if (!is_c_good(c, 2).c_good()) continue;
          ++good;
          EXPECT_LE(c.certified_count(), 2U);
        }
  EXPECT_GT(good, 0U);
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 400; ++trial) {
    const auto c = points_config(oracle::distinct_sample(rng, 6, 1, 30));
    if (is_c_good(c, 2).c_good()) EXPECT_LE(c.certified_count(), 6U);
  }
}

TEST(Stars, Examples) {
  const auto six = largest_star(points_config({0, 10, 1, 9, 2, 8}));
  EXPECT_EQ(six.size, 6U);
  EXPECT_EQ(six.witness.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 3}, {4, 5}}));
  const auto intro = largest_star(points_config({1, 2, 5, 6, 9}));
  EXPECT_EQ(intro.size, 4U);
  EXPECT_EQ(intro.witness.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 3}, {1, 2}}));
  EXPECT_EQ(largest_star(KConfiguration(6)).size, 0U);
  EXPECT_EQ(largest_star(star_configuration(10, 5)).size, 10U);
}

TEST(Stars, AgreeWithExhaustiveSearch) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 4 + rng() % 4;
    const auto c = points_config(oracle::distinct_sample(rng, k, 0, 12));
    const auto star = largest_star(c);
    EXPECT_EQ(star.size, oracle_star(c));
    for (std::size_t q = 1; q < star.witness.pairs.size(); ++q) {
      const auto [a, b] = star.witness.pairs[q - 1];
      const auto [x, y] = star.witness.pairs[q];
      EXPECT_TRUE(c.implies_sum_equality(a, b, x, y));
    }
  }
}

TEST(Stars, SumEqualityIsTransitive) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 5 + rng() % 3;
    const auto c = points_config(oracle::distinct_sample(rng, k, 0, 10));
    for (int q = 0; q < 200; ++q) {
      std::size_t v[6];
      for (auto& x : v) x = rng() % k;
      if (c.implies_sum_equality(v[0], v[1], v[2], v[3]) && c.implies_sum_equality(v[2], v[3], v[4], v[5]))
        EXPECT_TRUE(c.implies_sum_equality(v[0], v[1], v[4], v[5]));
    }
  }
}
