#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "oracles.hpp"
#include "weakgibbs/errors.hpp"
#include "weakgibbs/text_format.hpp"

using namespace weakgibbs;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

double parse(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

TEST(TextFormat, RealsRoundTripBitForBit) {
  oracle::Rng rng(401);
  for (int i = 0; i < 10000; ++i) {
    const double x = std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.below(200)) - 100);
    EXPECT_TRUE(same_bits(parse(format_real(x)), x)) << format_real(x);
  }
  for (double x : {0.0, 1.0, 0.1, 1e-300, 5e-324, 1.7976931348623157e308})
    EXPECT_TRUE(same_bits(parse(format_real(x)), x));
}

TEST(TextFormat, SystemRoundTrip) {
  for (const auto& ts : {TransitionSystem::full_shift(3), TransitionSystem::golden_mean(),
                         TransitionSystem(3, {1, 1, 0, 0, 1, 1, 1, 0, 1})}) {
    const auto back = read_system(write_system(ts));
    EXPECT_EQ(back.alphabet_size(), ts.alphabet_size());
    EXPECT_TRUE(std::equal(back.matrix().begin(), back.matrix().end(), ts.matrix().begin(), ts.matrix().end()));
  }
  const auto golden = read_system("# golden mean\nsft 1\n\nalphabet 2\nrow 1 1\nrow 1 0\n");
  EXPECT_EQ(golden.mixing_exponent(), 2);
}

TEST(TextFormat, RejectsMalformedDocuments) {
  EXPECT_THROW(read_system("sft 2\nalphabet 1\nrow 1\n"), InvalidInput);
  EXPECT_THROW(read_system("sft 1\nalphabet 2\nrow 1 1\n"), InvalidInput);
  EXPECT_THROW(read_system("sft 1\nalphabet 2\nrow 1 1\nrow 1 x\n"), InvalidInput);
  EXPECT_THROW(read_system("potential 1\n"), InvalidInput);
  const auto ts = TransitionSystem::full_shift(2);
  EXPECT_THROW(read_potential(ts, "potential 1\ndepth 1\n1 0.5\n"), InvalidInput);  // symbol 2 missing
  EXPECT_THROW(read_potential(ts, "potential 1\ndepth 1\n1 0.5\n2 1e999\n"), InvalidInput);
  const auto tiny = read_potential(ts, "potential 1\ndepth 1\n1 5e-324\n2 0\n");
  EXPECT_TRUE(same_bits(tiny(Word{1}), 5e-324));
}

TEST(TextFormat, PotentialRoundTripIsExact) {
  oracle::Rng rng(409);
  for (const auto& ts : {TransitionSystem::full_shift(2), TransitionSystem::golden_mean()}) {
    for (int depth = 1; depth <= 3; ++depth) {
      const auto phi = oracle::random_potential(ts, depth, rng, -10.0, 10.0);
      const auto back = read_potential(ts, write_potential(phi));
      EXPECT_EQ(back.depth(), depth);
      const auto a = phi.table(), b = back.table();
      ASSERT_EQ(a.size(), b.size());
      for (const auto& [w, v] : a) EXPECT_TRUE(same_bits(b.at(w), v));
    }
  }
}

TEST(TextFormat, MeasureRoundTripIsExact) {
  oracle::Rng rng(419);
  const auto rpf = build_rpf(oracle::random_potential(TransitionSystem::golden_mean(), 1, rng));
  const auto& mu = *rpf.measure;
  const auto back = read_measure(mu.system(), write_measure(mu));
  for (const auto& w : oracle::admissible_words(mu.system(), 6)) EXPECT_TRUE(same_bits(back->mass(w), mu.mass(w)));

  const auto ts = TransitionSystem::full_shift(2);
  const TableMeasure table(ts, 2, {{{1}, 0.5}, {{2}, 0.5}, {{1, 1}, 0.2}, {{1, 2}, 0.3}, {{2, 1}, 0.3}, {{2, 2}, 0.2}});
  const auto table_back = read_measure(ts, write_measure(table));
  EXPECT_EQ(table_back->kind(), "table");
  EXPECT_EQ(table_back->mass(Word{2, 1}), 0.3);

  const auto bern = read_measure(ts, "measure 1\ntype bernoulli\np 0.3 0.7\n");
  EXPECT_NEAR(bern->mass(Word{2, 2}), 0.49, 1e-16);
}

TEST(TextFormat, MapRoundTrip) {
  const auto golden = PiecewiseLinearMap::golden_mean();
  const auto back = read_map(write_map(golden));
  ASSERT_TRUE(back->piecewise_linear());
  for (Symbol i = 1; i <= 2; ++i) {
    EXPECT_TRUE(same_bits(back->domain(i).left, golden.domain(i).left));
    EXPECT_TRUE(same_bits(back->domain(i).right, golden.domain(i).right));
    EXPECT_TRUE(same_bits(back->image(i).right, golden.image(i).right));
  }
  const auto perturbed = GeneralMarkovMap::perturbed_doubling(0.3);
  const auto general = read_map(write_map(perturbed));
  ASSERT_FALSE(general->piecewise_linear());
  for (double x : {0.1, 0.25, 0.4}) EXPECT_EQ(general->apply(1, x), perturbed.apply(1, x));
  EXPECT_EQ(write_map(*general), write_map(perturbed));
}
