#include <gtest/gtest.h>

#include "tunnelph/errors.hpp"
#include "tunnelph/scenario.hpp"

using namespace tunnelph;

TEST(Scenario, StaticWithoutDynamics) {
  ScenarioConfig c;
  c.collapse_rate = 0.0;
  c.jitter = 0.0;
  const auto seq = generate_sequence(c);
  ASSERT_EQ(seq.size(), 21u);
  for (const auto& pc : seq) EXPECT_EQ(pc, seq[0]);
}

TEST(Scenario, DeterministicUnderSeed) {
  ScenarioConfig c;
  EXPECT_EQ(generate_sequence(c), generate_sequence(c));
  auto other = c;
  other.seed += 1;
  EXPECT_NE(generate_sequence(c), generate_sequence(other));
}

TEST(Scenario, ConstantBlocksAndMonotoneSettlement) {
  ScenarioConfig c;
  const auto seq = generate_sequence(c);
  for (const auto& pc : seq) {
    ASSERT_EQ(pc.size(), 42u);
    for (std::size_t i = 0; i < pc.size(); ++i) EXPECT_EQ(pc[i].block_id, seq[0][i].block_id);
  }
  for (std::size_t i = 0; i < 42; ++i) {
    const bool upper = seq[0][i].y > 0.5;
    for (std::size_t e = 1; e < seq.size(); ++e) {
      const double prev = seq[0][i].y - seq[e - 1][i].y;
      const double now = seq[0][i].y - seq[e][i].y;
      EXPECT_EQ(seq[e][i].x, seq[0][i].x);
      if (upper) {
        EXPECT_GE(now, prev);
      } else if (seq[0][i].y < -0.5) {
        EXPECT_EQ(now, 0.0);
      }
    }
  }
}

TEST(Scenario, Validation) {
  ScenarioConfig c;
  c.n_blocks = 3;
  EXPECT_THROW(generate_sequence(c), InputError);
  c = {};
  c.collapse_rate = -0.1;
  EXPECT_THROW(generate_sequence(c), InputError);
  c = {};
  c.jitter = -1.0;
  EXPECT_THROW(generate_sequence(c), InputError);
}
