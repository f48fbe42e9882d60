#include <gtest/gtest.h>

#include "relcalc/errors.hpp"
#include "relcalc/generator.hpp"
#include "relcalc/system_io.hpp"

namespace relcalc {
namespace {

TEST(GenerateRandomSystem, DeterministicForSeed) {
  GeneratorConfig config;
  const FamilyShape shape({3, 2, 4});
  const auto a = generate_random_system(shape, config, 99);
  const auto b = generate_random_system(shape, config, 99);
  EXPECT_EQ(serialize_system(a), serialize_system(b));
  const auto c = generate_random_system(shape, config, 100);
  EXPECT_NE(serialize_system(a), serialize_system(c));
}

TEST(GenerateRandomSystem, NoSharingGivesDisjointSets) {
  GeneratorConfig config;
  config.sharing = 0.0;
  config.max_set_size = 3;
  const FamilyShape shape({3, 3});
  config.components = shape.m() * config.max_set_size;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto spec = generate_random_system(shape, config, seed);
    ComponentSet seen;
    for (const auto& family : spec.functions) {
      for (const auto& impl : family) {
        EXPECT_TRUE((seen & impl.components).empty());
        seen |= impl.components;
      }
    }
  }
}

TEST(GenerateRandomSystem, AlwaysValidAndInRange) {
  for (double sharing : {0.0, 0.3, 0.7, 1.0}) {
    GeneratorConfig config;
    config.sharing = sharing;
    config.components = 6;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto spec = generate_random_system(FamilyShape({2, 3, 3}), config, seed);
      EXPECT_TRUE(validate_system(spec).ok()) << validate_system(spec).summary();
      for (const auto& c : spec.components) {
        EXPECT_GE(c.reliability, 0.05);
        EXPECT_LE(c.reliability, 0.95);
      }
    }
  }
}

TEST(GenerateRandomSystem, RejectsInfeasibleInputs) {
  GeneratorConfig config;
  config.components = 2;
  EXPECT_THROW(generate_random_system(FamilyShape({1, 1, 1}), config, 1), InputError);  // z < n
  config.max_set_size = 1;
  EXPECT_THROW(generate_random_system(FamilyShape({3}), config, 1), InputError);  // only 2 singletons
  config.max_set_size = 2;
  EXPECT_NO_THROW(generate_random_system(FamilyShape({3}), config, 1));  // {0},{1},{0,1}
  config.sharing = 1.5;
  EXPECT_THROW(generate_random_system(FamilyShape({1}), config, 1), InputError);
}

TEST(MixSeed, DistinctStreams) {
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
  EXPECT_EQ(mix_seed(5, 3), mix_seed(5, 3));
}

}  // namespace
}  // namespace relcalc
