#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "relcalc/bench.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/evaluators.hpp"
#include "relcalc/system_io.hpp"

namespace relcalc {
namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("relcalc_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(ParseShape, Forms) {
  EXPECT_EQ(parse_shape("3x3"), FamilyShape({3, 3, 3}));
  EXPECT_EQ(parse_shape("2,3,4"), FamilyShape({2, 3, 4}));
  EXPECT_EQ(parse_shape("(2,2)"), FamilyShape({2, 2}));
  EXPECT_EQ(parse_shape("5"), FamilyShape({5}));
  EXPECT_THROW(parse_shape(""), InputError);
  EXPECT_THROW(parse_shape("2,,3"), InputError);
  EXPECT_THROW(parse_shape("0x3"), InputError);
  EXPECT_THROW(parse_shape("a,b"), InputError);
}

TEST(RunBench, TwoByTwoFinishesAndIsDeterministic) {
  BenchConfig config;
  config.shapes = {FamilyShape({2, 2}), FamilyShape({2, 3})};
  config.repeats = 2;
  config.seed = 5;
  config.instances_dir = scratch_dir("bench");
  const auto rows = run_bench(config);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].terms_new, 9);
  EXPECT_EQ(rows[0].terms_old, 15);
  for (const auto& row : rows) {
    ASSERT_TRUE(row.t_old.has_value());
    ASSERT_TRUE(row.reliability_old.has_value());
    EXPECT_NEAR(row.reliability_new, *row.reliability_old, 1e-12);
    // Persisted instance reproduces the row.
    const auto spec = load_system(row.instance);
    EXPECT_EQ(reliability_simplified(spec).reliability, row.reliability_new);
  }

  const auto again = run_bench(config);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(again[i].reliability_new, rows[i].reliability_new);
    EXPECT_EQ(again[i].reliability_old, rows[i].reliability_old);
    EXPECT_EQ(again[i].terms_new, rows[i].terms_new);
    EXPECT_EQ(again[i].seed, rows[i].seed);
  }
}

TEST(RunBench, TimeoutIsData) {
  GeneratorConfig gen;
  gen.components = 16;
  const auto spec = generate_random_system(FamilyShape({4, 3, 2}), gen, 1);
  const auto row = bench_instance(spec, 1e-4);
  EXPECT_FALSE(row.t_old.has_value());
  EXPECT_EQ(row.terms_old, (BigInt(1) << 24) - 1);

  std::ostringstream csv;
  write_bench_csv(csv, {row});
  EXPECT_NE(csv.str().find(",timeout,"), std::string::npos);
}

TEST(WriteBenchCsv, FixedHeader) {
  std::ostringstream csv;
  write_bench_csv(csv, {});
  EXPECT_EQ(csv.str(),
            "shape,functions,implementations,components,connections,seed,t_new,t_old,terms_new,terms_old,"
            "reliability_new,reliability_old,instance\n");
}

}  // namespace
}  // namespace relcalc
