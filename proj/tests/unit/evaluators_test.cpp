#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/evaluators.hpp"
#include "relcalc/generator.hpp"

namespace relcalc {
namespace {

using testing::load_fixture;

SystemSpec single_function(std::vector<double> a, std::vector<ComponentSet> impls) {
  SystemSpec spec;
  for (std::size_t c = 0; c < a.size(); ++c) spec.components.push_back({static_cast<ComponentId>(c), a[c], ""});
  std::vector<Implementation> family;
  for (std::size_t j = 0; j < impls.size(); ++j) family.push_back({0, j, "", impls[j]});
  spec.functions.push_back(family);
  return spec;
}

SystemSpec keep_function(const SystemSpec& spec, std::size_t i) {
  SystemSpec out = spec;
  out.functions = {spec.functions[i]};
  for (auto& impl : out.functions[0]) impl.function_index = 0;
  return out;
}

TEST(ReliabilitySimplified, T1) {
  const auto report = reliability_simplified(load_fixture("t1.json"));
  EXPECT_NEAR(report.reliability, 0.2668, 1e-12);
  EXPECT_EQ(report.term_count, 7);
  EXPECT_EQ(report.method, Method::kSimplified);
  // Unions: A, B, C, A+B, B+C and all five components (A+C, A+B+C).
  EXPECT_EQ(report.distinct_product_count, 6u);
}

TEST(ReliabilityClassical, T1) {
  const auto report = reliability_classical(load_fixture("t1.json"));
  EXPECT_NEAR(report.reliability, 0.2668, 1e-12);
  EXPECT_EQ(report.term_count, 7);
}

TEST(Evaluators, TrivialSystems) {
  const auto single = load_fixture("single_event.json");
  EXPECT_DOUBLE_EQ(reliability_simplified(single).reliability, 0.5);
  EXPECT_DOUBLE_EQ(reliability_classical(single).reliability, 0.5);

  const double p = 0.3;
  const double q = 0.8;
  const auto two = single_function({p, q}, {ComponentSet{0}, ComponentSet{1}});
  EXPECT_NEAR(reliability_classical(two).reliability, p + q - p * q, 1e-15);
  EXPECT_NEAR(reliability_simplified(two).reliability, p + q - p * q, 1e-15);
}

TEST(Evaluators, AgreeWithEachOtherAndStateEnumeration) {
  GeneratorConfig config;
  config.components = 10;
  config.sharing = 0.4;
  const std::vector<std::vector<std::size_t>> shapes{{3}, {2, 2}, {3, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {1, 3, 2}, {3, 2, 2}};
  for (const auto& sizes : shapes) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto spec = generate_random_system(FamilyShape(sizes), config, seed);
      const double simplified = reliability_simplified(spec).reliability;
      const double classical = reliability_classical(spec).reliability;
      EXPECT_NEAR(simplified, classical, 1e-9) << FamilyShape(sizes).label() << " seed " << seed;
      EXPECT_NEAR(simplified, testing::state_enumeration_reliability(spec), 1e-9);
    }
  }
}

TEST(TermStream, CountsOnTwoByTwo) {
  GeneratorConfig config;
  config.components = 8;
  const auto spec = generate_random_system(FamilyShape({2, 2}), config, 3);
  std::size_t simplified = 0;
  std::size_t classical = 0;
  term_stream(spec, Method::kSimplified, [&](const TermEvent&) { ++simplified; });
  term_stream(spec, Method::kClassical, [&](const TermEvent&) { ++classical; });
  EXPECT_EQ(simplified, 9u);
  EXPECT_EQ(classical, 15u);
  EXPECT_THROW(term_stream(spec, Method::kMonteCarlo, [](const TermEvent&) {}), InputError);
}

TEST(TermStream, AggregatedTermsReproduceReliability) {
  GeneratorConfig config;
  config.components = 9;
  config.sharing = 0.5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto spec = generate_random_system(FamilyShape({2, 3}), config, seed);
    const auto rel = spec.reliabilities();
    for (Method m : {Method::kSimplified, Method::kClassical}) {
      const auto terms = aggregate_terms(spec, m);
      for (const auto& [mask, coefficient] : terms) EXPECT_NE(coefficient, 0);
      EXPECT_NEAR(evaluate_terms(terms, rel), reliability_simplified(spec).reliability, 1e-12);
    }
  }
}

TEST(TermStream, CoefficientCollapse) {
  GeneratorConfig config;
  config.components = 10;
  for (double sharing : {0.0, 0.6}) {
    config.sharing = sharing;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto spec = generate_random_system(FamilyShape({2, 2, 3}), config, seed);
      EXPECT_EQ(aggregate_terms(spec, Method::kClassical), aggregate_terms(spec, Method::kSimplified));
    }
  }
}

TEST(Evaluators, BitIdenticalAcrossThreadCounts) {
  GeneratorConfig config;
  config.components = 20;
  config.sharing = 0.3;
  const auto spec = generate_random_system(FamilyShape({3, 3, 3}), config, 17);
  EvaluationOptions options;
  const double reference = reliability_simplified(spec, options).reliability;
  for (unsigned threads : {2U, 3U, 8U}) {
    options.threads = threads;
    EXPECT_EQ(reliability_simplified(spec, options).reliability, reference);
  }

  const auto classical_spec = generate_random_system(FamilyShape({3, 2, 3}), config, 4);
  EvaluationOptions copts;
  const auto base = reliability_classical(classical_spec, copts);
  for (unsigned threads : {2U, 5U}) {
    copts.threads = threads;
    const auto report = reliability_classical(classical_spec, copts);
    EXPECT_EQ(report.reliability, base.reliability);
    EXPECT_EQ(report.distinct_product_count, base.distinct_product_count);
  }
}

TEST(Evaluators, MonotoneInComponentReliability) {
  GeneratorConfig config;
  config.components = 8;
  config.sharing = 0.5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto spec = generate_random_system(FamilyShape({2, 3}), config, seed);
    double previous = reliability_simplified(spec).reliability;
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
      spec.components[c].reliability = std::min(0.99, spec.components[c].reliability + 0.03);
      const double now = reliability_simplified(spec).reliability;
      EXPECT_GE(now, previous - 1e-12);
      previous = now;
    }
  }
}

TEST(Evaluators, SandwichedBySingleFunctionUnions) {
  GeneratorConfig config;
  config.components = 24;  // room for 7 sets of up to 3 without reuse
  for (double sharing : {0.0, 0.5}) {
    config.sharing = sharing;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto spec = generate_random_system(FamilyShape({2, 3, 2}), config, seed);
      const double r = reliability_simplified(spec).reliability;
      double min_union = 1.0;
      double product = 1.0;
      for (std::size_t i = 0; i < spec.functions.size(); ++i) {
        const double u = reliability_simplified(keep_function(spec, i)).reliability;
        min_union = std::min(min_union, u);
        product *= u;
      }
      EXPECT_LE(r, min_union + 1e-12);
      EXPECT_GE(r, 0.0);
      if (sharing == 0.0) {
        // disjoint functions are independent
        ComponentSet seen;
        for (const auto& family : spec.functions) {
          ComponentSet used;
          for (const auto& impl : family) used |= impl.components;
          ASSERT_TRUE((seen & used).empty());
          seen |= used;
        }
        EXPECT_NEAR(r, product, 1e-12);
      }
    }
  }
}

TEST(Evaluators, CapsAndBudgets) {
  GeneratorConfig config;
  config.components = 20;
  const auto big = generate_random_system(FamilyShape({5, 5}), config, 1);  // |W| = 25
  EXPECT_THROW(reliability_classical(big), CapExceeded);

  EvaluationOptions tight;
  tight.limits.simplified_terms = 100;
  EXPECT_THROW(reliability_simplified(big, tight), CapExceeded);  // 31^2 terms

  const auto wide = generate_random_system(FamilyShape({4, 3, 2}), config, 1);  // |W| = 24
  EvaluationOptions budget;
  budget.time_budget = std::chrono::duration<double>(1e-4);
  EXPECT_THROW(reliability_classical(wide, budget), TimeoutError);

  auto invalid = load_fixture("t2.json");
  EXPECT_THROW(reliability_simplified(invalid), InputError);
}

TEST(MonteCarlo, T1WithinThreeSigma) {
  const auto t1 = load_fixture("t1.json");
  const auto report = reliability_monte_carlo(t1, 1'000'000, 7);
  ASSERT_TRUE(report.standard_error.has_value());
  EXPECT_LE(std::abs(report.reliability - 0.2668), 3.0 * *report.standard_error);
  EXPECT_EQ(report.reliability, reliability_monte_carlo(t1, 1'000'000, 7).reliability);
}

TEST(MonteCarlo, SharedSingleComponent) {
  SystemSpec spec;
  spec.components = {{0, 0.37, ""}};
  spec.functions = {{{0, 0, "", ComponentSet{0}}}, {{1, 0, "", ComponentSet{0}}}, {{2, 0, "", ComponentSet{0}}}};
  const auto report = reliability_monte_carlo(spec, 200'000, 3);
  EXPECT_NEAR(report.reliability, 0.37, 4.0 * *report.standard_error);
  EXPECT_NEAR(reliability_simplified(spec).reliability, 0.37, 1e-15);
}

TEST(MonteCarlo, AgreesWithExactOnRandomSystems) {
  GeneratorConfig config;
  config.components = 8;
  config.sharing = 0.4;
  int inside = 0;
  const int trials = 100;
  for (int seed = 0; seed < trials; ++seed) {
    const auto spec = generate_random_system(FamilyShape({2, 2}), config, static_cast<std::uint64_t>(seed));
    const auto mc = reliability_monte_carlo(spec, 20'000, static_cast<std::uint64_t>(1000 + seed));
    const double exact = reliability_simplified(spec).reliability;
    if (std::abs(mc.reliability - exact) <= 4.0 * *mc.standard_error) ++inside;
  }
  EXPECT_GE(inside, 99);
  EXPECT_THROW(reliability_monte_carlo(load_fixture("t1.json"), 0, 1), InputError);
}

TEST(Method, ParseAndPrint) {
  for (Method m : {Method::kClassical, Method::kSimplified, Method::kMonteCarlo}) {
    EXPECT_EQ(parse_method(to_string(m)), m);
  }
  EXPECT_THROW(parse_method("bdd"), InputError);
}

}  // namespace
}  // namespace relcalc
