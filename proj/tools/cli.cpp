#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "relcalc/bench.hpp"
#include "relcalc/bounds.hpp"
#include "relcalc/combinatorics.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/evaluators.hpp"
#include "relcalc/generator.hpp"
#include "relcalc/system_io.hpp"

namespace relcalc::cli {
namespace {

std::string fmt(double value, int digits = 15) {
  std::ostringstream out;
  out << std::setprecision(digits) << value;
  return out.str();
}

std::string fmt_optional(const std::optional<double>& value) { return value ? fmt(*value) : std::string(); }

// Writes to `path` or, when it is empty, to `out`.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

FamilyShape shape_from_count_args(std::size_t n, const std::string& sizes) {
  FamilyShape parsed = parse_shape(sizes);
  if (parsed.n() == 1 && n != 1) return FamilyShape::uniform(n, parsed.size(0));
  if (parsed.n() != n) {
    throw InputError("expected " + std::to_string(n) + " implementation counts, got " + std::to_string(parsed.n()));
  }
  return parsed;
}

struct EvalArgs {
  std::string file;
  std::string method = "simplified";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::optional<double> timeout;
  std::optional<std::uint64_t> cap_terms;
  bool pretty = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const auto spec = load_system(a.file);
  require_valid(spec);
  EvaluationOptions options;
  options.limits = Limits::from_environment();
  options.threads = a.threads;
  if (a.timeout) options.time_budget = std::chrono::duration<double>(*a.timeout);
  const Method method = parse_method(a.method);
  if (a.cap_terms) {
    options.limits.simplified_terms = *a.cap_terms;
    // A cap of N terms admits classical expansions with 2^|W| - 1 <= N.
    unsigned width = 0;
    while (width < 62 && ((std::uint64_t{1} << (width + 1)) - 1) <= *a.cap_terms) ++width;
    options.limits.classical_width = width;
  }
  const auto report = evaluate(spec, method, options, a.samples, a.seed);
  const auto shape = spec.shape().label();
  if (a.pretty) {
    out << "system:          " << spec.name << "\n"
        << "method:          " << to_string(report.method) << "\n"
        << "shape:           " << shape << "\n"
        << "reliability:     " << fmt(report.reliability) << "\n";
    if (report.standard_error) out << "standard error:  " << fmt(*report.standard_error) << "\n";
    out << "term count:      " << report.term_count << "\n"
        << "distinct products: " << report.distinct_product_count << "\n"
        << "wall time [s]:   " << fmt(report.wall_time, 6) << "\n";
  } else {
    out << "method,shape,term_count,reliability,wall_time_seconds,standard_error\n"
        << to_string(report.method) << ",\"" << shape << "\"," << report.term_count << ','
        << fmt(report.reliability) << ',' << fmt(report.wall_time, 6) << ','
        << fmt_optional(report.standard_error) << '\n';
  }
  return kExitOk;
}

int cmd_count(std::size_t n, const std::string& sizes, bool pretty, std::ostream& out) {
  const auto shape = shape_from_count_args(n, sizes);
  const auto classical = count_terms_classical(shape);
  const auto simplified = count_terms_simplified(shape);
  if (pretty) {
    out << "shape:      " << shape.label() << "\n"
        << "classical:  " << classical << "\n"
        << "simplified: " << simplified << "\n";
  } else {
    out << "shape,classical_terms,simplified_terms\n"
        << '"' << shape.label() << "\"," << classical << ',' << simplified << '\n';
  }
  return kExitOk;
}

int cmd_bounds(const std::string& file, bool pretty, std::ostream& out) {
  const auto spec = load_system(file);
  const auto summary = dawson_sankoff_bound(pairwise_sums(spec));
  const double exact = reliability_simplified(spec).reliability;
  const bool valid = summary.bound_relaxed <= exact && summary.bound_full <= exact;
  if (pretty) {
    out << "system:              " << spec.name << "\n"
        << "s1:                  " << fmt(summary.s1) << "\n"
        << "s2:                  " << fmt(summary.s2) << "\n"
        << "theta:               " << fmt(summary.theta) << "\n"
        << "bound (full):        " << fmt(summary.bound_full) << "\n"
        << "bound (theta = 0):   " << fmt(summary.bound_relaxed) << "\n"
        << "exact reliability:   " << fmt(exact) << "\n"
        << "bound <= exact:      " << (valid ? "yes" : "no") << "\n";
    if (spec.claimed_reliability) out << "claimed reliability: " << fmt(*spec.claimed_reliability) << "\n";
    if (spec.claimed_lower_bound) out << "claimed lower bound: " << fmt(*spec.claimed_lower_bound) << "\n";
  } else {
    out << "system,s1,s2,theta,bound_full,bound_relaxed,exact,bound_le_exact,claimed_reliability,"
           "claimed_lower_bound\n"
        << '"' << spec.name << "\"," << fmt(summary.s1) << ',' << fmt(summary.s2) << ',' << fmt(summary.theta)
        << ',' << fmt(summary.bound_full) << ',' << fmt(summary.bound_relaxed) << ',' << fmt(exact) << ','
        << (valid ? "true" : "false") << ',' << fmt_optional(spec.claimed_reliability) << ','
        << fmt_optional(spec.claimed_lower_bound) << '\n';
  }
  return kExitOk;
}

struct GenArgs {
  std::string shape;
  std::size_t components = 10;
  double sharing = 0.3;
  std::uint64_t seed = 1;
  std::size_t min_size = 1;
  std::size_t max_size = 3;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  GeneratorConfig config;
  config.components = a.components;
  config.sharing = a.sharing;
  config.min_set_size = a.min_size;
  config.max_set_size = a.max_size;
  const auto spec = generate_random_system(parse_shape(a.shape), config, a.seed);
  emit(serialize_system(spec), a.out, out);
  return kExitOk;
}

int cmd_paths(const std::string& file, const std::string& out_path, std::ostream& out, std::ostream& err) {
  auto spec = load_system(file);
  if (!spec.network) throw InputError(file + " has no 'network' section");
  const auto& net = *spec.network;
  for (std::size_t i = 0; i < net.terminals.size(); ++i) {
    if (minimal_paths(net, i).empty()) {
      err << "warning: function " << i << ": sink '" << net.nodes[net.terminals[i].sink].label
          << "' unreachable from '" << net.nodes[net.terminals[i].source].label << "'\n";
    }
  }
  auto built = system_from_network(spec.name, spec.components, net);
  built.claimed_reliability = spec.claimed_reliability;
  built.claimed_lower_bound = spec.claimed_lower_bound;
  built.seed = spec.seed;
  require_valid(built);
  emit(serialize_system(built), out_path, out);
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::string> shapes;
  std::size_t repeats = 1;
  double timeout = 400.0;
  std::uint64_t seed = 1;
  std::optional<std::size_t> components;
  double sharing = 0.3;
  unsigned threads = 1;
  std::string out;
  std::string instances_dir;
  bool pretty = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig config;
  for (const auto& s : a.shapes) config.shapes.push_back(parse_shape(s));
  config.repeats = a.repeats;
  config.timeout_seconds = a.timeout;
  config.seed = a.seed;
  config.components = a.components;
  config.sharing = a.sharing;
  config.threads = a.threads;
  if (!a.instances_dir.empty()) {
    config.instances_dir = a.instances_dir;
  } else if (!a.out.empty()) {
    config.instances_dir = std::filesystem::path(a.out).replace_extension("").string() + "_instances";
  } else {
    config.instances_dir = "bench_instances";
  }
  const auto rows = run_bench(config);
  std::ostringstream text;
  if (a.pretty) {
    write_bench_pretty(text, rows);
  } else {
    write_bench_csv(text, rows);
  }
  emit(text.str(), a.out, out);
  return kExitOk;
}

struct SearchArgs {
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 1;
  std::size_t events = 3;
  std::size_t components = 5;
  double sharing = 0.5;
  std::string out_dir;
  std::size_t keep = 1;
};

int cmd_search(const SearchArgs& a, std::ostream& out) {
  NonmonotoneSearchConfig config;
  config.events = a.events;
  config.generator.components = a.components;
  config.generator.sharing = a.sharing;
  const auto witnesses = nonmonotonicity_search(config, a.trials, a.seed);
  out << "trial,exact_lower,exact_higher,bound_lower,bound_higher,lower_seed,higher_seed\n";
  for (const auto& w : witnesses) {
    out << w.trial << ',' << fmt(w.exact_lower) << ',' << fmt(w.exact_higher) << ',' << fmt(w.bound_lower) << ','
        << fmt(w.bound_higher) << ',' << w.lower.seed.value_or(0) << ',' << w.higher.seed.value_or(0) << '\n';
  }
  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    for (std::size_t i = 0; i < std::min(a.keep, witnesses.size()); ++i) {
      const auto& w = witnesses[i];
      const auto stem = std::filesystem::path(a.out_dir) / ("witness_trial" + std::to_string(w.trial));
      save_system(w.lower, stem.string() + "_lower.json");
      save_system(w.higher, stem.string() + "_higher.json");
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact reliability of systems with redundant, component-sharing implementations"};
  app.require_subcommand(1);

  bool pretty = false;
  auto add_format = [&](CLI::App* sub) {
    auto* group = sub->add_option_group("format");
    group->add_flag("--csv", [&](std::int64_t) { pretty = false; }, "CSV output (default)");
    group->add_flag("--pretty", pretty, "Aligned human-readable output");
  };

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Compute the reliability of a system file");
  eval_cmd->add_option("file", eval.file, "System file")->required();
  eval_cmd->add_option("--method", eval.method, "classical | simplified | monte-carlo")
      ->check(CLI::IsMember({"classical", "simplified", "monte-carlo"}));
  eval_cmd->add_option("--samples", eval.samples, "Monte Carlo samples");
  eval_cmd->add_option("--seed", eval.seed, "Monte Carlo seed");
  eval_cmd->add_option("--threads", eval.threads, "Worker threads for exact methods");
  eval_cmd->add_option("--timeout", eval.timeout, "Time budget in seconds");
  eval_cmd->add_option("--cap-terms", eval.cap_terms, "Refuse expansions with more terms");
  add_format(eval_cmd);

  std::size_t count_n = 0;
  std::string count_sizes;
  auto* count_cmd = app.add_subcommand("count", "Print both term-count predictors for a shape");
  count_cmd->add_option("functions", count_n, "Number of functions n")->required();
  count_cmd->add_option("implementations", count_sizes, "t_1,...,t_n or a single t for all")->required();
  add_format(count_cmd);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time both exact evaluators on seeded instances");
  bench_cmd->add_option("--shape", bench.shapes, "Shape such as 3x3 or 2,3 (repeatable)")->required();
  bench_cmd->add_option("--repeats", bench.repeats, "Instances per shape");
  bench_cmd->add_option("--timeout", bench.timeout, "Classical budget in seconds");
  bench_cmd->add_option("--seed", bench.seed, "Instance seed");
  bench_cmd->add_option("--components", bench.components, "Components per instance (default 4m)");
  bench_cmd->add_option("--sharing", bench.sharing, "Component reuse probability");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads");
  bench_cmd->add_option("--out", bench.out, "CSV output file");
  bench_cmd->add_option("--instances-dir", bench.instances_dir, "Where generated instances are saved");
  add_format(bench_cmd);

  std::string bounds_file;
  auto* bounds_cmd = app.add_subcommand("bounds", "Dawson-Sankoff bounds of a single-function system");
  bounds_cmd->add_option("file", bounds_file, "System file")->required();
  add_format(bounds_cmd);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random system file");
  gen_cmd->add_option("--shape", gen.shape, "Shape such as 3x3 or 2,3")->required();
  gen_cmd->add_option("--components,-z", gen.components, "Component count");
  gen_cmd->add_option("--sharing", gen.sharing, "Component reuse probability in [0,1]");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--min-size", gen.min_size, "Smallest implementation");
  gen_cmd->add_option("--max-size", gen.max_size, "Largest implementation");
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  std::string paths_file;
  std::string paths_out;
  auto* paths_cmd = app.add_subcommand("paths", "Derive implementations from a door network");
  paths_cmd->add_option("file", paths_file, "System file with a network section")->required();
  paths_cmd->add_option("--out", paths_out, "Output file (default stdout)");

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search-nonmonotone", "Find systems whose bound ordering inverts");
  search_cmd->add_option("--trials", search.trials, "Pairs to sample");
  search_cmd->add_option("--seed", search.seed, "Seed");
  search_cmd->add_option("--events", search.events, "Implementations per system");
  search_cmd->add_option("--components", search.components, "Components per system");
  search_cmd->add_option("--sharing", search.sharing, "Component reuse probability");
  search_cmd->add_option("--out-dir", search.out_dir, "Save witness systems here");
  search_cmd->add_option("--keep", search.keep, "Witness pairs to save");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*eval_cmd) {
      eval.pretty = pretty;
      return cmd_eval(eval, out);
    }
    if (*count_cmd) return cmd_count(count_n, count_sizes, pretty, out);
    if (*bench_cmd) {
      bench.pretty = pretty;
      return cmd_bench(bench, out);
    }
    if (*bounds_cmd) return cmd_bounds(bounds_file, pretty, out);
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*paths_cmd) return cmd_paths(paths_file, paths_out, out, err);
    if (*search_cmd) return cmd_search(search, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const TimeoutError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace relcalc::cli
