#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "suitegen/derivative.hpp"
#include "suitegen/engines.hpp"
#include "suitegen/evaluator.hpp"
#include "suitegen/genotype.hpp"
#include "suitegen/metadata.hpp"
#include "suitegen/minipy.hpp"
#include "suitegen/phenotype.hpp"

namespace suitegen::cli {

namespace fs = std::filesystem;

namespace {

/// Bad flags or bad input files.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Failure while running or writing results.
struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BackendOptions {
  std::string metadata;
  std::string source;
  std::string fitness = "statement";
  std::string backend = "builtin";
  std::string runner = "pytest";
  double bloat_tests = 10.0;
  double bloat_length = 30.0;
};

struct GenerateOptions {
  BackendOptions common;
  std::string algorithm = "ga";
  std::optional<std::uint64_t> seed;
  int generations = 200;
  int max_test_cases = 20;
  int max_actions = 20;
  int max_tries = 200;
  int max_restarts = 5;
  int population = 20;
  int tournament = 6;
  double crossover = 0.7;
  double mutation = 0.7;
  int exhaustion = 30;
  std::string out_genotype;
  std::string out_test;
  std::string stats;
};

struct EvaluateOptions {
  BackendOptions common;
  std::string genotype;
};

struct RenderOptions {
  std::string metadata;
  std::string genotype;
  std::string out;
};

struct BoundaryOptions {
  std::string metadata;
  std::string source;
  std::string method;
  std::string x;
  std::string y;
  std::vector<std::string> fixed;
  std::string out;
};

void add_backend_flags(CLI::App& cmd, BackendOptions& o) {
  cmd.add_option("--metadata", o.metadata, "UUT metadata JSON")->required();
  cmd.add_option("--source", o.source,
                 "UUT source for the builtin backend (default: <location>/<file>.py)");
  cmd.add_option("--fitness", o.fitness, "statement or branch")
      ->check(CLI::IsMember({"statement", "branch"}))
      ->capture_default_str();
  cmd.add_option("--backend", o.backend, "builtin or external")
      ->check(CLI::IsMember({"builtin", "external"}))
      ->capture_default_str();
  cmd.add_option("--runner", o.runner, "test runner for the external backend")
      ->capture_default_str();
  cmd.add_option("--bloat-tests", o.bloat_tests, "bloat divisor for the test count")
      ->capture_default_str();
  cmd.add_option("--bloat-length", o.bloat_length, "bloat divisor for the mean test length")
      ->capture_default_str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeError("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw RuntimeError("error writing " + path);
}

fs::path metadata_dir(const std::string& metadata_path) {
  fs::path dir = fs::path(metadata_path).parent_path();
  return dir.empty() ? fs::path(".") : dir;
}

fs::path default_source(const UutMetadata& meta, const std::string& metadata_path) {
  return resolve_uut_dir(meta, metadata_dir(metadata_path)) / (meta.file + ".py");
}

/// Everything needed to score suites for one UUT.
struct Backend {
  UutMetadata meta;
  FitnessConfig fitness;
  std::unique_ptr<minipy::Program> program;  // builtin only
  std::unique_ptr<CoverageEvaluator> evaluator;
};

minipy::Program load_source(const fs::path& source) {
  if (!fs::is_regular_file(source)) throw UsageError("UUT source not found: " + source.string());
  return minipy::load_program(source.string());
}

Backend make_backend(const BackendOptions& o) {
  Backend b;
  b.meta = load_metadata(o.metadata);
  b.fitness.kind = o.fitness == "branch" ? FitnessKind::BranchDistance : FitnessKind::Statement;
  b.fitness.num_tests_penalty = o.bloat_tests;
  b.fitness.length_test_penalty = o.bloat_length;
  if (o.backend == "external") {
    if (b.fitness.kind != FitnessKind::Statement) {
      throw UsageError("--backend external supports only --fitness statement");
    }
    if (!o.source.empty()) throw UsageError("--source applies only to the builtin backend");
    RunnerConfig runner;
    runner.runner = o.runner;
    runner.base_dir = metadata_dir(o.metadata);
    b.evaluator = std::make_unique<ExternalEvaluator>(b.meta, runner, b.fitness);
  } else {
    const fs::path source = o.source.empty() ? default_source(b.meta, o.metadata) : fs::path(o.source);
    b.program = std::make_unique<minipy::Program>(load_source(source));
    b.evaluator = std::make_unique<BuiltinEvaluator>(*b.program, b.meta, b.fitness);
  }
  return b;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
  if (seed) return *seed;
  if (const char* ci = std::getenv("CI"); ci && *ci) {
    throw UsageError("--seed is required when CI is set");
  }
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  const auto value =
      static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(now).count());
  err << "seed: " << value << "\n";
  return value;
}

int cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream& err) {
  GenerationLimits limits{o.max_test_cases, o.max_actions};
  try {
    validate_limits(limits);
  } catch (const GenotypeError& e) {
    throw UsageError(e.what());
  }

  HillClimberConfig hc;
  GeneticConfig ga;
  if (o.algorithm == "hill") {
    hc.max_gen = o.generations;
    hc.max_tries = o.max_tries;
    hc.max_restarts = o.max_restarts;
    hc.limits = limits;
    validate(hc);
  } else {
    ga.max_gen = o.generations;
    ga.population_size = o.population;
    ga.tournament_size = o.tournament;
    ga.crossover_probability = o.crossover;
    ga.mutation_probability = o.mutation;
    ga.exhaustion = o.exhaustion;
    ga.limits = limits;
    validate(ga);
  }

  Backend backend = make_backend(o.common);
  const std::uint64_t seed = resolve_seed(o.seed, err);
  hc.seed = ga.seed = seed;

  const SearchResult result = o.algorithm == "hill"
                                  ? hill_climb(hc, backend.meta, *backend.evaluator)
                                  : genetic_algorithm(ga, backend.meta, *backend.evaluator);

  if (!o.out_genotype.empty()) write_text(o.out_genotype, encode_suite(result.best));
  if (!o.out_test.empty()) write_text(o.out_test, render_suite(result.best, backend.meta));
  if (!o.stats.empty()) write_text(o.stats, stats_csv(result.stats));

  out << "fitness: " << format_number(*result.best.fitness) << "\n";
  out << "initial_fitness: " << format_number(result.initial_fitness) << "\n";
  out << "generations: " << result.generations_run << "\n";
  if (o.algorithm == "hill") out << "restarts: " << result.restarts_used << "\n";
  out << "tests: " << result.best.tests.size() << "\n";
  out << "mean_actions: " << format_number(result.best.mean_actions()) << "\n";
  if (o.out_genotype.empty() && o.out_test.empty()) out << encode_suite(result.best);
  return kOk;
}

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
  Backend backend = make_backend(o.common);
  TestSuite suite = load_suite(o.genotype, backend.meta);
  const CoverageReport report = backend.evaluator->measure(suite);
  const double fitness = calculate_fitness(suite, report, backend.fitness);

  out << "fitness: " << format_number(fitness) << "\n";
  out << "statement_coverage: ";
  if (report.executable_lines.empty()) {
    out << "n/a\n";
  } else {
    out << format_number(report.statement_percent()) << " (" << report.covered_lines.size() << "/"
        << report.executable_lines.size() << " lines)\n";
  }
  out << "bloat_penalty: " << format_number(bloat_penalty(suite, backend.fitness)) << "\n";
  if (!report.goals.empty()) {
    out << "branch_goals:\n";
    for (const auto& [goal, rec] : report.goals) {
      out << "  predicate " << goal.predicate_id << " " << (goal.desired_outcome ? "True" : "False")
          << ": " << format_number(goal_distance(goal, report)) << "\n";
    }
  }
  return kOk;
}

int cmd_render(const RenderOptions& o, std::ostream& out) {
  const UutMetadata meta = load_metadata(o.metadata);
  const TestSuite suite = load_suite(o.genotype, meta);
  const std::string text = render_suite(suite, meta);
  if (o.out.empty()) {
    out << text;
  } else {
    write_text(o.out, text);
  }
  return kOk;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError(what + ": not an integer: \"" + text + "\"");
  return value;
}

// name=first:last[:step]
ScanAxis parse_axis(const std::string& text, const std::string& flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError(flag + " expects name=first:last[:step], got \"" + text + "\"");
  }
  ScanAxis axis;
  axis.parameter = text.substr(0, eq);
  std::vector<std::string> parts;
  std::stringstream range(text.substr(eq + 1));
  for (std::string part; std::getline(range, part, ':');) parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3) {
    throw UsageError(flag + " expects name=first:last[:step], got \"" + text + "\"");
  }
  axis.first = parse_int(parts[0], flag);
  axis.last = parse_int(parts[1], flag);
  if (parts.size() == 3) axis.step = parse_int(parts[2], flag);
  return axis;
}

int cmd_boundary(const BoundaryOptions& o, std::ostream& out) {
  BoundaryScanSpec spec;
  spec.method = o.method;
  spec.x = parse_axis(o.x, "--x");
  spec.y = parse_axis(o.y, "--y");
  for (const auto& item : o.fixed) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--fixed expects name=value, got \"" + item + "\"");
    }
    spec.fixed[item.substr(0, eq)] = parse_int(item.substr(eq + 1), "--fixed");
  }
  // Fail on degenerate axes before touching any file.
  spec.x.values();
  spec.y.values();

  fs::path source = o.source;
  if (source.empty()) {
    if (o.metadata.empty()) throw UsageError("boundary needs --source or --metadata");
    source = default_source(load_metadata(o.metadata), o.metadata);
  }
  const minipy::Program program = load_source(source);
  const std::string csv = scan_csv(boundary_scan(program, spec));
  if (o.out.empty()) {
    out << csv;
  } else {
    write_text(o.out, csv);
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Search-based unit test generation for small Python classes", "suitegen"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Evolve a test suite");
  add_backend_flags(*generate, gen.common);
  generate->add_option("--algorithm", gen.algorithm, "hill or ga")
      ->check(CLI::IsMember({"hill", "ga"}))
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "random seed (time-derived when absent)");
  generate->add_option("--generations", gen.generations, "maximum generations")
      ->capture_default_str();
  generate->add_option("--max-test-cases", gen.max_test_cases, "tests per random suite")
      ->capture_default_str();
  generate->add_option("--max-actions", gen.max_actions, "actions per random test")
      ->capture_default_str();
  generate->add_option("--max-tries", gen.max_tries, "hill climber tries per generation")
      ->capture_default_str();
  generate->add_option("--max-restarts", gen.max_restarts, "hill climber restarts")
      ->capture_default_str();
  generate->add_option("--population", gen.population, "GA population size (even)")
      ->capture_default_str();
  generate->add_option("--tournament", gen.tournament, "GA tournament size")
      ->capture_default_str();
  generate->add_option("--crossover", gen.crossover, "GA crossover probability")
      ->capture_default_str();
  generate->add_option("--mutation", gen.mutation, "GA mutation probability")
      ->capture_default_str();
  generate->add_option("--exhaustion", gen.exhaustion, "GA stagnation limit")
      ->capture_default_str();
  generate->add_option("--out-genotype", gen.out_genotype, "write the best suite as JSON");
  generate->add_option("--out-test", gen.out_test, "write the best suite as a pytest file");
  generate->add_option("--stats", gen.stats, "write per-generation statistics CSV");

  EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "Score an existing genotype");
  add_backend_flags(*evaluate, eval.common);
  evaluate->add_option("--genotype", eval.genotype, "genotype JSON")->required();

  RenderOptions ren;
  auto* render = app.add_subcommand("render", "Render a genotype as a pytest file");
  render->add_option("--metadata", ren.metadata, "UUT metadata JSON")->required();
  render->add_option("--genotype", ren.genotype, "genotype JSON")->required();
  render->add_option("--out", ren.out, "output file (default: stdout)");

  BoundaryOptions bnd;
  auto* boundary = app.add_subcommand("boundary", "Program-derivative grid scan");
  boundary->add_option("--metadata", bnd.metadata, "metadata used to locate the source");
  boundary->add_option("--source", bnd.source, "UUT source file");
  boundary->add_option("--method", bnd.method, "method to call after construction")->required();
  boundary->add_option("--x", bnd.x, "x axis: name=first:last[:step]")->required();
  boundary->add_option("--y", bnd.y, "y axis: name=first:last[:step]")->required();
  boundary->add_option("--fixed", bnd.fixed, "fixed input: name=value (repeatable)");
  boundary->add_option("--out", bnd.out, "output CSV (default: stdout)");

  std::vector<std::string> argv_storage{"suitegen"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*generate) return cmd_generate(gen, out, err);
    if (*evaluate) return cmd_evaluate(eval, out);
    if (*render) return cmd_render(ren, out);
    return cmd_boundary(bnd, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ScanError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const MetadataError& e) {
    err << "metadata error: " << e.what() << "\n";
    return kUsageError;
  } catch (const GenotypeError& e) {
    err << "genotype error: " << e.what() << "\n";
    return kUsageError;
  } catch (const minipy::ParseError& e) {
    err << "source error: " << e.what() << "\n";
    return kUsageError;
  } catch (const minipy::ConfigurationError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kUsageError;
  } catch (const FitnessError& e) {
    err << "fitness error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ExternalRunnerError& e) {
    err << "backend error: " << e.what() << "\n";
    return kRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace suitegen::cli
