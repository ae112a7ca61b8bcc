#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "io.hpp"
#include "polar/errors.hpp"
#include "polar/explorer.hpp"
#include "polar/instances.hpp"
#include "polar/oracle.hpp"
#include "polar/random.hpp"
#include "polar/spectrum.hpp"
#include "polar/witness.hpp"

namespace polar::cli {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void emit(const std::string& output_path,
          const std::function<void(std::ostream&)>& body) {
  if (output_path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream out(output_path);
  if (!out) {
    throw InvalidArgument("cannot open output file '" + output_path + "'");
  }
  body(out);
}

struct CommonOptions {
  std::string instance_path;
  std::string output;
};

struct OracleOptions {
  int starts = 32;
  std::uint64_t seed = 0;
  int threads = 1;
};

void add_oracle_flags(CLI::App* sub, OracleOptions* o) {
  sub->add_option("--starts", o->starts, "random starts for the oracle");
  sub->add_option("--seed", o->seed, "seed for the oracle starts");
  sub->add_option("--threads", o->threads,
                  "worker threads (results match the sequential run)");
}

int run_bounds(const CommonOptions& opt) {
  const InstanceFile f = read_instance_file(opt.instance_path);
  const VectorSystem sys = to_system(f);
  Stopwatch timer;
  Report r;
  r.command = "bounds";
  r.instance = f;
  r.bounds = bounds_report(sys);
  r.timing_seconds = timer.seconds();
  emit(opt.output, [&](std::ostream& out) { write_report(out, r); });
  if (r.bounds->marcus.log_value ==
      -std::numeric_limits<double>::infinity()) {
    std::cerr << "degenerate system: eigenvalue bounds are -inf\n";
    return kExitDegenerate;
  }
  return kExitOk;
}

int run_witness(const CommonOptions& opt, const OracleOptions& oracle_opt,
                bool verify, bool trace) {
  const InstanceFile f = read_instance_file(opt.instance_path);
  const VectorSystem sys = to_system(f);
  Stopwatch timer;
  Report r;
  r.command = "witness";
  r.instance = f;
  r.bounds = bounds_report(sys);
  r.witness = find_witness(sys);
  r.include_trace = trace;
  if (verify) {
    r.verification = verify_witness(sys, *r.witness);
    OracleConfig cfg;
    cfg.starts = oracle_opt.starts;
    cfg.seed = oracle_opt.seed;
    cfg.threads = oracle_opt.threads;
    r.oracle = sup_product(sys, cfg);
    r.oracle_seed = oracle_opt.seed;
  }
  r.timing_seconds = timer.seconds();
  emit(opt.output, [&](std::ostream& out) { write_report(out, r); });
  if (verify) {
    if (!r.verification->pass) {
      throw NumericalFailure("witness re-verification failed");
    }
    const double w = r.witness->log_product;
    if (!(r.witness->log_bound <= w + 1e-6) ||
        !(w <= r.oracle->log_value + 1e-6)) {
      throw NumericalFailure(
          "sandwich violated: geometric bound <= witness <= oracle");
    }
  }
  return kExitOk;
}

int run_oracle(const CommonOptions& opt, const OracleOptions& oracle_opt) {
  const InstanceFile f = read_instance_file(opt.instance_path);
  const VectorSystem sys = to_system(f);
  if (gram_spectrum(sys).rank_deficient) {
    std::cerr << "warning: system is rank deficient; the factor product "
                 "vanishes on a dense set of directions\n";
  }
  Stopwatch timer;
  Report r;
  r.command = "oracle";
  r.instance = f;
  OracleConfig cfg;
  cfg.starts = oracle_opt.starts;
  cfg.seed = oracle_opt.seed;
  cfg.threads = oracle_opt.threads;
  r.oracle = sup_product(sys, cfg);
  r.oracle_seed = oracle_opt.seed;
  r.timing_seconds = timer.seconds();
  emit(opt.output, [&](std::ostream& out) { write_report(out, r); });
  return kExitOk;
}

int run_explore(int n, long budget, std::uint64_t seed, int threads,
                const std::string& output) {
  Stopwatch timer;
  Report r;
  r.command = "explore";
  r.explorer = explore(n, budget, seed, threads);
  r.timing_seconds = timer.seconds();
  emit(output, [&](std::ostream& out) { write_report(out, r); });
  if (r.explorer->anomaly) {
    std::cerr << "ANOMALY: normalized value "
              << json_number(r.explorer->normalized_value)
              << " fell below 1 - 1e-4 after re-verification; this would "
                 "contradict the conjectured extremal value\n";
    return kExitAnomaly;
  }
  return kExitOk;
}

int run_gen(int n, std::uint64_t seed, const std::string& kind,
            const std::string& output) {
  InstanceFile f;
  f.n = n;
  f.label = kind;
  f.seed = seed;
  if (kind == "random") {
    Rng rng(seed);
    f.vectors = random_system(n, rng).matrix();
  } else if (kind == "orthonormal") {
    f.vectors = Eigen::MatrixXd::Identity(n, n);
  } else if (kind.rfind("angle:", 0) == 0) {
    if (n != 2) {
      throw InvalidConfig("--kind angle:<theta> requires --n 2");
    }
    const std::string text = kind.substr(6);
    double theta = 0.0;
    std::size_t pos = 0;
    try {
      theta = std::stod(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != text.size() || text.empty()) {
      throw InvalidConfig("cannot parse angle '" + text + "'");
    }
    f.vectors = angle_system(theta).matrix();
  } else {
    throw InvalidConfig("unknown kind '" + kind +
                        "' (expected random, orthonormal, or angle:<theta>)");
  }
  emit(output, [&](std::ostream& out) { write_instance(out, f); });
  return kExitOk;
}

int run_slice_demo(int dim, std::uint64_t seed, const std::string& output) {
  if (dim < 2 || dim > 64) {
    throw InvalidConfig("slice-demo supports 2 <= dim <= 64");
  }
  Rng rng(seed);
  const Ellipsoid e = random_ellipsoid(dim, 100.0, rng);
  const double v = volume_factor(e);
  const auto central = slice(e, e.center()(dim - 1));
  if (!central) {
    throw NumericalFailure("central slice unexpectedly empty");
  }
  const double s = volume_factor(*central);

  emit(output, [&](std::ostream& out) {
    char line[160];
    out << "slice consistency for a seeded random ellipsoid\n";
    std::snprintf(line, sizeof(line),
                  "dim = %d  seed = %llu  V = %.12g  S = %.12g  V/S = %.12g\n",
                  dim, static_cast<unsigned long long>(seed), v, s, v / s);
    out << line;
    out << "      h/(V/S)              h        formula         sliced"
           "        rel_err\n";
    const double ratios[] = {-1.25, -1.0, -0.99, -0.9, -0.5, 0.0,
                             0.25,  0.5,  0.75,  0.9,  0.99, 1.25};
    for (const double ratio : ratios) {
      const double h = ratio * (v / s);
      const double predicted = slice_volume_formula(v, s, h, dim);
      const auto cut = slice(e, e.center()(dim - 1) + h);
      const double measured = cut ? volume_factor(*cut) : 0.0;
      const double scale = std::max(std::abs(predicted), std::abs(measured));
      const double rel =
          scale > 0.0 ? std::abs(predicted - measured) / scale : 0.0;
      std::snprintf(line, sizeof(line),
                    "%12.4f %14.6e %14.6e %14.6e %14.6e\n", ratio, h,
                    predicted, measured, rel);
      out << line;
    }
  });
  return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{
      "eigenvalue lower bounds, constructive witness vectors, and "
      "optimization oracles for products of linear functionals on the "
      "sphere"};
  app.require_subcommand(1);

  CommonOptions bounds_opt;
  auto* bounds_cmd =
      app.add_subcommand("bounds", "eigenvalue bounds for an instance");
  bounds_cmd->add_option("instance", bounds_opt.instance_path, "instance file")
      ->required();
  bounds_cmd->add_option("--output", bounds_opt.output, "report path");

  CommonOptions witness_opt;
  OracleOptions witness_oracle;
  bool verify = false;
  bool trace = false;
  auto* witness_cmd = app.add_subcommand(
      "witness", "construct a unit vector certifying the geometric bound");
  witness_cmd
      ->add_option("instance", witness_opt.instance_path, "instance file")
      ->required();
  witness_cmd->add_option("--output", witness_opt.output, "report path");
  witness_cmd->add_flag("--verify", verify,
                        "re-verify the witness and run the oracle sandwich");
  witness_cmd->add_flag("--trace", trace, "include per-level descent records");
  add_oracle_flags(witness_cmd, &witness_oracle);

  CommonOptions oracle_opt;
  OracleOptions oracle_oracle;
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "multistart gradient estimate of the supremum");
  oracle_cmd->add_option("instance", oracle_opt.instance_path, "instance file")
      ->required();
  oracle_cmd->add_option("--output", oracle_opt.output, "report path");
  add_oracle_flags(oracle_cmd, &oracle_oracle);

  int explore_n = 0;
  long explore_budget = 2000;
  std::uint64_t explore_seed = 0;
  int explore_threads = 1;
  std::string explore_output;
  auto* explore_cmd = app.add_subcommand(
      "explore", "search configurations for small normalized values");
  explore_cmd->add_option("--n", explore_n, "dimension (2..8)")->required();
  explore_cmd->add_option("--budget", explore_budget, "perturbation steps");
  explore_cmd->add_option("--seed", explore_seed, "search seed");
  explore_cmd->add_option("--threads", explore_threads, "worker threads");
  explore_cmd->add_option("--output", explore_output, "report path");

  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_kind = "random";
  std::string gen_output;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  gen_cmd->add_option("--n", gen_n, "dimension")->required();
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("--kind", gen_kind,
                      "random | orthonormal | angle:<theta>");
  gen_cmd->add_option("--output", gen_output, "instance path");

  int demo_dim = 4;
  std::uint64_t demo_seed = 0;
  std::string demo_output;
  auto* demo_cmd = app.add_subcommand(
      "slice-demo", "print a slice-volume consistency table");
  demo_cmd->add_option("--dim", demo_dim, "ellipsoid dimension");
  demo_cmd->add_option("--seed", demo_seed, "ellipsoid seed");
  demo_cmd->add_option("--output", demo_output, "table path");

  int rc = kExitOk;
  bounds_cmd->callback([&] { rc = run_bounds(bounds_opt); });
  witness_cmd->callback(
      [&] { rc = run_witness(witness_opt, witness_oracle, verify, trace); });
  oracle_cmd->callback([&] { rc = run_oracle(oracle_opt, oracle_oracle); });
  explore_cmd->callback([&] {
    rc = run_explore(explore_n, explore_budget, explore_seed, explore_threads,
                     explore_output);
  });
  gen_cmd->callback([&] { rc = run_gen(gen_n, gen_seed, gen_kind, gen_output); });
  demo_cmd->callback([&] { rc = run_slice_demo(demo_dim, demo_seed, demo_output); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const WrongDimension& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DegenerateSystem& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const DegenerateTransform& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace polar::cli
