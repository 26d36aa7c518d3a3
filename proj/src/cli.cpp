#include "oct/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "oct/bench.hpp"
#include "oct/closure.hpp"
#include "oct/codbm.hpp"
#include "oct/dbm.hpp"
#include "oct/errors.hpp"
#include "oct/gen.hpp"
#include "oct/incremental.hpp"
#include "oct/text.hpp"
#include "oct/traversal.hpp"

namespace oct {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnsat = 2;
constexpr int kExitVerification = 3;

NumericMode parse_mode(const std::string& s) {
  if (s == "rat") return NumericMode::ExactRational;
  if (s == "int") return NumericMode::CheckedInt;
  if (s == "f64") return NumericMode::BinaryFloat64;
  throw PreconditionError("unknown mode: " + s);
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot open output file: " + path);
  f << text;
}

struct CloseOpts {
  std::string input;
  std::string algo = "strong";
  std::string mode = "rat";
  std::string backend = "dense";
  std::string out_path;
};

struct IncrOpts {
  std::string input;
  std::string constraint;
  std::string algo = "incr";
  bool in_place = false;
  std::string order = "rowmajor";
  bool count_mins = false;
  std::string mode = "rat";
  std::string backend = "dense";
  std::string out_path;
};

struct CheckOpts {
  std::string input;
  std::string mode = "rat";
};

struct GenOpts {
  std::size_t vars = 2;
  std::size_t constraints = 4;
  std::uint64_t seed = 42;
  std::uint64_t trial = 0;
  std::int64_t magnitude = 10;
  double unary_frac = 0.5;
};

struct BenchOpts {
  std::size_t vars = 4;
  std::size_t constraints = 8;
  std::size_t trials = 10;
  std::uint64_t seed = 42;
  std::int64_t magnitude = 10;
  double unary_frac = 0.5;
  std::string algos;  // comma separated; empty = mode default
  std::string mode = "rat";
  std::string backend = "dense";
  std::string csv_path;
};

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    std::string item = s.substr(start, comma == std::string::npos ? s.size() - start
                                                                  : comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// --order value: "rowmajor" or "random:<seed>"
struct OrderSpec {
  bool random = false;
  std::uint64_t seed = 0;
};

OrderSpec parse_order(const std::string& s) {
  if (s == "rowmajor") return {false, 0};
  if (s.rfind("random:", 0) == 0) {
    OrderSpec spec{true, 0};
    std::string tail = s.substr(7);
    try {
      spec.seed = std::stoull(tail);
    } catch (...) {
      throw PreconditionError("bad traversal seed: " + tail);
    }
    return spec;
  }
  throw PreconditionError("unknown order (use rowmajor or random:<seed>): " + s);
}

template <class M>
int do_close(const CloseOpts& opts, std::ostream& out, std::ostream& err) {
  auto sys = parse_system<M>(read_input(opts.input));
  Dbm<M> base = from_constraints<M>(sys.n, sys.constraints);

  ClosureOutcome<M> res = ClosureOutcome<M>::unsat();
  if (opts.backend == "codbm") {
    CoAlgo alg = opts.algo == "fw"       ? CoAlgo::Closure
                 : opts.algo == "strong" ? CoAlgo::StrongClosure
                                         : CoAlgo::TightClosure;
    CoOutcome<M> co = run_over<M>(CoDbm<M>::from_dense(base), alg);
    res = co.is_unsat() ? ClosureOutcome<M>::unsat()
                        : ClosureOutcome<M>::closed(co.codbm().to_dense());
  } else if (opts.algo == "fw") {
    res = check_consistent(floyd_warshall(base));
  } else if (opts.algo == "strong") {
    res = strong_closure(base);
  } else {  // tight; mode validated by the caller
    if constexpr (M::id == NumericMode::CheckedInt) res = tight_closure(base);
  }

  if (res.is_unsat()) {
    out << "UNSAT\n";
    return kExitUnsat;
  }
  write_output(opts.out_path, dump_csv<M>(res.dbm()), out);
  (void)err;
  return kExitOk;
}

template <class M>
int do_incr(const IncrOpts& opts, std::ostream& out, std::ostream& err) {
  auto sys = parse_system<M>(read_input(opts.input));
  Dbm<M> raw = from_constraints<M>(sys.n, sys.constraints);

  // The base must close successfully before the increment is applied.
  ClosureOutcome<M> base = ClosureOutcome<M>::unsat();
  detail::BaseKind kind = detail::base_kind_for(opts.algo);
  if (kind == detail::BaseKind::Plain) {
    base = check_consistent(floyd_warshall(raw));
  } else if (kind == detail::BaseKind::Strong) {
    base = strong_closure(raw);
  } else {
    if constexpr (M::id == NumericMode::CheckedInt) base = tight_closure(raw);
  }
  if (base.is_unsat()) {
    err << "PreconditionError: base system is unsatisfiable\n";
    return kExitUnsat;
  }
  const Dbm<M>& m = base.dbm();

  OctConstraint<M> extra = parse_constraint_line<M>(sys.n, opts.constraint);
  DiffConstraint<M> o = translate(extra).front();

  // Zero-min sufficient test before running the chosen algorithm.
  if (fast_unsat(m, o)) {
    out << "UNSAT\n";
    if (opts.count_mins) out << "min_ops=0\n";
    return kExitUnsat;
  }

  IncrStats stats;
  ClosureOutcome<M> res = ClosureOutcome<M>::unsat();
  if (opts.backend == "codbm") {
    if (opts.in_place) throw PreconditionError("--in-place applies to the dense backend only");
    if (opts.algo != "incr" && opts.algo != "strong" && opts.algo != "tight")
      throw PreconditionError("algorithm '" + opts.algo + "' has no compact-backend form");
    CoAlgo alg = opts.algo == "incr"     ? CoAlgo::Incr
                 : opts.algo == "strong" ? CoAlgo::IncrStrong
                                         : CoAlgo::IncrTight;
    MinCounter cnt;
    CoOutcome<M> co = run_over<M>(CoDbm<M>::from_dense(m), alg, &o, &cnt);
    stats.min_ops = cnt.count;
    res = co.is_unsat() ? ClosureOutcome<M>::unsat()
                        : ClosureOutcome<M>::closed(co.codbm().to_dense());
  } else if (opts.in_place) {
    OrderSpec spec = parse_order(opts.order);
    const std::size_t dim = m.dim();
    if (opts.algo == "incr") {
      TraversalOrder order =
          spec.random ? TraversalOrder::shuffled(dim, spec.seed) : TraversalOrder::row_major(dim);
      res = incr_in_situ(m, o, order, &stats);
    } else if (opts.algo == "strong" || opts.algo == "tight") {
      // Key-first is a hard precondition here; both named orders are lifted
      // to their key-first counterparts.
      TraversalOrder order = spec.random ? TraversalOrder::keys_first_shuffled(dim, spec.seed)
                                         : TraversalOrder::keys_first_row_major(dim);
      if (opts.algo == "strong") {
        res = incr_strong_in_situ(m, o, order, &stats);
      } else {
        if constexpr (M::id == NumericMode::CheckedInt)
          res = incr_tight_in_situ(m, o, order, &stats);
      }
    } else {
      throw PreconditionError("algorithm '" + opts.algo + "' has no in-place form");
    }
  } else {
    if (opts.algo == "mine")
      res = incr_mine(m, o, &stats);
    else if (opts.algo == "incr")
      res = incr(m, o, &stats);
    else if (opts.algo == "hoist")
      res = incr_hoisted(m, o, &stats);
    else if (opts.algo == "strong")
      res = incr_strong(m, o, &stats);
    else if (opts.algo == "strong-reduce")
      res = incr_strong_reduce(m, o, &stats);
    else {
      if constexpr (M::id == NumericMode::CheckedInt) res = incr_tight(m, o, &stats);
    }
  }

  if (res.is_unsat()) {
    out << "UNSAT\n";
    if (opts.count_mins) out << "min_ops=" << stats.min_ops << "\n";
    return kExitUnsat;
  }
  write_output(opts.out_path, dump_csv<M>(res.dbm()), out);
  if (opts.count_mins) out << "min_ops=" << stats.min_ops << "\n";
  return kExitOk;
}

template <class M>
int do_check(const CheckOpts& opts, std::ostream& out) {
  Dbm<M> m = load_csv<M>(read_input(opts.input));
  DbmProperties p = classify(m);
  auto flag = [](bool b) { return b ? "true" : "false"; };
  out << "coherent: " << flag(p.coherent) << "\n";
  out << "consistent: " << flag(p.consistent) << "\n";
  out << "closed: " << flag(p.closed) << "\n";
  out << "strongly_closed: " << flag(p.strongly_closed) << "\n";
  out << "weakly_closed: " << flag(p.weakly_closed) << "\n";
  out << "tightly_closed: " << flag(p.tightly_closed) << "\n";
  if (!p.tight_supported)
    out << "warning: tight closure is undefined in this numeric mode\n";
  return kExitOk;
}

int do_gen(const GenOpts& opts, std::ostream& out) {
  GenConfig cfg{opts.vars, opts.constraints, opts.magnitude, opts.unary_frac};
  if (cfg.magnitude <= 0) throw PreconditionError("magnitude must be positive");
  if (cfg.n_vars < 1) throw PreconditionError("need at least one variable");
  GeneratedProblem<IntMode> p = gen_random<IntMode>(cfg, opts.seed, opts.trial);
  out << "vars " << opts.vars << "\n";
  for (const auto& c : p.system) out << format_constraint<IntMode>(c) << "\n";
  out << "# extra: " << format_constraint<IntMode>(p.extra) << "\n";
  return kExitOk;
}

template <class M>
int do_bench(const BenchOpts& opts, std::ostream& out) {
  BenchConfig cfg;
  cfg.n_vars = opts.vars;
  cfg.n_constraints = opts.constraints;
  cfg.trials = opts.trials;
  cfg.seed = opts.seed;
  cfg.magnitude = opts.magnitude;
  cfg.unary_frac = opts.unary_frac;
  cfg.algorithms = split_csv_list(opts.algos);
  cfg.codbm_backend = opts.backend == "codbm";

  std::vector<BenchRecord> records = run_bench<M>(cfg);
  std::string text = bench_csv(records);
  for (const auto& [algo, wall] : bench_medians(records))
    text += "# median," + algo + "," + std::to_string(wall) + "\n";
  write_output(opts.csv_path, text, out);
  return kExitOk;
}

template <class F>
int dispatch_mode(const std::string& mode, F&& f) {
  switch (parse_mode(mode)) {
    case NumericMode::ExactRational:
      return f(RatMode{});
    case NumericMode::CheckedInt:
      return f(IntMode{});
    case NumericMode::BinaryFloat64:
      return f(F64Mode{});
  }
  return kExitUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"octagon difference-bound-matrix closure toolkit"};
  app.require_subcommand(1);

  CloseOpts close_opts;
  auto* close_cmd = app.add_subcommand("close", "close a constraint system");
  close_cmd->add_option("input", close_opts.input, "constraint file ('-' for stdin)")->required();
  close_cmd->add_option("--algo", close_opts.algo, "fw|strong|tight")
      ->check(CLI::IsMember({"fw", "strong", "tight"}));
  close_cmd->add_option("--mode", close_opts.mode, "rat|int|f64")
      ->check(CLI::IsMember({"rat", "int", "f64"}));
  close_cmd->add_option("--backend", close_opts.backend, "dense|codbm")
      ->check(CLI::IsMember({"dense", "codbm"}));
  close_cmd->add_option("--out", close_opts.out_path, "output path (default stdout)");

  IncrOpts incr_opts;
  auto* incr_cmd = app.add_subcommand("incr", "close, then add one constraint incrementally");
  incr_cmd->add_option("input", incr_opts.input, "constraint file ('-' for stdin)")->required();
  incr_cmd->add_option("constraint", incr_opts.constraint, "constraint to add, e.g. 'x0 - x1 <= 0'")
      ->required();
  incr_cmd->add_option("--algo", incr_opts.algo, "mine|incr|hoist|strong|strong-reduce|tight")
      ->check(CLI::IsMember({"mine", "incr", "hoist", "strong", "strong-reduce", "tight"}));
  incr_cmd->add_flag("--in-place", incr_opts.in_place, "run the single-buffer variant");
  incr_cmd->add_option("--order", incr_opts.order,
                       "traversal for --in-place: rowmajor|random:<seed> "
                       "(key-first enforced for strong/tight)");
  incr_cmd->add_flag("--count-mins", incr_opts.count_mins, "emit min_ops=<k>");
  incr_cmd->add_option("--mode", incr_opts.mode, "rat|int|f64")
      ->check(CLI::IsMember({"rat", "int", "f64"}));
  incr_cmd->add_option("--backend", incr_opts.backend, "dense|codbm")
      ->check(CLI::IsMember({"dense", "codbm"}));
  incr_cmd->add_option("--out", incr_opts.out_path, "output path (default stdout)");

  CheckOpts check_opts;
  auto* check_cmd = app.add_subcommand("check", "classify a dumped DBM");
  check_cmd->add_option("input", check_opts.input, "CSV matrix file ('-' for stdin)")->required();
  check_cmd->add_option("--mode", check_opts.mode, "rat|int|f64")
      ->check(CLI::IsMember({"rat", "int", "f64"}));

  GenOpts gen_opts;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random origin-containing system");
  gen_cmd->add_option("--vars", gen_opts.vars, "program variables");
  gen_cmd->add_option("--constraints", gen_opts.constraints, "constraint count");
  gen_cmd->add_option("--seed", gen_opts.seed, "PRNG seed");
  gen_cmd->add_option("--trial", gen_opts.trial, "trial index");
  gen_cmd->add_option("--magnitude", gen_opts.magnitude, "bound magnitude D");
  gen_cmd->add_option("--unary-frac", gen_opts.unary_frac, "unary share of constraint shapes");

  BenchOpts bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "run the incremental micro-benchmark");
  bench_cmd->add_option("--vars", bench_opts.vars, "program variables");
  bench_cmd->add_option("--constraints", bench_opts.constraints, "constraint count");
  bench_cmd->add_option("--trials", bench_opts.trials, "problems per algorithm");
  bench_cmd->add_option("--seed", bench_opts.seed, "PRNG seed");
  bench_cmd->add_option("--magnitude", bench_opts.magnitude, "bound magnitude D");
  bench_cmd->add_option("--unary-frac", bench_opts.unary_frac, "unary share of constraint shapes");
  bench_cmd->add_option("--algos", bench_opts.algos,
                        "comma list of mine,incr,hoist,strong,strong-reduce,tight");
  bench_cmd->add_option("--mode", bench_opts.mode, "rat|int|f64")
      ->check(CLI::IsMember({"rat", "int", "f64"}));
  bench_cmd->add_option("--backend", bench_opts.backend, "dense|codbm")
      ->check(CLI::IsMember({"dense", "codbm"}));
  bench_cmd->add_option("--csv", bench_opts.csv_path, "CSV output path (default stdout)");

  std::vector<const char*> argv;
  argv.push_back("octclose");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*close_cmd) {
      if (close_opts.algo == "tight" && close_opts.mode != "int") {
        err << "error: --algo tight requires --mode int\n";
        return kExitUsage;
      }
      return dispatch_mode(close_opts.mode,
                           [&](auto m) { return do_close<decltype(m)>(close_opts, out, err); });
    }
    if (*incr_cmd) {
      if (incr_opts.algo == "tight" && incr_opts.mode != "int") {
        err << "error: --algo tight requires --mode int\n";
        return kExitUsage;
      }
      return dispatch_mode(incr_opts.mode,
                           [&](auto m) { return do_incr<decltype(m)>(incr_opts, out, err); });
    }
    if (*check_cmd)
      return dispatch_mode(check_opts.mode,
                           [&](auto m) { return do_check<decltype(m)>(check_opts, out); });
    if (*gen_cmd) return do_gen(gen_opts, out);
    if (*bench_cmd) {
      if (split_csv_list(bench_opts.algos).size() == 1 && bench_opts.algos == "tight" &&
          bench_opts.mode != "int") {
        err << "error: algorithm 'tight' requires --mode int\n";
        return kExitUsage;
      }
      return dispatch_mode(bench_opts.mode,
                           [&](auto m) { return do_bench<decltype(m)>(bench_opts, out); });
    }
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OctError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace oct
