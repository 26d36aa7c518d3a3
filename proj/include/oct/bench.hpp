#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oct/closure.hpp"
#include "oct/codbm.hpp"
#include "oct/gen.hpp"
#include "oct/incremental.hpp"
#include "oct/text.hpp"

namespace oct {

struct BenchConfig {
  std::size_t n_vars = 4;
  std::size_t n_constraints = 8;
  std::size_t trials = 10;
  std::uint64_t seed = 42;
  std::vector<std::string> algorithms;  // empty selects the mode's default set
  bool codbm_backend = false;
  std::int64_t magnitude = 10;
  double unary_frac = 0.5;
};

struct BenchRecord {
  std::string algorithm;
  std::size_t n_vars = 0;
  std::size_t trial = 0;
  std::uint64_t wall_nanos = 0;
  std::uint64_t min_ops = 0;
  bool unsat = false;
  std::uint64_t checksum = 0;
};

namespace detail {

inline std::uint64_t elapsed_nanos(std::chrono::steady_clock::time_point t0,
                                   std::chrono::steady_clock::time_point t1) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
}

enum class BaseKind { Plain, Strong, Tight };

inline BaseKind base_kind_for(const std::string& algo) {
  if (algo == "strong" || algo == "strong-reduce") return BaseKind::Strong;
  if (algo == "tight") return BaseKind::Tight;
  return BaseKind::Plain;
}

}  // namespace detail

inline std::vector<std::string> default_bench_algorithms(NumericMode mode, bool codbm_backend) {
  // Strong closure halves odd key sums, which is out of contract for checked
  // integers; the integer defaults run the tight variant instead.
  if (codbm_backend) {
    if (mode == NumericMode::CheckedInt) return {"incr", "tight"};
    return {"incr", "strong"};
  }
  if (mode == NumericMode::CheckedInt) return {"mine", "incr", "hoist", "tight"};
  return {"mine", "incr", "hoist", "strong", "strong-reduce"};
}

// Runs the micro-benchmark protocol: per trial one random origin-containing
// system (closed outside the timer), plus one extra constraint applied by
// each selected incremental algorithm (timed). Every result is compared
// against the non-incremental oracle on the augmented system; a mismatch
// throws VerificationFailure. Records are sorted by (algorithm, trial).
template <class M>
std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  if (cfg.trials < 1) throw PreconditionError("bench needs at least one trial");
  if (cfg.magnitude <= 0) throw PreconditionError("bench needs a positive magnitude");
  std::vector<std::string> algos = cfg.algorithms;
  if (algos.empty()) algos = default_bench_algorithms(M::id, cfg.codbm_backend);
  for (const auto& a : algos) {
    static const char* known[] = {"mine", "incr", "hoist", "strong", "strong-reduce", "tight"};
    bool ok = std::find(std::begin(known), std::end(known), a) != std::end(known);
    if (!ok) throw PreconditionError("unknown algorithm: " + a);
    if (a == "tight" && M::id != NumericMode::CheckedInt)
      throw PreconditionError("algorithm 'tight' requires int mode");
    if (cfg.codbm_backend && (a == "mine" || a == "hoist" || a == "strong-reduce"))
      throw PreconditionError("algorithm '" + a + "' has no compact-backend form");
  }

  GenConfig gen_cfg{cfg.n_vars, cfg.n_constraints, cfg.magnitude, cfg.unary_frac};
  std::vector<BenchRecord> records;
  records.reserve(algos.size() * cfg.trials);

  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    GeneratedProblem<M> prob = gen_random<M>(gen_cfg, cfg.seed, trial);
    Dbm<M> raw = from_constraints<M>(cfg.n_vars, prob.system);
    ClosureOutcome<M> closed = check_consistent(floyd_warshall(raw));
    if (closed.is_unsat())
      throw VerificationFailure("origin-containing system closed to unsat (generator bug)");
    const Dbm<M>& plain_base = closed.dbm();

    std::optional<Dbm<M>> strong_base;
    std::optional<Dbm<M>> tight_base;
    for (const auto& a : algos) {
      auto kind = detail::base_kind_for(a);
      if (kind == detail::BaseKind::Strong && !strong_base)
        strong_base = strengthen(plain_base);
      if constexpr (M::id == NumericMode::CheckedInt) {
        if (kind == detail::BaseKind::Tight && !tight_base) {
          ClosureOutcome<M> t = tight_closure(raw);
          if (t.is_unsat())
            throw VerificationFailure("origin-containing system tightened to unsat");
          tight_base = std::move(t.dbm());
        }
      }
    }

    DiffConstraint<M> o = translate(prob.extra).front();

    // Untimed oracles over the augmented system.
    Dbm<M> augmented = raw;
    for (const auto& dc : translate(prob.extra))
      augmented.min_coherent(dc.a, dc.b, Bound<M>::finite(dc.d));
    ClosureOutcome<M> oracle_plain = check_consistent(floyd_warshall(augmented));
    std::optional<ClosureOutcome<M>> oracle_strong;
    std::optional<ClosureOutcome<M>> oracle_tight;
    auto get_oracle_strong = [&]() -> const ClosureOutcome<M>& {
      if (!oracle_strong) {
        if (oracle_plain.is_unsat())
          oracle_strong = ClosureOutcome<M>::unsat();
        else
          oracle_strong = ClosureOutcome<M>::closed(strengthen(oracle_plain.dbm()));
      }
      return *oracle_strong;
    };
    auto get_oracle_tight = [&]() -> const ClosureOutcome<M>& {
      if (!oracle_tight) {
        if constexpr (M::id == NumericMode::CheckedInt)
          oracle_tight = tight_closure(augmented);
        else
          oracle_tight = ClosureOutcome<M>::unsat();
      }
      return *oracle_tight;
    };

    for (const auto& a : algos) {
      auto kind = detail::base_kind_for(a);
      const Dbm<M>& base = kind == detail::BaseKind::Plain    ? plain_base
                           : kind == detail::BaseKind::Strong ? *strong_base
                                                              : *tight_base;
      BenchRecord rec;
      rec.algorithm = a;
      rec.n_vars = cfg.n_vars;
      rec.trial = trial;

      ClosureOutcome<M> result = ClosureOutcome<M>::unsat();
      IncrStats stats;
      if (cfg.codbm_backend) {
        CoDbm<M> co_base = CoDbm<M>::from_dense(base);
        CoAlgo co_alg = a == "incr"     ? CoAlgo::Incr
                        : a == "strong" ? CoAlgo::IncrStrong
                                        : CoAlgo::IncrTight;
        MinCounter cnt;
        auto t0 = std::chrono::steady_clock::now();
        CoOutcome<M> co = run_over<M>(co_base, co_alg, &o, &cnt);
        auto t1 = std::chrono::steady_clock::now();
        rec.wall_nanos = detail::elapsed_nanos(t0, t1);
        stats.min_ops = cnt.count;
        result = co.is_unsat() ? ClosureOutcome<M>::unsat()
                               : ClosureOutcome<M>::closed(co.codbm().to_dense());
      } else {
        auto t0 = std::chrono::steady_clock::now();
        if (a == "mine")
          result = incr_mine(base, o, &stats);
        else if (a == "incr")
          result = incr(base, o, &stats);
        else if (a == "hoist")
          result = incr_hoisted(base, o, &stats);
        else if (a == "strong")
          result = incr_strong(base, o, &stats);
        else if (a == "strong-reduce")
          result = incr_strong_reduce(base, o, &stats);
        else {
          if constexpr (M::id == NumericMode::CheckedInt) result = incr_tight(base, o, &stats);
        }
        auto t1 = std::chrono::steady_clock::now();
        rec.wall_nanos = detail::elapsed_nanos(t0, t1);
      }
      rec.min_ops = stats.min_ops;
      rec.unsat = result.is_unsat();
      rec.checksum = result.is_unsat() ? 0 : checksum<M>(result.dbm());

      const ClosureOutcome<M>& oracle = kind == detail::BaseKind::Plain    ? oracle_plain
                                        : kind == detail::BaseKind::Strong ? get_oracle_strong()
                                                                           : get_oracle_tight();
      if (result.is_unsat() != oracle.is_unsat())
        throw VerificationFailure("algorithm " + a + " trial " + std::to_string(trial) +
                                  ": outcome disagrees with the non-incremental oracle");
      if (!result.is_unsat() && !dbm_equal(result.dbm(), oracle.dbm()))
        throw VerificationFailure("algorithm " + a + " trial " + std::to_string(trial) +
                                  ": matrix disagrees with the non-incremental oracle");
      records.push_back(std::move(rec));
    }
  }

  std::sort(records.begin(), records.end(), [](const BenchRecord& x, const BenchRecord& y) {
    if (x.algorithm != y.algorithm) return x.algorithm < y.algorithm;
    return x.trial < y.trial;
  });
  return records;
}

inline std::string bench_csv_header() { return "algo,n,trial,wall_nanos,min_ops,outcome,checksum"; }

inline std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::string out = bench_csv_header() + "\n";
  for (const auto& r : records) {
    out += r.algorithm + "," + std::to_string(r.n_vars) + "," + std::to_string(r.trial) + "," +
           std::to_string(r.wall_nanos) + "," + std::to_string(r.min_ops) + "," +
           (r.unsat ? "unsat" : "closed") + "," + std::to_string(r.checksum) + "\n";
  }
  return out;
}

// Lower median of wall times per algorithm, appended as comment rows.
inline std::vector<std::pair<std::string, std::uint64_t>> bench_medians(
    const std::vector<BenchRecord>& records) {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    std::vector<std::uint64_t> walls;
    while (j < records.size() && records[j].algorithm == records[i].algorithm)
      walls.push_back(records[j++].wall_nanos);
    std::sort(walls.begin(), walls.end());
    out.emplace_back(records[i].algorithm, walls[(walls.size() - 1) / 2]);
    i = j;
  }
  return out;
}

}  // namespace oct
