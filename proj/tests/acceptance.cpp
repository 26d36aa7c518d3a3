// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and budgets are pinned in code next to each check.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oct/closure.hpp"
#include "oct/codbm.hpp"
#include "oct/dbm.hpp"
#include "oct/gen.hpp"
#include "oct/incremental.hpp"
#include "oct/text.hpp"
#include "oct/traversal.hpp"
#include "support/generators.hpp"

using oct::bar;
using oct::Bound;
using oct::CoAlgo;
using oct::CoDbm;
using oct::Dbm;
using oct::DiffConstraint;
using oct::IntMode;
using oct::RatMode;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  bool pass = false;
  std::string detail;
};

std::uint64_t nanos_since(Clock::time_point t0) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count());
}

template <class M>
Dbm<M> three_term_update(const Dbm<M>& m, const DiffConstraint<M>& o) {
  Dbm<M> out = m;
  const std::size_t a = o.a, b = o.b, ab = bar(o.a), bb = bar(o.b);
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      auto v = m(i, j);
      auto p1 = oct::path_sum<M>({m(i, a), Bound<M>::finite(o.d), m(b, j)});
      auto p2 = oct::path_sum<M>({m(i, bb), Bound<M>::finite(o.d), m(ab, j)});
      if (p1 < v) v = p1;
      if (p2 < v) v = p2;
      out(i, j) = v;
    }
  return out;
}

// ---- criterion 1: known two-variable system, exact matrices, < 1 ms -------

Criterion known_system_regression() {
  using M = RatMode;
  constexpr std::uint64_t kBudgetNanos = 1'000'000;  // pinned: under 1 ms

  auto sys = oct::parse_system<M>(ts::known_system_text());
  auto pipeline = [&]() {
    Dbm<M> raw = oct::from_constraints<M>(sys.n, sys.constraints);
    Dbm<M> shortest = oct::floyd_warshall(raw);
    oct::ClosureOutcome<M> closed = oct::check_consistent(shortest);
    return std::tuple<Dbm<M>, Dbm<M>, oct::ClosureOutcome<M>>{
        std::move(raw), std::move(shortest), std::move(closed)};
  };

  (void)pipeline();  // warm caches; the timed run follows
  auto t0 = Clock::now();
  auto [raw, shortest, closed] = pipeline();
  std::uint64_t ns = nanos_since(t0);

  bool ok = oct::dbm_equal(raw, ts::load<M>(ts::known_raw_csv()));
  ok = ok && oct::dbm_equal(shortest, ts::load<M>(ts::known_shortest_csv()));
  for (std::size_t i = 0; i < 4; ++i)
    ok = ok && shortest(i, i) == Bound<M>::of(11);
  ok = ok && closed.is_closed() &&
       oct::dbm_equal(closed.dbm(), ts::load<M>(ts::known_closed_csv()));
  bool in_budget = ns < kBudgetNanos;

  std::ostringstream d;
  d << "translation/shortest-path/renormalized matrices "
    << (ok ? "match exactly" : "MISMATCH") << "; pipeline took " << ns << " ns (budget "
    << kBudgetNanos << ")";
  return {ok && in_budget, d.str()};
}

// ---- criterion 2: five-term propagation example ----------------------------

Criterion propagation_example() {
  using M = IntMode;
  auto base = ts::load<M>(ts::prop_base_csv());
  DiffConstraint<M> o{0, 2, 0};

  auto out = oct::incr(base, o);
  bool ok = out.is_closed() && oct::dbm_equal(out.dbm(), ts::load<M>(ts::prop_result_csv())) &&
            out.dbm()(0, 1) == Bound<M>::of(0);
  auto foiled = three_term_update(base, o);
  bool foil_ok = foiled(0, 1) == Bound<M>::of(7);

  std::ostringstream d;
  d << "full update drives entry (0,1) to 0; sorted-paths-only variant leaves "
    << oct::format_bound<M>(foiled(0, 1)) << " (want 7)";
  return {ok && foil_ok, d.str()};
}

// ---- criterion 3: randomized agreement with recomputed closures ------------

Criterion randomized_incremental_agreement() {
  constexpr std::uint64_t kBudgetNanos = 120'000'000'000ull;  // pinned: 2 min
  constexpr int kTrials = 1000;
  auto t0 = Clock::now();

  std::size_t cases = 0, unsat = 0, mismatches = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int t = 0; t < kTrials; ++t) {
      {
        auto c = ts::random_case<RatMode>(n, 301, t, ts::BaseForm::Closed, 8);
        auto got = oct::incr(c.base, c.extra);
        auto want = ts::oracle_closure(ts::augment(c.raw, c.extra_oct));
        if (!ts::same_outcome(got, want)) ++mismatches;
        if (got.is_unsat()) ++unsat;
        ++cases;
      }
      {
        auto c = ts::random_case<RatMode>(n, 302, t, ts::BaseForm::Strong, 8);
        auto got = oct::incr_strong(c.base, c.extra);
        auto want = ts::strengthen_after(oct::incr(c.base, c.extra));
        if (!ts::same_outcome(got, want)) ++mismatches;
        if (got.is_unsat()) ++unsat;
        ++cases;
      }
      {
        auto c = ts::random_case<IntMode>(n, 303, t, ts::BaseForm::Tight, 8);
        auto got = oct::incr_tight(c.base, c.extra);
        auto want = ts::tighten_then_strengthen(oct::incr(c.base, c.extra));
        if (!ts::same_outcome(got, want)) ++mismatches;
        if (got.is_unsat()) ++unsat;
        ++cases;
      }
    }
  }
  std::uint64_t ns = nanos_since(t0);

  std::ostringstream d;
  d << cases << " cases over n=1..6 (plain/strong/tight families), " << unsat
    << " unsatisfiable, " << mismatches << " disagreements; took " << ns / 1'000'000
    << " ms (budget " << kBudgetNanos / 1'000'000 << ")";
  return {mismatches == 0 && ns < kBudgetNanos && cases == 3 * 6 * kTrials, d.str()};
}

// ---- criterion 4: reduction variant agrees on strongly closed inputs -------

Criterion reduction_variant_agreement() {
  constexpr int kCases = 1000;
  std::size_t unsat = 0, mismatches = 0;
  for (int t = 0; t < kCases; ++t) {
    auto c = ts::random_case<RatMode>(1 + t % 6, 304, t, ts::BaseForm::Strong, 8);
    auto lhs = oct::incr_strong_reduce(c.base, c.extra);
    auto rhs = oct::incr_strong(c.base, c.extra);
    if (!ts::same_outcome(lhs, rhs)) ++mismatches;
    if (lhs.is_unsat()) ++unsat;
  }
  std::ostringstream d;
  d << kCases << " strongly closed inputs, " << unsat << " unsatisfiable, " << mismatches
    << " disagreements between the reduced and full strong updates";
  return {mismatches == 0, d.str()};
}

// ---- criterion 5: consistency screen is exact ------------------------------

Criterion consistency_screen_equivalence() {
  constexpr int kCases = 5000;
  std::size_t cuts = 0, mismatches = 0;
  for (int t = 0; t < kCases; ++t) {
    auto c = ts::random_case<IntMode>(1 + t % 4, 305, t, ts::BaseForm::Closed, 4);
    bool screened = oct::fast_unsat(c.base, c.extra);
    bool actual = oct::incr(c.base, c.extra).is_unsat();
    if (screened != actual) ++mismatches;
    if (screened) ++cuts;
  }
  std::ostringstream d;
  d << kCases << " closed inputs: screen flagged " << cuts
    << " contradictions, full update confirmed every verdict; " << mismatches << " mismatches";
  return {mismatches == 0 && cuts > 0 && cuts < kCases, d.str()};
}

// ---- criterion 6: traversal-order independence ------------------------------

Criterion traversal_order_independence() {
  constexpr int kOrders = 100;
  std::size_t runs = 0, mismatches = 0, rejections = 0;

  for (std::size_t n = 1; n <= 3; ++n) {
    auto cp = ts::random_case<IntMode>(n, 306, n, ts::BaseForm::Closed, 6);
    auto want_p = oct::incr(cp.base, cp.extra);
    const std::size_t dim_p = cp.base.dim();
    for (int k = 0; k < kOrders; ++k) {
      auto got = oct::incr_in_situ(cp.base, cp.extra,
                                   oct::TraversalOrder::shuffled(dim_p, 6000 + k));
      if (!ts::same_outcome(got, want_p)) ++mismatches;
      ++runs;
    }

    auto cs = ts::random_case<RatMode>(n, 307, n, ts::BaseForm::Strong, 6);
    auto want_s = oct::incr_strong(cs.base, cs.extra);
    const std::size_t dim_s = cs.base.dim();
    for (int k = 0; k < kOrders; ++k) {
      auto got = oct::incr_strong_in_situ(cs.base, cs.extra,
                                          oct::TraversalOrder::keys_first_shuffled(dim_s, 7000 + k));
      if (!ts::same_outcome(got, want_s)) ++mismatches;
      ++runs;
    }
    try {
      (void)oct::incr_strong_in_situ(cs.base, cs.extra, oct::TraversalOrder::row_major(dim_s));
    } catch (const oct::InvalidTraversal&) {
      ++rejections;
    }

    auto ct = ts::random_case<IntMode>(n, 308, n, ts::BaseForm::Tight, 6);
    auto want_t = oct::incr_tight(ct.base, ct.extra);
    const std::size_t dim_t = ct.base.dim();
    for (int k = 0; k < kOrders; ++k) {
      auto got = oct::incr_tight_in_situ(ct.base, ct.extra,
                                         oct::TraversalOrder::keys_first_shuffled(dim_t, 8000 + k));
      if (!ts::same_outcome(got, want_t)) ++mismatches;
      ++runs;
    }
    try {
      (void)oct::incr_tight_in_situ(ct.base, ct.extra, oct::TraversalOrder::row_major(dim_t));
    } catch (const oct::InvalidTraversal&) {
      ++rejections;
    }
  }

  std::ostringstream d;
  d << runs << " single-buffer runs across " << kOrders
    << " orders per case matched the out-of-place results; " << rejections
    << "/6 non-key-first orders rejected";
  return {mismatches == 0 && rejections == 6, d.str()};
}

// ---- criterion 7: exact operation counts ------------------------------------

Criterion min_count_formulas() {
  using M = RatMode;
  std::size_t checked = 0, wrong = 0;
  std::ostringstream bad;
  for (std::size_t n : {1, 2, 4, 8, 16, 32}) {
    auto c = ts::random_case<M>(n, 309, n, ts::BaseForm::Closed, 8);
    DiffConstraint<M> loose{0, 1, mpq_class(1000)};  // far outside magnitude 8

    oct::MinCounter fw;
    (void)oct::floyd_warshall(c.raw, &fw);
    oct::IncrStats si, sh, ss;
    bool done = oct::incr(c.base, loose, &si).is_closed() &&
                oct::incr_hoisted(c.base, loose, &sh).is_closed() &&
                oct::incr_strong(oct::strengthen(c.base), loose, &ss).is_closed();

    auto expect = [&](const char* name, std::uint64_t got, std::uint64_t want) {
      ++checked;
      if (got != want) {
        ++wrong;
        bad << " [" << name << " n=" << n << ": " << got << " != " << want << "]";
      }
    };
    expect("shortest-path", fw.count, 8 * n * n * n);
    expect("plain", si.min_ops, 16 * n * n);
    expect("hoisted", sh.min_ops, 8 * n * n + 4 * n);
    expect("strong", ss.min_ops, 20 * n * n - 2 * n);
    if (!done) ++wrong;
  }
  std::ostringstream d;
  d << checked << " count checks over n in {1,2,4,8,16,32}: 8n^3 / 16n^2 / 8n^2+4n / 20n^2-2n"
    << (wrong ? " with FAILURES:" + bad.str() : " all exact");
  return {wrong == 0, d.str()};
}

// ---- criterion 8: algebraic property suites ---------------------------------

Criterion algebraic_property_suites() {
  constexpr int kCases = 500;
  constexpr int kPoints = 100;
  std::size_t failures = 0;
  std::ostringstream bad;
  auto tally = [&](const char* suite, bool ok) {
    if (!ok) {
      ++failures;
      bad << " [" << suite << "]";
    }
  };

  // Strengthening: idempotent, reductive, coherent, monotone, key fixpoints.
  for (int t = 0; t < kCases; ++t) {
    auto c = ts::random_case<RatMode>(1 + t % 4, 311, t, ts::BaseForm::Closed, 8);
    auto s = oct::strengthen(c.base);
    bool ok = oct::dbm_equal(oct::strengthen(s), s) && ts::dbm_le(s, c.base) &&
              oct::is_coherent(s) && oct::classify(s).strongly_closed;
    for (std::size_t i = 0; ok && i < s.dim(); ++i)
      ok = s(i, bar(i)) == c.base(i, bar(i));
    auto aug = ts::oracle_closure(ts::augment(c.raw, c.extra_oct));
    if (aug.is_closed()) ok = ok && ts::dbm_le(oct::strengthen(aug.dbm()), s);
    tally("strengthen", ok);
  }

  // Tightening: idempotent, reductive, coherent, monotone, even finite keys.
  for (int t = 0; t < kCases; ++t) {
    auto c = ts::random_case<IntMode>(1 + t % 4, 313, t, ts::BaseForm::Closed, 8);
    auto g = oct::tighten(c.base);
    bool ok = oct::dbm_equal(oct::tighten(g), g) && ts::dbm_le(g, c.base) && oct::is_coherent(g);
    for (std::size_t i = 0; ok && i < g.dim(); ++i) {
      const auto& key = g(i, bar(i));
      if (!key.is_inf()) ok = key.value() % 2 == 0;
    }
    auto aug = ts::oracle_closure(ts::augment(c.raw, c.extra_oct));
    if (aug.is_closed()) ok = ok && ts::dbm_le(oct::tighten(aug.dbm()), g);
    tally("tighten", ok);
  }

  // Incremental update: idempotent, coherent, monotone in the base.
  for (int t = 0; t < kCases; ++t) {
    auto c = ts::random_case<RatMode>(1 + t % 4, 317, t, ts::BaseForm::Closed, 8);
    auto out = oct::incr(c.base, c.extra);
    bool ok = true;
    if (out.is_closed()) {
      ok = oct::is_coherent(out.dbm());
      auto again = oct::incr(out.dbm(), c.extra);
      ok = ok && again.is_closed() && oct::dbm_equal(again.dbm(), out.dbm());
    }
    auto smaller = oct::incr(oct::strengthen(c.base), c.extra);
    if (out.is_unsat()) ok = ok && smaller.is_unsat();
    else if (smaller.is_closed()) ok = ok && ts::dbm_le(smaller.dbm(), out.dbm());
    tally("incremental", ok);
  }

  // Strengthen-after-tighten collapses to one halved-key formula.
  for (int t = 0; t < kCases; ++t) {
    auto c = ts::random_case<IntMode>(1 + t % 4, 319, t, ts::BaseForm::Closed, 8);
    const auto& m = c.base;
    auto composed = oct::strengthen(oct::tighten(m));
    bool ok = true;
    for (std::size_t i = 0; ok && i < m.dim(); ++i)
      for (std::size_t j = 0; ok && j < m.dim(); ++j) {
        auto half_i = oct::halve<IntMode>(oct::tighten_even<IntMode>(m(i, bar(i))));
        auto half_j = oct::halve<IntMode>(oct::tighten_even<IntMode>(m(bar(j), j)));
        auto cand = badd(half_i, half_j);
        auto want = cand < m(i, j) ? cand : m(i, j);
        ok = composed(i, j) == want;
      }
    tally("halved-key formula", ok);
  }

  // Strongly closed matrices are canonical: entailed constraints change nothing.
  {
    oct::SplitMix64 rng(331);
    int done = 0, attempts = 0;
    bool ok = true;
    while (done < kCases && attempts < kCases * 4) {
      auto c = ts::random_case<RatMode>(1 + attempts % 4, 333, attempts, ts::BaseForm::Strong, 8);
      ++attempts;
      std::vector<std::pair<std::size_t, std::size_t>> finite;
      for (std::size_t i = 0; i < c.base.dim(); ++i)
        for (std::size_t j = 0; j < c.base.dim(); ++j)
          if (i != j && !c.base(i, j).is_inf()) finite.push_back({i, j});
      if (finite.empty()) continue;
      auto [a, b] = finite[rng.below(finite.size())];
      DiffConstraint<RatMode> entailed{a, b,
                                       c.base(a, b).value() + mpq_class(static_cast<long>(rng.below(5)))};
      auto out = oct::incr_strong(c.base, entailed);
      ok = ok && out.is_closed() && oct::dbm_equal(out.dbm(), c.base);
      ++done;
    }
    tally("canonical form", ok && done == kCases);
  }

  // Concretization is preserved by closing and strengthening.
  {
    oct::SplitMix64 rng(337);
    bool ok = true;
    for (int t = 0; t < kCases; ++t) {
      auto c = ts::random_case<RatMode>(1 + t % 3, 339, t, ts::BaseForm::Closed, 8);
      auto s = oct::strengthen(c.base);
      for (int k = 0; k < kPoints; ++k) {
        auto p = ts::random_point(rng, c.base.vars(), 8);
        bool in_raw = oct::gamma_contains(c.raw, p);
        ok = ok && oct::gamma_contains(c.base, p) == in_raw &&
             oct::gamma_contains(s, p) == in_raw;
      }
    }
    tally("concretization", ok);
  }

  std::ostringstream d;
  d << "six property suites x " << kCases << " cases (membership suite: " << kPoints
    << " points per case)" << (failures ? "; FAILED suites:" + bad.str() : ", all held");
  return {failures == 0, d.str()};
}

// ---- criterion 9: compact storage replays the dense algorithms --------------

Criterion compact_storage_equivalence() {
  std::size_t mismatches = 0, cases = 0;

  // Exhaustive index layout check for every variable count up to 16.
  bool layout_ok = true;
  for (std::size_t n = 1; n <= 16; ++n) {
    const std::size_t dim = 2 * n;
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        // Mirrors fold onto one slot across blocks; inside a 2x2 block the
        // diagonal pair (i,i)/(~i,~i) keeps two slots that coherence equates.
        if (i / 2 != j / 2 &&
            oct::half_index(i, j) != oct::half_index(bar(j), bar(i)))
          layout_ok = false;
        if (i >= j || i == bar(j)) seen.insert(oct::half_index(i, j));
      }
    layout_ok = layout_ok && seen.size() == 2 * n * (n + 1) && *seen.begin() == 0 &&
                *seen.rbegin() == 2 * n * (n + 1) - 1;
  }

  auto compare = [&](const auto& dense_outcome, const auto& packed_outcome) {
    ++cases;
    if (dense_outcome.is_unsat() != packed_outcome.is_unsat()) {
      ++mismatches;
      return;
    }
    if (!dense_outcome.is_unsat() &&
        !oct::dbm_equal(packed_outcome.codbm().to_dense(), dense_outcome.dbm()))
      ++mismatches;
  };

  {  // The known two-variable system, every applicable algorithm.
    auto raw = ts::load<RatMode>(ts::known_raw_csv());
    auto packed_raw = CoDbm<RatMode>::from_dense(raw);
    compare(ts::oracle_closure(raw), oct::run_over(packed_raw, CoAlgo::Closure));
    compare(oct::strong_closure(raw), oct::run_over(packed_raw, CoAlgo::StrongClosure));

    auto closed = ts::load<RatMode>(ts::known_closed_csv());
    auto strong = ts::load<RatMode>(ts::known_strong_csv());
    DiffConstraint<RatMode> o{0, 2, mpq_class(0)};
    compare(oct::incr(closed, o), oct::run_over(CoDbm<RatMode>::from_dense(closed), CoAlgo::Incr, &o));
    compare(oct::incr_strong(strong, o),
            oct::run_over(CoDbm<RatMode>::from_dense(strong), CoAlgo::IncrStrong, &o));

    auto iraw = ts::load<IntMode>(ts::known_raw_csv());
    compare(oct::tight_closure(iraw),
            oct::run_over(CoDbm<IntMode>::from_dense(iraw), CoAlgo::TightClosure));
  }
  {  // The five-term propagation example.
    auto base = ts::load<IntMode>(ts::prop_base_csv());
    DiffConstraint<IntMode> o{0, 2, 0};
    compare(oct::incr(base, o), oct::run_over(CoDbm<IntMode>::from_dense(base), CoAlgo::Incr, &o));
  }

  // The full randomized corpus of the agreement criterion, replayed compactly.
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int t = 0; t < 1000; ++t) {
      {
        auto c = ts::random_case<RatMode>(n, 301, t, ts::BaseForm::Closed, 8);
        compare(ts::oracle_closure(c.raw),
                oct::run_over(CoDbm<RatMode>::from_dense(c.raw), CoAlgo::Closure));
        compare(oct::incr(c.base, c.extra),
                oct::run_over(CoDbm<RatMode>::from_dense(c.base), CoAlgo::Incr, &c.extra));
      }
      {
        auto c = ts::random_case<RatMode>(n, 302, t, ts::BaseForm::Strong, 8);
        compare(oct::incr_strong(c.base, c.extra),
                oct::run_over(CoDbm<RatMode>::from_dense(c.base), CoAlgo::IncrStrong, &c.extra));
      }
      {
        auto c = ts::random_case<IntMode>(n, 303, t, ts::BaseForm::Tight, 8);
        compare(oct::tight_closure(c.raw),
                oct::run_over(CoDbm<IntMode>::from_dense(c.raw), CoAlgo::TightClosure));
        compare(oct::incr_tight(c.base, c.extra),
                oct::run_over(CoDbm<IntMode>::from_dense(c.base), CoAlgo::IncrTight, &c.extra));
      }
    }
  }

  std::ostringstream d;
  d << "index layout exhaustive through 16 variables "
    << (layout_ok ? "(bijective, mirror-stable)" : "(BROKEN)") << "; " << cases
    << " dense-vs-compact replays, " << mismatches << " mismatches";
  return {layout_ok && mismatches == 0, d.str()};
}

// ---- criterion 10: quadratic update beats pivot re-runs at scale ------------

Criterion scaling_comparison() {
  using M = IntMode;
  constexpr std::uint64_t kBudgetNanos = 60'000'000'000ull;  // pinned: 1 min
  constexpr int kRuns = 9;
  auto t0 = Clock::now();

  auto median = [](std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
  };

  struct Point {
    std::size_t n;
    std::uint64_t med_incr;
    std::uint64_t med_mine;
  };
  std::vector<Point> points;
  bool results_agree = true;

  for (std::size_t n : {32, 64, 128}) {
    oct::GenConfig cfg;
    cfg.n_vars = n;
    cfg.n_constraints = 2 * n + 2;
    cfg.magnitude = 100;
    auto prob = oct::gen_random<M>(cfg, 401, n);
    auto closed = oct::check_consistent(oct::floyd_warshall(oct::from_constraints<M>(n, prob.system)));
    if (closed.is_unsat()) return {false, "origin-containing base closed to unsat"};
    const Dbm<M>& base = closed.dbm();
    // Touches x0 (worst case for the pivot re-run variant); the slack bound
    // keeps every run on the full-length consistent path.
    DiffConstraint<M> o{0, 2, 1 << 20};

    std::vector<std::uint64_t> incr_ns, mine_ns;
    for (int r = 0; r < kRuns; ++r) {
      auto a0 = Clock::now();
      auto ri = oct::incr(base, o);
      incr_ns.push_back(nanos_since(a0));
      auto b0 = Clock::now();
      auto rm = oct::incr_mine(base, o);
      mine_ns.push_back(nanos_since(b0));
      if (ri.is_unsat() || rm.is_unsat() || !oct::dbm_equal(ri.dbm(), rm.dbm()))
        results_agree = false;
    }
    points.push_back({n, median(incr_ns), median(mine_ns)});
  }

  auto ratio = [](const Point& p) {
    return static_cast<double>(p.med_mine) / static_cast<double>(p.med_incr);
  };
  bool faster_at_64 = points[1].med_incr < points[1].med_mine;
  bool gap_widens = ratio(points[2]) > ratio(points[0]);
  std::uint64_t ns = nanos_since(t0);

  std::ostringstream d;
  d << "medians over " << kRuns << " runs (quadratic vs pivot re-run, ns):";
  for (const auto& p : points)
    d << " n=" << p.n << ": " << p.med_incr << " vs " << p.med_mine;
  d << "; gap x" << ratio(points[0]) << " -> x" << ratio(points[2]) << "; took "
    << ns / 1'000'000 << " ms (budget " << kBudgetNanos / 1'000'000 << ")";
  return {results_agree && faster_at_64 && gap_widens && ns < kBudgetNanos, d.str()};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Criterion (*fn)();
  };
  const Entry entries[] = {
      {"known-system regression", known_system_regression},
      {"propagation example", propagation_example},
      {"randomized incremental agreement", randomized_incremental_agreement},
      {"reduction variant agreement", reduction_variant_agreement},
      {"consistency screen equivalence", consistency_screen_equivalence},
      {"traversal-order independence", traversal_order_independence},
      {"operation-count formulas", min_count_formulas},
      {"algebraic property suites", algebraic_property_suites},
      {"compact storage equivalence", compact_storage_equivalence},
      {"scaling comparison", scaling_comparison},
  };

  bool all_pass = true;
  for (std::size_t i = 0; i < std::size(entries); ++i) {
    Criterion c;
    try {
      c = entries[i].fn();
    } catch (const std::exception& e) {
      c = {false, std::string("unhandled exception: ") + e.what()};
    }
    all_pass = all_pass && c.pass;
    std::cout << "criterion " << (i + 1) << " (" << entries[i].name << "): "
              << (c.pass ? "PASS" : "FAIL") << " - " << c.detail << "\n";
  }
  return all_pass ? 0 : 1;
}
