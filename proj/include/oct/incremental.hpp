#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "oct/closure.hpp"
#include "oct/dbm.hpp"
#include "oct/traversal.hpp"

namespace oct {

// Instrumentation snapshot of one incremental run. min_ops matches the
// algorithm's closed-form count only on runs that complete without an early
// unsat exit.
struct IncrStats {
  std::uint64_t min_ops = 0;
  std::uint64_t fast_unsat_hits = 0;
  const char* algorithm = "";
};

namespace detail {

inline void fill_stats(IncrStats* s, const char* name, const MinCounter& c,
                       std::uint64_t hits = 0) {
  if (s) {
    s->algorithm = name;
    s->min_ops = c.count;
    s->fast_unsat_hits = hits;
  }
}

// The five-term update of the quadratic incremental closure; 4 counted mins.
template <class M, class S>
Bound<M> quintic_min(const S& in, std::size_t i, std::size_t j, const DiffConstraint<M>& o,
                     MinCounter& cnt) {
  const std::size_t a = o.a, b = o.b, ab = bar(o.a), bb = bar(o.b);
  Bound<M> best = in.get(i, j);
  acc_min(cnt, best, sum3<M>(in.get(i, a), o.d, in.get(b, j)));
  acc_min(cnt, best, sum3<M>(in.get(i, bb), o.d, in.get(ab, j)));
  acc_min(cnt, best, sum5<M>(in.get(i, bb), o.d, in.get(ab, a), o.d, in.get(b, j)));
  acc_min(cnt, best, sum5<M>(in.get(i, a), o.d, in.get(b, bb), o.d, in.get(ab, j)));
  return best;
}

// Full out-of-place pass of the quadratic incremental closure.
template <class M, class SIn, class SOut>
void incr_core(const SIn& in, SOut& out, const DiffConstraint<M>& o, MinCounter& cnt) {
  const std::size_t dim = in.dim();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) out.set(i, j, quintic_min<M>(in, i, j, o, cnt));
}

// Phase 1 of the strong variant: all key entries by the five-term update,
// cached in a linear array. 4 counted mins per key.
template <class M, class SIn>
std::vector<Bound<M>> strong_keys(const SIn& in, const DiffConstraint<M>& o, MinCounter& cnt) {
  const std::size_t dim = in.dim();
  std::vector<Bound<M>> key(dim);
  for (std::size_t i = 0; i < dim; ++i) key[i] = quintic_min<M>(in, i, bar(i), o, cnt);
  return key;
}

// Phase 2 of the strong variant: six-term update on non-key entries, reading
// key terms from the phase-1 cache; checks each row's diagonal as it
// completes. Returns false on inconsistency. 5 counted mins per entry.
template <class M, class SIn, class SOut>
bool strong_sweep(const SIn& in, SOut& out, const DiffConstraint<M>& o,
                  const std::vector<Bound<M>>& key, MinCounter& cnt) {
  const std::size_t dim = in.dim();
  const Bound<M> zero = Bound<M>::of(0);
  for (std::size_t i = 0; i < dim; ++i) {
    out.set(i, bar(i), key[i]);
    for (std::size_t j = 0; j < dim; ++j) {
      if (j == bar(i)) continue;
      Bound<M> best = quintic_min<M>(in, i, j, o, cnt);
      acc_min(cnt, best, halve<M>(badd(key[i], key[bar(j)])));
      out.set(i, j, best);
    }
    if (out.get(i, i) < zero) return false;
  }
  return true;
}

template <class M, class SIn, class SOut>
bool incr_strong_core(const SIn& in, SOut& out, const DiffConstraint<M>& o, MinCounter& cnt) {
  std::vector<Bound<M>> key = strong_keys<M>(in, o, cnt);
  return strong_sweep<M>(in, out, o, key, cnt);
}

// Integer variant: keys are tightened as they are computed, checked for a
// negative unary cycle, then the six-term sweep runs with even key sums.
// Returns false on inconsistency.
template <class M, class SIn, class SOut>
bool incr_tight_core(const SIn& in, SOut& out, const DiffConstraint<M>& o, MinCounter& cnt) {
  static_assert(M::id == NumericMode::CheckedInt, "tight closure is defined for integers only");
  const std::size_t dim = in.dim();
  std::vector<Bound<M>> key(dim);
  for (std::size_t i = 0; i < dim; ++i)
    key[i] = tighten_even<M>(quintic_min<M>(in, i, bar(i), o, cnt));
  for (std::size_t i = 0; i < dim; ++i)
    if (sum_negative(key[i], key[bar(i)])) return false;
  return strong_sweep<M>(in, out, o, key, cnt);
}

}  // namespace detail

// Seeds the new bound into the matrix, then reruns the shortest-path outer
// iterations from the smallest touched index. (2n - v) * 4n^2 counted mins;
// the two seeding mins are not counted.
template <class M>
ClosureOutcome<M> incr_mine(const Dbm<M>& m, const DiffConstraint<M>& o,
                            IncrStats* stats = nullptr) {
  MinCounter cnt;
  Dbm<M> out = m;
  out.min_coherent(o.a, o.b, Bound<M>::finite(o.d));
  const std::size_t dim = out.dim();
  const std::size_t v = std::min({o.a, o.b, bar(o.a), bar(o.b)});
  for (std::size_t k = v; k < dim; ++k)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        ++cnt.count;
        Bound<M> cand = badd(out(i, k), out(k, j));
        if (cand < out(i, j)) out(i, j) = cand;
      }
  detail::fill_stats(stats, "mine", cnt);
  ClosureOutcome<M> res = check_consistent(std::move(out));
  return res;
}

// Quadratic incremental closure: one five-term min per entry, consistency
// checked after the full pass. Exactly 16n^2 counted mins.
template <class M>
ClosureOutcome<M> incr(const Dbm<M>& m, const DiffConstraint<M>& o, IncrStats* stats = nullptr) {
  MinCounter cnt;
  Dbm<M> out = m;
  detail::ConstDenseStore<M> in{&m};
  detail::DenseStore<M> os{&out};
  detail::incr_core<M>(in, os, o, cnt);
  detail::fill_stats(stats, "incr", cnt);
  if (!detail::diag_nonnegative<M>(os)) return ClosureOutcome<M>::unsat();
  return ClosureOutcome<M>::closed(std::move(out));
}

// The same update with row-invariant subterms factored out; identical output
// to incr. 2n(2 + 4n) = 8n^2 + 4n counted mins; exits on the first row whose
// diagonal goes negative.
template <class M>
ClosureOutcome<M> incr_hoisted(const Dbm<M>& m, const DiffConstraint<M>& o,
                               IncrStats* stats = nullptr) {
  MinCounter cnt;
  const std::size_t dim = m.dim();
  const std::size_t a = o.a, b = o.b, ab = bar(o.a), bb = bar(o.b);
  const Bound<M> d = Bound<M>::finite(o.d);
  const Bound<M> zero = Bound<M>::of(0);
  Dbm<M> out = m;

  const Bound<M> t1 = badd(badd(d, m(ab, a)), d);
  const Bound<M> t2 = badd(badd(d, m(b, bb)), d);
  for (std::size_t i = 0; i < dim; ++i) {
    Bound<M> t3 = badd(m(i, a), d);
    detail::acc_min(cnt, t3, badd(m(i, bb), t1));
    Bound<M> t4 = badd(m(i, bb), d);
    detail::acc_min(cnt, t4, badd(m(i, a), t2));
    for (std::size_t j = 0; j < dim; ++j) {
      Bound<M> best = m(i, j);
      detail::acc_min(cnt, best, badd(t3, m(b, j)));
      detail::acc_min(cnt, best, badd(t4, m(ab, j)));
      out(i, j) = best;
    }
    if (out(i, i) < zero) {
      detail::fill_stats(stats, "hoist", cnt);
      return ClosureOutcome<M>::unsat();
    }
  }
  detail::fill_stats(stats, "hoist", cnt);
  return ClosureOutcome<M>::closed(std::move(out));
}

// Sufficient unsat test for adding x'_a - x'_b <= d to a closed matrix; no
// min operations. true implies the incremental closure is Unsat.
template <class M>
bool fast_unsat(const Dbm<M>& m, const DiffConstraint<M>& o) {
  const Bound<M> d = Bound<M>::finite(o.d);
  if (detail::sum_negative(m(o.b, o.a), d)) return true;
  if (detail::sum_negative(m(bar(o.a), bar(o.b)), d)) return true;
  // m[bar a][a] + d + m[b][bar b] + d < 0, evaluated without overflow
  const Bound<M>& p = m(bar(o.a), o.a);
  const Bound<M>& q = m(o.b, bar(o.b));
  if (p.is_inf() || q.is_inf()) return false;
  if constexpr (M::id == NumericMode::CheckedInt) {
    return static_cast<__int128>(p.value()) + static_cast<__int128>(q.value()) +
               2 * static_cast<__int128>(o.d) <
           0;
  } else {
    return p.value() + q.value() + o.d + o.d < typename M::value_type(0);
  }
}

// Incremental strong closure: key entries first (five-term min), then a
// six-term min on every non-key entry. Equals strengthen after incr.
// 8n + 10n(2n - 1) = 20n^2 - 2n counted mins.
template <class M>
ClosureOutcome<M> incr_strong(const Dbm<M>& m, const DiffConstraint<M>& o,
                              IncrStats* stats = nullptr) {
  MinCounter cnt;
  Dbm<M> out = m;
  detail::ConstDenseStore<M> in{&m};
  detail::DenseStore<M> os{&out};
  bool ok = detail::incr_strong_core<M>(in, os, o, cnt);
  detail::fill_stats(stats, "strong", cnt);
  if (!ok) return ClosureOutcome<M>::unsat();
  return ClosureOutcome<M>::closed(std::move(out));
}

// Code-motion variant for strongly closed inputs: keys need only one binary
// min, the six-term sweep then covers all entries with no key guard.
// 2n + 20n^2 counted mins.
template <class M>
ClosureOutcome<M> incr_strong_reduce(const Dbm<M>& m, const DiffConstraint<M>& o,
                                     IncrStats* stats = nullptr) {
  MinCounter cnt;
  const std::size_t dim = m.dim();
  const Bound<M> zero = Bound<M>::of(0);
  Dbm<M> out = m;

  detail::ConstDenseStore<M> in{&m};
  std::vector<Bound<M>> key(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Bound<M> best = m(i, bar(i));
    detail::acc_min(cnt, best, detail::sum3<M>(m(i, o.a), o.d, m(o.b, bar(i))));
    key[i] = best;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Bound<M> best = detail::quintic_min<M>(in, i, j, o, cnt);
      detail::acc_min(cnt, best, halve<M>(badd(key[i], key[bar(j)])));
      out(i, j) = best;
    }
    if (out(i, i) < zero) {
      detail::fill_stats(stats, "strong-reduce", cnt);
      return ClosureOutcome<M>::unsat();
    }
  }
  detail::fill_stats(stats, "strong-reduce", cnt);
  return ClosureOutcome<M>::closed(std::move(out));
}

// Incremental tight closure (integer mode): keys are tightened as computed,
// integer consistency is checked on the new keys, then the six-term sweep
// runs with even key sums. Equals strengthen after tighten after incr.
template <class M>
ClosureOutcome<M> incr_tight(const Dbm<M>& m, const DiffConstraint<M>& o,
                             IncrStats* stats = nullptr) {
  MinCounter cnt;
  Dbm<M> out = m;
  detail::ConstDenseStore<M> in{&m};
  detail::DenseStore<M> os{&out};
  bool ok = detail::incr_tight_core<M>(in, os, o, cnt);
  detail::fill_stats(stats, "tight", cnt);
  if (!ok) return ClosureOutcome<M>::unsat();
  return ClosureOutcome<M>::closed(std::move(out));
}

// In-place quadratic incremental closure over a single buffer, visiting
// entries in the given order; the result does not depend on the order.
template <class M>
ClosureOutcome<M> incr_in_situ(Dbm<M> m, const DiffConstraint<M>& o, const TraversalOrder& order,
                               IncrStats* stats = nullptr) {
  if (order.dim() != m.dim())
    throw InvalidTraversal("traversal dimension does not match the matrix");
  MinCounter cnt;
  detail::DenseStore<M> s{&m};
  for (std::size_t r = 0; r < order.size(); ++r) {
    const auto& [i, j] = order.at(r);
    m(i, j) = detail::quintic_min<M>(s, i, j, o, cnt);
  }
  detail::fill_stats(stats, "incr-in-situ", cnt);
  if (!detail::diag_nonnegative<M>(s)) return ClosureOutcome<M>::unsat();
  return ClosureOutcome<M>::closed(std::move(m));
}

// In-place incremental strong closure; requires a key-first traversal so the
// six-term updates read final key values.
template <class M>
ClosureOutcome<M> incr_strong_in_situ(Dbm<M> m, const DiffConstraint<M>& o,
                                      const TraversalOrder& order, IncrStats* stats = nullptr) {
  if (order.dim() != m.dim())
    throw InvalidTraversal("traversal dimension does not match the matrix");
  if (!order.key_first())
    throw InvalidTraversal("strong in-place update requires a key-first traversal");
  MinCounter cnt;
  detail::DenseStore<M> s{&m};
  for (std::size_t r = 0; r < order.size(); ++r) {
    const auto& [i, j] = order.at(r);
    if (j == bar(i)) {
      m(i, j) = detail::quintic_min<M>(s, i, j, o, cnt);
    } else {
      Bound<M> best = detail::quintic_min<M>(s, i, j, o, cnt);
      detail::acc_min(cnt, best, halve<M>(badd(m(i, bar(i)), m(bar(j), j))));
      m(i, j) = best;
    }
  }
  detail::fill_stats(stats, "strong-in-situ", cnt);
  if (!detail::diag_nonnegative<M>(s)) return ClosureOutcome<M>::unsat();
  return ClosureOutcome<M>::closed(std::move(m));
}

// In-place incremental tight closure (integer mode, key-first traversal);
// integer consistency is checked between the key phase and the sweep.
template <class M>
ClosureOutcome<M> incr_tight_in_situ(Dbm<M> m, const DiffConstraint<M>& o,
                                     const TraversalOrder& order, IncrStats* stats = nullptr) {
  static_assert(M::id == NumericMode::CheckedInt, "tight closure is defined for integers only");
  if (order.dim() != m.dim())
    throw InvalidTraversal("traversal dimension does not match the matrix");
  if (!order.key_first())
    throw InvalidTraversal("tight in-place update requires a key-first traversal");
  MinCounter cnt;
  const std::size_t dim = m.dim();
  detail::DenseStore<M> s{&m};
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& [i, j] = order.at(r);
    m(i, j) = tighten_even<M>(detail::quintic_min<M>(s, i, j, o, cnt));
  }
  if (!detail::int_consistent_core<M>(s)) {
    detail::fill_stats(stats, "tight-in-situ", cnt);
    return ClosureOutcome<M>::unsat();
  }
  for (std::size_t r = dim; r < order.size(); ++r) {
    const auto& [i, j] = order.at(r);
    Bound<M> best = detail::quintic_min<M>(s, i, j, o, cnt);
    detail::acc_min(cnt, best, halve<M>(badd(m(i, bar(i)), m(bar(j), j))));
    m(i, j) = best;
  }
  detail::fill_stats(stats, "tight-in-situ", cnt);
  if (!detail::diag_nonnegative<M>(s)) return ClosureOutcome<M>::unsat();
  return ClosureOutcome<M>::closed(std::move(m));
}

// Translates an octagonal constraint and dispatches its difference form to
// the given incremental algorithm. A binary constraint's two differences are
// coherence mirrors, so one call suffices; a unary constraint arrives with
// b = bar(a) and a doubled bound.
template <class M, class Algo>
auto add_octagonal(const Dbm<M>& m, const OctConstraint<M>& c, Algo&& algo) {
  auto diffs = translate(c);
  return algo(m, diffs.front());
}

// Row-parallel variant of incr: rows write disjoint output entries and read
// only the input, so the pass is race-free; the unsat check runs after the
// sweep. Output and min count match incr exactly.
template <class M>
ClosureOutcome<M> incr_par(const Dbm<M>& m, const DiffConstraint<M>& o,
                           IncrStats* stats = nullptr) {
  MinCounter cnt;
  Dbm<M> out = m;
  const std::size_t dim = m.dim();
  detail::ConstDenseStore<M> in{&m};
  std::uint64_t mins = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : mins)
#endif
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(dim); ++ii) {
    MinCounter local;
    const std::size_t i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < dim; ++j)
      out(i, j) = detail::quintic_min<M>(in, i, j, o, local);
    mins += local.count;
  }
  cnt.count += mins;
  detail::fill_stats(stats, "incr-par", cnt);
  detail::DenseStore<M> os{&out};
  if (!detail::diag_nonnegative<M>(os)) return ClosureOutcome<M>::unsat();
  return ClosureOutcome<M>::closed(std::move(out));
}

// Row-parallel variant of incr_strong: the serial key phase feeds a parallel
// six-term sweep; no early exit, the diagonal scan runs after the sweep.
template <class M>
ClosureOutcome<M> incr_strong_par(const Dbm<M>& m, const DiffConstraint<M>& o,
                                  IncrStats* stats = nullptr) {
  MinCounter cnt;
  Dbm<M> out = m;
  const std::size_t dim = m.dim();
  detail::ConstDenseStore<M> in{&m};
  std::vector<Bound<M>> key = detail::strong_keys<M>(in, o, cnt);
  std::uint64_t mins = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : mins)
#endif
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(dim); ++ii) {
    MinCounter local;
    const std::size_t i = static_cast<std::size_t>(ii);
    out(i, bar(i)) = key[i];
    for (std::size_t j = 0; j < dim; ++j) {
      if (j == bar(i)) continue;
      Bound<M> best = detail::quintic_min<M>(in, i, j, o, local);
      detail::acc_min(local, best, halve<M>(badd(key[i], key[bar(j)])));
      out(i, j) = best;
    }
    mins += local.count;
  }
  cnt.count += mins;
  detail::fill_stats(stats, "strong-par", cnt);
  detail::DenseStore<M> os{&out};
  if (!detail::diag_nonnegative<M>(os)) return ClosureOutcome<M>::unsat();
  return ClosureOutcome<M>::closed(std::move(out));
}

}  // namespace oct
