#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "oct/bounds.hpp"
#include "oct/dbm.hpp"

namespace oct {

// Result of a closing operation: the closed matrix, or unsatisfiability.
template <class M>
struct ClosureOutcome {
  std::optional<Dbm<M>> result;

  static ClosureOutcome closed(Dbm<M> m) { return ClosureOutcome{std::move(m)}; }
  static ClosureOutcome unsat() { return ClosureOutcome{std::nullopt}; }

  bool is_unsat() const { return !result.has_value(); }
  bool is_closed() const { return result.has_value(); }
  const Dbm<M>& dbm() const {
    assert(result.has_value());
    return *result;
  }
  Dbm<M>& dbm() {
    assert(result.has_value());
    return *result;
  }
};

namespace detail {

// Storage adaptors: the algorithm cores below are generic over get/set/dim so
// the dense matrix and the compact handle-based backend share one body.
template <class M>
struct DenseStore {
  Dbm<M>* m;
  std::size_t dim() const { return m->dim(); }
  const Bound<M>& get(std::size_t i, std::size_t j) const { return (*m)(i, j); }
  void set(std::size_t i, std::size_t j, const Bound<M>& b) { (*m)(i, j) = b; }
};

template <class M>
struct ConstDenseStore {
  const Dbm<M>* m;
  std::size_t dim() const { return m->dim(); }
  const Bound<M>& get(std::size_t i, std::size_t j) const { return (*m)(i, j); }
};

// Textbook k-outer Floyd-Warshall; exactly dim^3 counted mins.
template <class M, class S>
void fw_core(S& s, MinCounter& cnt) {
  const std::size_t dim = s.dim();
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        ++cnt.count;
        Bound<M> cand = badd(s.get(i, k), s.get(k, j));
        if (cand < s.get(i, j)) s.set(i, j, cand);
      }
}

template <class M, class S>
bool diag_nonnegative(const S& s) {
  const Bound<M> zero = Bound<M>::of(0);
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (s.get(i, i) < zero) return false;
  return true;
}

template <class M, class S>
void reset_diag(S& s) {
  const Bound<M> zero = Bound<M>::of(0);
  for (std::size_t i = 0; i < s.dim(); ++i) s.set(i, i, zero);
}

// m[i][j] <- min(m[i][j], (m[i][bar i] + m[bar j][j]) / 2); key entries are
// fixpoints, so reading and writing one buffer is exact. 1 min per entry.
template <class M, class S>
void strengthen_core(S& s, MinCounter& cnt) {
  const std::size_t dim = s.dim();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      ++cnt.count;
      Bound<M> cand = halve<M>(badd(s.get(i, bar(i)), s.get(bar(j), j)));
      if (cand < s.get(i, j)) s.set(i, j, cand);
    }
}

// Key entries rounded down to even; self-mirrored, so coherence is kept.
template <class M, class S>
void tighten_core(S& s) {
  const std::size_t dim = s.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    Bound<M> t = tighten_even<M>(s.get(i, bar(i)));
    if (t != s.get(i, bar(i))) s.set(i, bar(i), t);
  }
}

// No negative unary cycle: forall i, m[i][bar i] + m[bar i][i] >= 0.
template <class M, class S>
bool int_consistent_core(const S& s) {
  const std::size_t dim = s.dim();
  for (std::size_t i = 0; i < dim; ++i)
    if (sum_negative(s.get(i, bar(i)), s.get(bar(i), i))) return false;
  return true;
}

}  // namespace detail

// All-pairs shortest paths over the constraint graph; diagonals carry minimal
// cycle weights and are not reset here. Exactly 8n^3 counted mins.
template <class M>
Dbm<M> floyd_warshall(const Dbm<M>& m, MinCounter* counter = nullptr) {
  MinCounter scratch;
  MinCounter& cnt = counter ? *counter : scratch;
  Dbm<M> out = m;
  detail::DenseStore<M> s{&out};
  detail::fw_core<M>(s, cnt);
  return out;
}

// Row-parallel Floyd-Warshall, bit-identical to the serial version: while the
// pivot diagonal is nonnegative, row k and column k are fixpoints of iteration
// k, so rows can be relaxed independently with conditional stores. The first
// negative pivot (only reachable en route to UNSAT) drops back to the serial
// loop for the remaining iterations.
template <class M>
Dbm<M> floyd_warshall_par(const Dbm<M>& m, MinCounter* counter = nullptr) {
  MinCounter scratch;
  MinCounter& cnt = counter ? *counter : scratch;
  Dbm<M> out = m;
  const std::size_t dim = out.dim();
  const Bound<M> zero = Bound<M>::of(0);
  std::uint64_t mins = 0;
  for (std::size_t k = 0; k < dim; ++k) {
    if (out(k, k) < zero) {
      for (std::size_t kk = k; kk < dim; ++kk)
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < dim; ++j) {
            ++mins;
            Bound<M> cand = badd(out(i, kk), out(kk, j));
            if (cand < out(i, j)) out(i, j) = cand;
          }
      break;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : mins)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(dim); ++i) {
      const Bound<M> mik = out(static_cast<std::size_t>(i), k);
      for (std::size_t j = 0; j < dim; ++j) {
        ++mins;
        Bound<M> cand = badd(mik, out(k, j));
        if (cand < out(static_cast<std::size_t>(i), j)) out(static_cast<std::size_t>(i), j) = cand;
      }
    }
  }
  cnt.count += mins;
  return out;
}

// Unsat on a negative diagonal entry; otherwise resets the diagonal to zero.
template <class M>
ClosureOutcome<M> check_consistent(Dbm<M> m) {
  detail::DenseStore<M> s{&m};
  if (!detail::diag_nonnegative<M>(s)) return ClosureOutcome<M>::unsat();
  detail::reset_diag<M>(s);
  return ClosureOutcome<M>::closed(std::move(m));
}

// Propagates each pair of unary bounds through every entry; on closed input
// the result is strongly closed. Exactly 4n^2 counted mins.
template <class M>
Dbm<M> strengthen(const Dbm<M>& m, MinCounter* counter = nullptr) {
  MinCounter scratch;
  MinCounter& cnt = counter ? *counter : scratch;
  Dbm<M> out = m;
  detail::DenseStore<M> s{&out};
  detail::strengthen_core<M>(s, cnt);
  return out;
}

// Row-parallel strengthening; key entries are never written (their update is
// the identity), so all cross-row reads are of stable entries.
template <class M>
Dbm<M> strengthen_par(const Dbm<M>& m, MinCounter* counter = nullptr) {
  MinCounter scratch;
  MinCounter& cnt = counter ? *counter : scratch;
  Dbm<M> out = m;
  const std::size_t dim = out.dim();
  std::uint64_t mins = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : mins)
#endif
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(dim); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < dim; ++j) {
      ++mins;
      Bound<M> cand = halve<M>(badd(out(i, bar(i)), out(bar(j), j)));
      if (cand < out(i, j)) out(i, j) = cand;
    }
  }
  cnt.count += mins;
  return out;
}

// floyd_warshall, then consistency, then strengthen.
template <class M>
ClosureOutcome<M> strong_closure(const Dbm<M>& m, MinCounter* counter = nullptr) {
  ClosureOutcome<M> c = check_consistent(floyd_warshall(m, counter));
  if (c.is_unsat()) return c;
  return ClosureOutcome<M>::closed(strengthen(c.dbm(), counter));
}

// Rounds every key entry down to the nearest even value (integer mode only).
template <class M>
Dbm<M> tighten(const Dbm<M>& m) {
  static_assert(M::id == NumericMode::CheckedInt, "tightening is defined for integers only");
  Dbm<M> out = m;
  detail::DenseStore<M> s{&out};
  detail::tighten_core<M>(s);
  return out;
}

// Unsat iff some tightened unary pair sums below zero.
template <class M>
ClosureOutcome<M> check_integer_consistent(Dbm<M> m) {
  static_assert(M::id == NumericMode::CheckedInt, "integer consistency needs int mode");
  detail::DenseStore<M> s{&m};
  if (!detail::int_consistent_core<M>(s)) return ClosureOutcome<M>::unsat();
  return ClosureOutcome<M>::closed(std::move(m));
}

// floyd_warshall -> consistency -> tighten -> integer consistency -> strengthen.
// After tightening, every key entry is even, so strengthening halves exactly.
template <class M>
ClosureOutcome<M> tight_closure(const Dbm<M>& m, MinCounter* counter = nullptr) {
  static_assert(M::id == NumericMode::CheckedInt, "tight closure is defined for integers only");
  ClosureOutcome<M> c = check_consistent(floyd_warshall(m, counter));
  if (c.is_unsat()) return c;
  ClosureOutcome<M> t = check_integer_consistent(tighten(c.dbm()));
  if (t.is_unsat()) return t;
  return ClosureOutcome<M>::closed(strengthen(t.dbm(), counter));
}

}  // namespace oct
