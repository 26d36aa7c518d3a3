#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "oct/closure.hpp"
#include "oct/dbm.hpp"
#include "oct/incremental.hpp"

namespace oct {

// Linear index of the coherence class of (i, j) in the half-matrix layout.
// Canonical representatives are the pairs with i >= j or i == bar(j); row i
// of the canonical set starts at offset floor((i+1)^2 / 2), giving row sizes
// 2,2,4,4,... and total 2n(n+1).
inline std::size_t half_index(std::size_t i, std::size_t j) {
  if (i >= j || i == bar(j)) return j + ((i + 1) * (i + 1)) / 2;
  return half_index(bar(j), bar(i));
}

// Compact DBM: one cell per coherence class, each cell an opaque handle into
// an append-only cache of distinct bound values. Handle 0 is always +inf.
template <class M>
class CoDbm {
 public:
  using CacheHandle = std::uint32_t;

  explicit CoDbm(std::size_t n_vars) : n_(n_vars), cells_(2 * n_vars * (n_vars + 1), 0) {
    assert(n_vars >= 1);
    cache_.push_back(Bound<M>::inf());
    sorted_.push_back(0);
  }

  // Requires a coherent dense matrix: each coherence class stores one value.
  static CoDbm from_dense(const Dbm<M>& m) {
    if (!is_coherent(m))
      throw PreconditionError("compact storage requires a coherent matrix");
    CoDbm c(m.vars());
    const std::size_t dim = m.dim();
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (i >= j || i == bar(j)) c.set(i, j, m(i, j));
    return c;
  }

  Dbm<M> to_dense() const {
    Dbm<M> m = Dbm<M>::unconstrained(n_);
    const std::size_t dim = m.dim();
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = get(i, j);
    return m;
  }

  std::size_t vars() const { return n_; }
  std::size_t dim() const { return 2 * n_; }
  NumericMode mode() const { return M::id; }
  std::size_t cell_count() const { return cells_.size(); }
  std::size_t cache_size() const { return cache_.size(); }

  Bound<M> get(std::size_t i, std::size_t j) const { return cache_[cells_[half_index(i, j)]]; }
  CacheHandle handle_at(std::size_t i, std::size_t j) const { return cells_[half_index(i, j)]; }
  const Bound<M>& cache_value(CacheHandle h) const { return cache_[h]; }

  void set(std::size_t i, std::size_t j, const Bound<M>& b) {
    cells_[half_index(i, j)] = intern(b);
  }

  // Bisection over the sorted handle table; appends on a miss. The cache
  // never shrinks and its values stay pairwise distinct.
  CacheHandle intern(const Bound<M>& b) {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), b,
                               [&](CacheHandle h, const Bound<M>& v) { return cache_[h] < v; });
    if (it != sorted_.end() && cache_[*it] == b) return *it;
    CacheHandle h = static_cast<CacheHandle>(cache_.size());
    cache_.push_back(b);
    sorted_.insert(it, h);
    return h;
  }

 private:
  std::size_t n_;
  std::vector<CacheHandle> cells_;
  std::vector<Bound<M>> cache_;
  std::vector<CacheHandle> sorted_;
};

template <class M>
struct CoOutcome {
  std::optional<CoDbm<M>> result;

  static CoOutcome closed(CoDbm<M> c) { return CoOutcome{std::move(c)}; }
  static CoOutcome unsat() { return CoOutcome{std::nullopt}; }
  bool is_unsat() const { return !result.has_value(); }
  const CoDbm<M>& codbm() const {
    assert(result.has_value());
    return *result;
  }
};

enum class CoAlgo { Closure, StrongClosure, TightClosure, Incr, IncrStrong, IncrTight };

namespace detail {

template <class M>
struct CoStore {
  CoDbm<M>* c;
  std::size_t dim() const { return c->dim(); }
  Bound<M> get(std::size_t i, std::size_t j) const { return c->get(i, j); }
  void set(std::size_t i, std::size_t j, const Bound<M>& b) { c->set(i, j, b); }
};

template <class M>
struct ConstCoStore {
  const CoDbm<M>* c;
  std::size_t dim() const { return c->dim(); }
  Bound<M> get(std::size_t i, std::size_t j) const { return c->get(i, j); }
};

}  // namespace detail

// Executes an algorithm through the compact storage boundary; results convert
// to exactly the dense algorithm's output. The incremental variants require o.
template <class M>
CoOutcome<M> run_over(const CoDbm<M>& c, CoAlgo alg, const DiffConstraint<M>* o = nullptr,
                      MinCounter* counter = nullptr) {
  MinCounter scratch;
  MinCounter& cnt = counter ? *counter : scratch;

  auto closure_pipeline = [&](bool strengthen_pass, bool tighten_pass) -> CoOutcome<M> {
    CoDbm<M> work = c;
    detail::CoStore<M> s{&work};
    detail::fw_core<M>(s, cnt);
    if (!detail::diag_nonnegative<M>(s)) return CoOutcome<M>::unsat();
    detail::reset_diag<M>(s);
    if (tighten_pass) {
      detail::tighten_core<M>(s);
      if (!detail::int_consistent_core<M>(s)) return CoOutcome<M>::unsat();
    }
    if (strengthen_pass) detail::strengthen_core<M>(s, cnt);
    return CoOutcome<M>::closed(std::move(work));
  };

  switch (alg) {
    case CoAlgo::Closure:
      return closure_pipeline(false, false);
    case CoAlgo::StrongClosure:
      return closure_pipeline(true, false);
    case CoAlgo::TightClosure:
      if constexpr (M::id == NumericMode::CheckedInt) {
        return closure_pipeline(true, true);
      } else {
        throw PreconditionError("tight closure requires int mode");
      }
    case CoAlgo::Incr: {
      if (!o) throw PreconditionError("incremental run needs a constraint");
      CoDbm<M> out = c;
      detail::ConstCoStore<M> in{&c};
      detail::CoStore<M> os{&out};
      detail::incr_core<M>(in, os, *o, cnt);
      if (!detail::diag_nonnegative<M>(os)) return CoOutcome<M>::unsat();
      return CoOutcome<M>::closed(std::move(out));
    }
    case CoAlgo::IncrStrong: {
      if (!o) throw PreconditionError("incremental run needs a constraint");
      CoDbm<M> out = c;
      detail::ConstCoStore<M> in{&c};
      detail::CoStore<M> os{&out};
      if (!detail::incr_strong_core<M>(in, os, *o, cnt)) return CoOutcome<M>::unsat();
      return CoOutcome<M>::closed(std::move(out));
    }
    case CoAlgo::IncrTight:
      if constexpr (M::id == NumericMode::CheckedInt) {
        if (!o) throw PreconditionError("incremental run needs a constraint");
        CoDbm<M> out = c;
        detail::ConstCoStore<M> in{&c};
        detail::CoStore<M> os{&out};
        if (!detail::incr_tight_core<M>(in, os, *o, cnt)) return CoOutcome<M>::unsat();
        return CoOutcome<M>::closed(std::move(out));
      } else {
        throw PreconditionError("incremental tight closure requires int mode");
      }
  }
  throw PreconditionError("unknown compact algorithm selector");
}

}  // namespace oct
