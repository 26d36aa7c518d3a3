#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

#include "oct/bounds.hpp"
#include "oct/errors.hpp"

namespace oct {

// Index involution pairing the positive and negative form of a variable.
inline constexpr std::size_t bar(std::size_t i) { return i ^ 1; }

// Dense 2n x 2n matrix of upper bounds; entry (i,j) means x'_i - x'_j <= e(i,j).
// The public mutation API writes both members of a coherence class; algorithm
// kernels write raw entries and preserve coherence as a verified property.
template <class M>
class Dbm {
 public:
  using mode_type = M;
  using bound_type = Bound<M>;

  // All entries +inf, diagonal included: a fresh pre-closure matrix.
  static Dbm unconstrained(std::size_t n_vars) { return Dbm(n_vars); }

  // The unconstrained octagon in closed form: zero diagonal, +inf elsewhere.
  static Dbm top(std::size_t n_vars) {
    Dbm m(n_vars);
    for (std::size_t i = 0; i < m.dim(); ++i) m(i, i) = bound_type::of(0);
    return m;
  }

  std::size_t vars() const { return n_; }
  std::size_t dim() const { return 2 * n_; }
  NumericMode mode() const { return M::id; }

  const bound_type& operator()(std::size_t i, std::size_t j) const {
    assert(i < dim() && j < dim());
    return e_[i * dim() + j];
  }
  bound_type& operator()(std::size_t i, std::size_t j) {
    assert(i < dim() && j < dim());
    return e_[i * dim() + j];
  }

  void set_coherent(std::size_t i, std::size_t j, const bound_type& b) {
    (*this)(i, j) = b;
    (*this)(bar(j), bar(i)) = b;
  }

  // Pointwise-min write used when accumulating constraints.
  void min_coherent(std::size_t i, std::size_t j, const bound_type& b) {
    if (b < (*this)(i, j)) set_coherent(i, j, b);
  }

 private:
  explicit Dbm(std::size_t n_vars) : n_(n_vars), e_(4 * n_vars * n_vars) {
    assert(n_vars >= 1);
  }

  std::size_t n_;
  std::vector<bound_type> e_;
};

template <class M>
Dbm<M> top(std::size_t n_vars) {
  return Dbm<M>::top(n_vars);
}

// One octagonal inequality over program variables: +-x_i +-x_j <= d or +-x_i <= d.
template <class M>
struct OctConstraint {
  using value_type = typename M::value_type;

  bool binary = false;
  int sign_i = +1;
  std::size_t i = 0;
  int sign_j = +1;
  std::size_t j = 0;  // meaningful iff binary
  value_type d{};

  static OctConstraint unary(int sign_i, std::size_t i, value_type d) {
    OctConstraint c;
    c.binary = false;
    c.sign_i = sign_i;
    c.i = i;
    c.d = std::move(d);
    return c;
  }
  static OctConstraint make_binary(int sign_i, std::size_t i, int sign_j, std::size_t j,
                                   value_type d) {
    assert(i != j);
    OctConstraint c;
    c.binary = true;
    c.sign_i = sign_i;
    c.i = i;
    c.sign_j = sign_j;
    c.j = j;
    c.d = std::move(d);
    return c;
  }
};

// A single difference over extended variables: x'_a - x'_b <= d, a != b.
template <class M>
struct DiffConstraint {
  std::size_t a = 0;
  std::size_t b = 0;
  typename M::value_type d{};
};

// Rewrites an octagonal constraint into its difference form(s). Binary
// constraints yield two differences that are each other's coherence mirror;
// unary constraints yield one self-mirrored difference with a doubled bound.
template <class M>
std::vector<DiffConstraint<M>> translate(const OctConstraint<M>& c) {
  using D = DiffConstraint<M>;
  if (!c.binary) {
    typename M::value_type dd = M::add(c.d, c.d);
    if (c.sign_i > 0) return {D{2 * c.i, 2 * c.i + 1, dd}};
    return {D{2 * c.i + 1, 2 * c.i, dd}};
  }
  std::size_t i = c.i, j = c.j;
  int si = c.sign_i, sj = c.sign_j;
  if (si < 0 && sj > 0) {  // -x_i + x_j <= d is x_j - x_i <= d
    std::swap(i, j);
    si = +1;
    sj = -1;
  }
  if (si > 0 && sj < 0) return {D{2 * i, 2 * j, c.d}, D{2 * j + 1, 2 * i + 1, c.d}};
  if (si > 0 && sj > 0) return {D{2 * i, 2 * j + 1, c.d}, D{2 * j, 2 * i + 1, c.d}};
  return {D{2 * i + 1, 2 * j, c.d}, D{2 * j + 1, 2 * i, c.d}};
}

// Accumulates constraints into a fresh all-inf matrix (diagonal included;
// closure later establishes the zero diagonal) by coherent pointwise min.
template <class M>
Dbm<M> from_constraints(std::size_t n_vars, std::span<const OctConstraint<M>> cs) {
  Dbm<M> m = Dbm<M>::unconstrained(n_vars);
  for (const auto& c : cs) {
    assert(c.i < n_vars && (!c.binary || c.j < n_vars));
    for (const auto& dc : translate(c))
      m.min_coherent(dc.a, dc.b, Bound<M>::finite(dc.d));
  }
  return m;
}

template <class M>
Dbm<M> from_constraints(std::size_t n_vars, const std::vector<OctConstraint<M>>& cs) {
  return from_constraints<M>(n_vars, std::span<const OctConstraint<M>>(cs));
}

namespace detail {

// Exact comparisons that never overflow and never halve, so the classifier
// below works identically in all numeric modes.

// x <= a + b
template <class M>
bool le_sum(const Bound<M>& x, const Bound<M>& a, const Bound<M>& b) {
  if (a.is_inf() || b.is_inf()) return true;
  if (x.is_inf()) return false;
  if constexpr (M::id == NumericMode::CheckedInt) {
    return static_cast<__int128>(x.value()) <=
           static_cast<__int128>(a.value()) + static_cast<__int128>(b.value());
  } else {
    return x.value() <= a.value() + b.value();
  }
}

// 2x <= a + b, i.e. x <= (a + b)/2
template <class M>
bool le_half_sum(const Bound<M>& x, const Bound<M>& a, const Bound<M>& b) {
  if (a.is_inf() || b.is_inf()) return true;
  if (x.is_inf()) return false;
  if constexpr (M::id == NumericMode::CheckedInt) {
    return 2 * static_cast<__int128>(x.value()) <=
           static_cast<__int128>(a.value()) + static_cast<__int128>(b.value());
  } else {
    return x.value() + x.value() <= a.value() + b.value();
  }
}

// (a + b)/2 <= x + y
template <class M>
bool half_sum_le_sum(const Bound<M>& a, const Bound<M>& b, const Bound<M>& x,
                     const Bound<M>& y) {
  if (x.is_inf() || y.is_inf()) return true;
  if (a.is_inf() || b.is_inf()) return false;
  if constexpr (M::id == NumericMode::CheckedInt) {
    return static_cast<__int128>(a.value()) + static_cast<__int128>(b.value()) <=
           2 * (static_cast<__int128>(x.value()) + static_cast<__int128>(y.value()));
  } else {
    return a.value() + b.value() <= (x.value() + y.value()) + (x.value() + y.value());
  }
}

// a + b < 0
template <class M>
bool sum_negative(const Bound<M>& a, const Bound<M>& b) {
  if (a.is_inf() || b.is_inf()) return false;
  if constexpr (M::id == NumericMode::CheckedInt) {
    return static_cast<__int128>(a.value()) + static_cast<__int128>(b.value()) < 0;
  } else {
    return a.value() + b.value() < 0;
  }
}

}  // namespace detail

struct DbmProperties {
  bool coherent = false;
  bool consistent = false;
  bool closed = false;
  bool strongly_closed = false;
  bool weakly_closed = false;
  bool tightly_closed = false;
  // False when the mode has no evenness notion; tightly_closed is then
  // reported false and callers should surface a warning.
  bool tight_supported = false;
};

// O(dim^2) coherence test, usable on hot paths unlike the full classifier.
template <class M>
bool is_coherent(const Dbm<M>& m) {
  const std::size_t dim = m.dim();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (m(i, j) != m(bar(j), bar(i))) return false;
  return true;
}

// Brute-force property oracle: every flag evaluated by direct quantifier
// expansion (O(dim^3)); reference semantics for all fast predicates.
template <class M>
DbmProperties classify(const Dbm<M>& m) {
  const std::size_t dim = m.dim();
  const Bound<M> zero = Bound<M>::of(0);
  DbmProperties p;

  p.coherent = is_coherent(m);

  p.consistent = true;
  for (std::size_t i = 0; i < dim; ++i)
    if (m(i, i) < zero) p.consistent = false;

  bool zero_diag = true;
  for (std::size_t i = 0; i < dim; ++i)
    if (m(i, i) != zero) zero_diag = false;

  bool triangle = true;
  for (std::size_t i = 0; i < dim && triangle; ++i)
    for (std::size_t j = 0; j < dim && triangle; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        if (!detail::le_sum(m(i, j), m(i, k), m(k, j))) {
          triangle = false;
          break;
        }
  p.closed = zero_diag && triangle;

  bool strength = true;
  for (std::size_t i = 0; i < dim && strength; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (!detail::le_half_sum(m(i, j), m(i, bar(i)), m(bar(j), j))) {
        strength = false;
        break;
      }
  p.strongly_closed = p.closed && strength;

  bool weak = true;
  for (std::size_t i = 0; i < dim && weak; ++i)
    for (std::size_t j = 0; j < dim && weak; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        bool ok = detail::le_sum(m(i, j), m(i, k), m(k, j)) ||
                  detail::half_sum_le_sum(m(i, bar(i)), m(bar(j), j), m(i, k), m(k, j));
        if (!ok) {
          weak = false;
          break;
        }
      }
  p.weakly_closed = zero_diag && weak;

  if constexpr (M::id == NumericMode::CheckedInt) {
    p.tight_supported = true;
    bool even = true;
    for (std::size_t i = 0; i < dim; ++i) {
      const Bound<M>& key = m(i, bar(i));
      if (key.is_finite() && !M::is_even(key.value())) even = false;
    }
    p.tightly_closed = p.strongly_closed && even;
  } else {
    p.tight_supported = false;
    p.tightly_closed = false;
  }
  return p;
}

// Membership of a rational point in the octagon's concretization.
inline bool gamma_contains(const Dbm<RatMode>& m, std::span<const mpq_class> point) {
  assert(point.size() == m.vars());
  const std::size_t dim = m.dim();
  auto coord = [&](std::size_t k) -> mpq_class {
    mpq_class v = point[k / 2];
    return (k % 2 == 0) ? v : mpq_class(-v);
  };
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const Bound<RatMode>& b = m(i, j);
      if (b.is_inf()) continue;
      if (coord(i) - coord(j) > b.value()) return false;
    }
  return true;
}

inline bool gamma_contains(const Dbm<RatMode>& m, const std::vector<mpq_class>& point) {
  return gamma_contains(m, std::span<const mpq_class>(point));
}

template <class M>
bool dbm_equal(const Dbm<M>& m1, const Dbm<M>& m2) {
  if (m1.vars() != m2.vars())
    throw DimensionMismatch("comparing DBMs over " + std::to_string(m1.vars()) + " and " +
                            std::to_string(m2.vars()) + " variables");
  const std::size_t dim = m1.dim();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (m1(i, j) != m2(i, j)) return false;
  return true;
}

}  // namespace oct
