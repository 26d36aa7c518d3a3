#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <utility>

#include <gmpxx.h>

#include "oct/errors.hpp"

namespace oct {

enum class NumericMode { ExactRational, CheckedInt, BinaryFloat64 };

inline const char* mode_name(NumericMode m) {
  switch (m) {
    case NumericMode::ExactRational: return "rat";
    case NumericMode::CheckedInt: return "int";
    case NumericMode::BinaryFloat64: return "f64";
  }
  return "?";
}

// Arithmetic policy: exact arbitrary-precision rationals.
struct RatMode {
  using value_type = mpq_class;
  static constexpr NumericMode id = NumericMode::ExactRational;

  static value_type add(const value_type& a, const value_type& b) { return a + b; }
  static value_type halve(const value_type& v) { return v / 2; }
  static value_type tighten_down(const value_type& v) {
    mpq_class h = v / 2;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return mpq_class(2 * q);
  }
  static value_type from_int(long long v) { return mpq_class(static_cast<long>(v)); }
};

// Arithmetic policy: 64-bit integers with overflow detection.
struct IntMode {
  using value_type = std::int64_t;
  static constexpr NumericMode id = NumericMode::CheckedInt;

  static value_type add(value_type a, value_type b) {
    value_type r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError(a, b);
    return r;
  }
  static value_type halve(value_type v) {
    if (v % 2 != 0) throw OddIntegerHalving(v);
    return v / 2;
  }
  // 2*floor(v/2); arithmetic shift keeps INT64_MIN (even) fixed.
  static value_type tighten_down(value_type v) { return 2 * (v >> 1); }
  static bool is_even(value_type v) { return v % 2 == 0; }
  static value_type from_int(long long v) { return v; }
};

// Arithmetic policy: IEEE double, round to nearest, exact comparisons.
struct F64Mode {
  using value_type = double;
  static constexpr NumericMode id = NumericMode::BinaryFloat64;

  static value_type add(value_type a, value_type b) { return a + b; }
  static value_type halve(value_type v) { return v * 0.5; }
  static value_type tighten_down(value_type v) { return 2.0 * std::floor(v * 0.5); }
  static value_type from_int(long long v) { return static_cast<double>(v); }
};

// A finite value in the active numeric mode, or +inf. -inf never occurs.
template <class M>
class Bound {
 public:
  using mode = M;
  using value_type = typename M::value_type;

  Bound() = default;  // +inf

  static Bound inf() { return Bound(); }
  static Bound finite(value_type v) {
    Bound b;
    b.inf_ = false;
    b.v_ = std::move(v);
    return b;
  }
  static Bound of(long long v) { return finite(M::from_int(v)); }

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }
  const value_type& value() const {
    assert(!inf_);
    return v_;
  }

  friend bool operator==(const Bound& a, const Bound& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Bound& a, const Bound& b) { return !(a == b); }
  // Total order with +inf as the unique maximum.
  friend bool operator<(const Bound& a, const Bound& b) {
    if (b.inf_) return !a.inf_;
    if (a.inf_) return false;
    return a.v_ < b.v_;
  }
  friend bool operator>(const Bound& a, const Bound& b) { return b < a; }
  friend bool operator<=(const Bound& a, const Bound& b) { return !(b < a); }
  friend bool operator>=(const Bound& a, const Bound& b) { return !(a < b); }

 private:
  bool inf_ = true;
  value_type v_{};
};

// a + b with +inf absorbing; float sums that leave the finite range become +inf.
template <class M>
Bound<M> badd(const Bound<M>& a, const Bound<M>& b) {
  if (a.is_inf() || b.is_inf()) return Bound<M>::inf();
  if constexpr (M::id == NumericMode::BinaryFloat64) {
    double r = a.value() + b.value();
    if (!std::isfinite(r)) return Bound<M>::inf();
    return Bound<M>::finite(r);
  } else {
    return Bound<M>::finite(M::add(a.value(), b.value()));
  }
}

namespace detail {

// Sums with a finite scalar in the middle; any +inf endpoint absorbs before
// any addition is attempted, so overflow cannot mask an infinite result.
template <class M>
Bound<M> sum3(const Bound<M>& a, const typename M::value_type& d, const Bound<M>& b) {
  if (a.is_inf() || b.is_inf()) return Bound<M>::inf();
  return badd(badd(a, Bound<M>::finite(d)), b);
}

template <class M>
Bound<M> sum5(const Bound<M>& a, const typename M::value_type& d1, const Bound<M>& b,
              const typename M::value_type& d2, const Bound<M>& c) {
  if (a.is_inf() || b.is_inf() || c.is_inf()) return Bound<M>::inf();
  return badd(badd(badd(badd(a, Bound<M>::finite(d1)), b), Bound<M>::finite(d2)), c);
}

}  // namespace detail

// Counts binary min applications; a k-ary min contributes k-1.
struct MinCounter {
  std::uint64_t count = 0;
};

namespace detail {

// One counted binary min, folded into an accumulator.
template <class M>
inline void acc_min(MinCounter& c, Bound<M>& best, const Bound<M>& candidate) {
  ++c.count;
  if (candidate < best) best = candidate;
}

}  // namespace detail

// Sum of a path of bounds: +inf if any term is +inf, else the mode's sum.
template <class M>
Bound<M> path_sum(std::initializer_list<Bound<M>> terms) {
  assert(terms.size() > 0);
  for (const auto& t : terms)
    if (t.is_inf()) return Bound<M>::inf();
  auto it = terms.begin();
  Bound<M> acc = *it;
  for (++it; it != terms.end(); ++it) acc = badd(acc, *it);
  return acc;
}

// Least operand under the Bound order; counts len-1 binary mins.
template <class M>
Bound<M> min_counted(MinCounter& counter, std::initializer_list<Bound<M>> operands) {
  assert(operands.size() > 0);
  auto it = operands.begin();
  Bound<M> best = *it;
  for (++it; it != operands.end(); ++it) detail::acc_min(counter, best, *it);
  return best;
}

// Exact division by two; +inf maps to +inf.
template <class M>
Bound<M> halve(const Bound<M>& b) {
  if (b.is_inf()) return b;
  return Bound<M>::finite(M::halve(b.value()));
}

// Round down to the nearest even value: Finite(v) -> Finite(2*floor(v/2)).
// +inf counts as even and maps to +inf.
template <class M>
Bound<M> tighten_even(const Bound<M>& b) {
  if (b.is_inf()) return b;
  return Bound<M>::finite(M::tighten_down(b.value()));
}

}  // namespace oct
