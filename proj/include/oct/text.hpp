#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oct/dbm.hpp"

namespace oct {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::string_view strip_comment(std::string_view s) {
  if (auto pos = s.find('#'); pos != std::string_view::npos) s = s.substr(0, pos);
  return trim(s);
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// number := ['-'] digits [ '/' digits | '.' digits ]
struct NumberParts {
  bool negative = false;
  std::string_view integral;
  char sep = 0;  // 0, '/', or '.'
  std::string_view tail;
};

inline bool split_number(std::string_view s, NumberParts& out) {
  out = NumberParts{};
  if (!s.empty() && s.front() == '-') {
    out.negative = true;
    s.remove_prefix(1);
  }
  auto pos = s.find_first_of("/.");
  if (pos == std::string_view::npos) {
    out.integral = s;
    return all_digits(s);
  }
  out.sep = s[pos];
  out.integral = s.substr(0, pos);
  out.tail = s.substr(pos + 1);
  return all_digits(out.integral) && all_digits(out.tail);
}

inline std::int64_t parse_i64_digits(std::string_view digits, bool negative, int line) {
  std::int64_t v = 0;
  std::string buf;
  if (negative) buf.push_back('-');
  buf.append(digits);
  auto [p, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc() || p != buf.data() + buf.size())
    throw ParseError(line, "integer out of range: " + buf);
  return v;
}

}  // namespace detail

// Parses one numeric literal in the active mode. Grammar (shared with the
// CLI): integer -12, rational 7/2, decimal 3.5. "inf" is handled by
// parse_bound, not here. Throws ParseError tagged with the given line.
template <class M>
typename M::value_type parse_value(std::string_view text, int line = 1) {
  text = detail::trim(text);
  detail::NumberParts np;
  if (!detail::split_number(text, np))
    throw ParseError(line, "malformed number: '" + std::string(text) + "'");

  if constexpr (M::id == NumericMode::CheckedInt) {
    if (np.sep != 0)
      throw ParseError(line, "non-integer literal in int mode: '" + std::string(text) + "'");
    return detail::parse_i64_digits(np.integral, np.negative, line);
  } else if constexpr (M::id == NumericMode::ExactRational) {
    mpz_class num(std::string(np.integral), 10);
    mpq_class v;
    if (np.sep == '/') {
      mpz_class den(std::string(np.tail), 10);
      if (den == 0) throw ParseError(line, "zero denominator: '" + std::string(text) + "'");
      v = mpq_class(num, den);
      v.canonicalize();
    } else if (np.sep == '.') {
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, np.tail.size());
      mpz_class frac(std::string(np.tail), 10);
      v = mpq_class(num * scale + frac, scale);
      v.canonicalize();
    } else {
      v = mpq_class(num);
    }
    if (np.negative) v = -v;
    return v;
  } else {
    double v = 0;
    if (np.sep == '/') {
      double num = static_cast<double>(detail::parse_i64_digits(np.integral, false, line));
      double den = static_cast<double>(detail::parse_i64_digits(np.tail, false, line));
      if (den == 0) throw ParseError(line, "zero denominator: '" + std::string(text) + "'");
      v = num / den;
    } else {
      std::string buf(np.integral);
      if (np.sep == '.') {
        buf.push_back('.');
        buf.append(np.tail);
      }
      auto [p, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), v);
      if (ec != std::errc() || p != buf.data() + buf.size())
        throw ParseError(line, "malformed number: '" + std::string(text) + "'");
    }
    if (np.negative) v = -v;
    if (!std::isfinite(v))
      throw ParseError(line, "literal outside finite double range: '" + std::string(text) + "'");
    return v;
  }
}

template <class M>
Bound<M> parse_bound(std::string_view text, int line = 1) {
  text = detail::trim(text);
  if (text == "inf") return Bound<M>::inf();
  return Bound<M>::finite(parse_value<M>(text, line));
}

template <class M>
std::string format_value(const typename M::value_type& v) {
  if constexpr (M::id == NumericMode::CheckedInt) {
    return std::to_string(v);
  } else if constexpr (M::id == NumericMode::ExactRational) {
    return v.get_str();
  } else {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
  }
}

template <class M>
std::string format_bound(const Bound<M>& b) {
  if (b.is_inf()) return "inf";
  return format_value<M>(b.value());
}

// --- constraint text ------------------------------------------------------
// One constraint per line: `x0 <= 3`, `-x1 <= 2`, `x0 + x1 <= 6`,
// `x0 - x1 <= 7`, `-x0 - x1 <= 5`. `#` starts a comment. A system file
// starts with the header line `vars N`.

namespace detail {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  int line;

  explicit Cursor(std::string_view text, int line_no) : s(text), line(line_no) {}

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() { return pos < s.size() ? s[pos] : '\0'; }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::size_t parse_index() {
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) throw ParseError(line, "expected variable index");
    std::size_t v = 0;
    auto sub = s.substr(start, pos - start);
    auto [p, ec] = std::from_chars(sub.data(), sub.data() + sub.size(), v);
    if (ec != std::errc() || p != sub.data() + sub.size())
      throw ParseError(line, "variable index out of range");
    return v;
  }
};

}  // namespace detail

// Parses a single constraint line against a declared variable count.
template <class M>
OctConstraint<M> parse_constraint_line(std::size_t n_vars, std::string_view text, int line = 1) {
  detail::Cursor c(detail::trim(text), line);

  auto parse_term = [&](int& sign, std::size_t& idx) {
    c.skip_ws();
    sign = c.eat('-') ? -1 : +1;
    c.skip_ws();
    if (!c.eat('x')) throw ParseError(line, "expected variable term");
    idx = c.parse_index();
  };

  int sign_i = +1, sign_j = +1;
  std::size_t i = 0, j = 0;
  parse_term(sign_i, i);

  bool binary = false;
  c.skip_ws();
  if (c.peek() == '+' || c.peek() == '-') {
    sign_j = c.eat('-') ? -1 : (c.eat('+'), +1);
    c.skip_ws();
    if (!c.eat('x')) throw ParseError(line, "expected second variable term");
    j = c.parse_index();
    binary = true;
  }
  c.skip_ws();
  if (!(c.eat('<') && c.eat('='))) throw ParseError(line, "expected '<='");
  std::string_view rest = detail::trim(c.s.substr(c.pos));
  if (rest.empty()) throw ParseError(line, "missing bound after '<='");
  typename M::value_type d = parse_value<M>(rest, line);

  if (i >= n_vars) throw UnknownVariable(line, "x" + std::to_string(i));
  if (binary && j >= n_vars) throw UnknownVariable(line, "x" + std::to_string(j));
  if (binary && i == j)
    throw ParseError(line, "binary constraint repeats variable x" + std::to_string(i));

  if (binary) return OctConstraint<M>::make_binary(sign_i, i, sign_j, j, std::move(d));
  return OctConstraint<M>::unary(sign_i, i, std::move(d));
}

template <class M>
struct ParsedSystem {
  std::size_t n = 0;
  std::vector<OctConstraint<M>> constraints;
};

template <class M>
ParsedSystem<M> parse_system(std::string_view text) {
  ParsedSystem<M> out;
  bool have_header = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    std::string_view raw = text.substr(start, end == std::string_view::npos ? text.size() - start
                                                                            : end - start);
    ++line_no;
    start = (end == std::string_view::npos) ? text.size() + 1 : end + 1;

    std::string_view s = detail::strip_comment(raw);
    if (s.empty()) continue;

    if (!have_header) {
      if (s.substr(0, 4) != "vars")
        throw ParseError(line_no, "expected 'vars N' header");
      std::string_view num = detail::trim(s.substr(4));
      if (!detail::all_digits(num)) throw ParseError(line_no, "expected variable count");
      std::size_t n = 0;
      std::from_chars(num.data(), num.data() + num.size(), n);
      if (n < 1) throw ParseError(line_no, "need at least one variable");
      out.n = n;
      have_header = true;
      continue;
    }
    out.constraints.push_back(parse_constraint_line<M>(out.n, s, line_no));
  }
  if (!have_header) throw ParseError(line_no, "expected 'vars N' header");
  return out;
}

template <class M>
std::string format_constraint(const OctConstraint<M>& c) {
  std::string s;
  if (c.sign_i < 0) s += "-";
  s += "x" + std::to_string(c.i);
  if (c.binary) {
    s += (c.sign_j < 0) ? " - " : " + ";
    s += "x" + std::to_string(c.j);
  }
  s += " <= " + format_value<M>(c.d);
  return s;
}

// --- DBM dumps --------------------------------------------------------------
// CSV of dim rows; `inf` for +inf; rationals as p/q.

template <class M>
std::string dump_csv(const Dbm<M>& m) {
  std::string out;
  const std::size_t dim = m.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (j) out += ",";
      out += format_bound<M>(m(i, j));
    }
    out += "\n";
  }
  return out;
}

// Reads a dumped matrix back. The result may be incoherent (the classifier
// reports that honestly); row count must be even and rows square.
template <class M>
Dbm<M> load_csv(std::string_view text) {
  std::vector<std::vector<Bound<M>>> rows;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    std::string_view raw = text.substr(start, end == std::string_view::npos ? text.size() - start
                                                                            : end - start);
    ++line_no;
    start = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
    std::string_view s = detail::strip_comment(raw);
    if (s.empty()) continue;

    std::vector<Bound<M>> row;
    std::size_t cell_start = 0;
    std::string_view sv = s;
    while (true) {
      auto comma = sv.find(',', cell_start);
      std::string_view cell = sv.substr(
          cell_start, comma == std::string_view::npos ? sv.size() - cell_start : comma - cell_start);
      row.push_back(parse_bound<M>(cell, line_no));
      if (comma == std::string_view::npos) break;
      cell_start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  const std::size_t dim = rows.size();
  if (dim < 2 || dim % 2 != 0) throw ParseError(line_no, "matrix must have even dimension >= 2");
  for (std::size_t i = 0; i < dim; ++i)
    if (rows[i].size() != dim)
      throw ParseError(static_cast<int>(i + 1), "expected " + std::to_string(dim) + " columns");
  Dbm<M> m = Dbm<M>::unconstrained(dim / 2);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = rows[i][j];
  return m;
}

// --- checksums ---------------------------------------------------------------

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stable across runs and platforms: hash of the canonical text dump.
template <class M>
std::uint64_t checksum(const Dbm<M>& m) {
  return fnv1a(dump_csv<M>(m));
}

}  // namespace oct
