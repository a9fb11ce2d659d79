#pragma once

// XMAT: line-oriented text format for cross matrices.
//
//   xmat 1            magic and version
//   3                 order n
//   1 2 3             n diagonal entries, x(i,i)
//   4 2 5             n anti-diagonal entries, x(i,n-1-i)
//
// Lines starting with '#' and blank lines are ignored anywhere. Complex
// entries are single tokens "a+bi" / "a-bi". Values are written with 17
// significant digits, so finite values round-trip exactly.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "crossmat/cross_matrix.hpp"

namespace crossmat::xmat {

namespace detail {

inline void append_real(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

inline bool parse_real(std::string_view tok, double& v) {
  if (tok.empty()) return false;
  // from_chars rejects a leading '+'.
  if (tok.front() == '+') tok.remove_prefix(1);
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

// Non-blank, non-comment lines.
inline std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    auto tokens = split(line);
    if (tokens.empty() || tokens.front().text.front() == '#') continue;
    out.push_back({number, std::move(tokens)});
  }
  return out;
}

}  // namespace detail

inline bool is_complex_token(std::string_view tok) {
  return !tok.empty() && tok.back() == 'i';
}

template <Scalar T>
std::string format_scalar(const T& x) {
  std::string s;
  if constexpr (is_complex_v<T>) {
    detail::append_real(s, x.real());
    const double im = x.imag();
    s += std::signbit(im) ? '-' : '+';
    detail::append_real(s, std::fabs(im));
    s += 'i';
  } else {
    detail::append_real(s, x);
  }
  return s;
}

/// Parses one token; returns false on malformed input.
template <Scalar T>
bool parse_scalar(std::string_view tok, T& out) {
  static_assert(std::is_same_v<real_t<T>, double>, "XMAT stores double precision");
  if constexpr (is_complex_v<T>) {
    if (!is_complex_token(tok)) {
      double re;
      if (!detail::parse_real(tok, re)) return false;
      out = T(re, 0.0);
      return true;
    }
    const std::string_view body = tok.substr(0, tok.size() - 1);
    // Split at the last sign that is not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
      if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    double re = 0.0, im;
    if (split == std::string_view::npos) {
      if (!detail::parse_real(body, im)) return false;
    } else {
      if (!detail::parse_real(body.substr(0, split), re)) return false;
      if (!detail::parse_real(body.substr(split), im)) return false;
    }
    out = T(re, im);
    return true;
  } else {
    if (is_complex_token(tok)) return false;
    return detail::parse_real(tok, out);
  }
}

/// True when any entry in the text is written as a complex token.
inline bool has_complex_entries(std::string_view text) {
  for (const auto& line : detail::content_lines(text))
    for (const auto& t : line.tokens)
      if (is_complex_token(t.text)) return true;
  return false;
}

template <Scalar T>
std::string format_vector(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_scalar(v[i]);
  }
  return s;
}

template <Scalar T>
std::string serialize(const CrossMatrix<T>& x) {
  std::string s = "xmat 1\n" + std::to_string(x.order()) + "\n";
  s += format_vector(std::vector<T>(x.diag().begin(), x.diag().end()));
  s += '\n';
  s += format_vector(std::vector<T>(x.anti().begin(), x.anti().end()));
  s += '\n';
  return s;
}

namespace detail {
template <Scalar T>
std::vector<T> parse_entries(const Line& line, std::size_t expected, const char* what) {
  if (line.tokens.size() != expected) {
    throw Error(ErrorKind::DimensionMismatch,
                "line " + std::to_string(line.number) + ": expected " +
                    std::to_string(expected) + " " + what + " entries, found " +
                    std::to_string(line.tokens.size()));
  }
  std::vector<T> v(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    if (!parse_scalar(line.tokens[i].text, v[i])) {
      throw ParseError(line.number, line.tokens[i].column,
                       "invalid number '" + std::string(line.tokens[i].text) + "'");
    }
  }
  return v;
}
}  // namespace detail

template <Scalar T>
CrossMatrix<T> parse(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input, expected 'xmat 1'");

  const auto& head = lines[0];
  if (head.tokens.size() != 2 || head.tokens[0].text != "xmat") {
    throw ParseError(head.number, head.tokens[0].column, "expected header 'xmat 1'");
  }
  if (head.tokens[1].text != "1") {
    throw ParseError(head.number, head.tokens[1].column,
                     "unsupported version '" + std::string(head.tokens[1].text) + "'");
  }
  if (lines.size() < 2) throw ParseError(head.number + 1, 1, "missing order line");

  const auto& count = lines[1];
  std::size_t n = 0;
  {
    const std::string_view t = count.tokens[0].text;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), n);
    if (count.tokens.size() != 1 || res.ec != std::errc() || res.ptr != t.data() + t.size() ||
        n == 0) {
      throw ParseError(count.number, count.tokens[0].column, "expected a positive order n");
    }
  }
  if (lines.size() < 4) {
    throw ParseError(lines.back().number + 1, 1,
                     lines.size() < 3 ? "missing diagonal line" : "missing anti-diagonal line");
  }
  if (lines.size() > 4) {
    throw ParseError(lines[4].number, lines[4].tokens[0].column, "unexpected trailing content");
  }
  auto diag = detail::parse_entries<T>(lines[2], n, "diagonal");
  auto anti = detail::parse_entries<T>(lines[3], n, "anti-diagonal");
  return CrossMatrix<T>(n, std::move(diag), std::move(anti));
}

/// Whitespace-separated values across any number of lines.
template <Scalar T>
std::vector<T> parse_vector(std::string_view text) {
  std::vector<T> v;
  for (const auto& line : detail::content_lines(text)) {
    for (const auto& t : line.tokens) {
      T x;
      if (!parse_scalar(t.text, x)) {
        throw ParseError(line.number, t.column, "invalid number '" + std::string(t.text) + "'");
      }
      v.push_back(x);
    }
  }
  return v;
}

/// Dense rows, one per line.
template <Scalar T>
DenseMatrix<T> parse_dense(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty dense matrix");
  const std::size_t cols = lines[0].tokens.size();
  std::vector<T> data;
  for (const auto& line : lines) {
    if (line.tokens.size() != cols) {
      throw ParseError(line.number, 1,
                       "row has " + std::to_string(line.tokens.size()) + " entries, expected " +
                           std::to_string(cols));
    }
    for (const auto& t : line.tokens) {
      T x;
      if (!parse_scalar(t.text, x)) {
        throw ParseError(line.number, t.column, "invalid number '" + std::string(t.text) + "'");
      }
      data.push_back(x);
    }
  }
  return DenseMatrix<T>(lines.size(), cols, std::move(data));
}

template <Scalar T>
std::string format_dense(const DenseMatrix<T>& a) {
  std::string s;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (c) s += ' ';
      s += format_scalar(a(r, c));
    }
    s += '\n';
  }
  return s;
}

}  // namespace crossmat::xmat
