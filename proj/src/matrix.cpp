#include "tubescan/matrix.hpp"

#include <algorithm>
#include <cctype>

#include "tubescan/arith.hpp"
#include "tubescan/errors.hpp"

namespace tubescan {

IntMorphism::IntMorphism(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), e_(rows * cols, mpz_class(0)) {}

IntMorphism::IntMorphism(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    for (long v : r) e_.emplace_back(v);
  }
}

IntMorphism IntMorphism::identity(std::size_t n) {
  IntMorphism m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMorphism::operator<(const IntMorphism& o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_;
  if (cols_ != o.cols_) return cols_ < o.cols_;
  return std::lexicographical_compare(e_.begin(), e_.end(), o.e_.begin(), o.e_.end());
}

IntMorphism operator*(const IntMorphism& a, const IntMorphism& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product: dimension mismatch");
  IntMorphism c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntMorphism operator*(const mpz_class& k, const IntMorphism& a) {
  IntMorphism c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= k;
  return c;
}

IntMorphism permute_columns(const IntMorphism& m, const std::vector<std::size_t>& perm) {
  IntMorphism c(m.rows(), perm.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < perm.size(); ++j) c(i, j) = m(i, perm[j]);
  return c;
}

IntMorphism hconcat(const IntMorphism& a, const IntMorphism& b) {
  if (a.rows() != b.rows()) throw InputError("hconcat: row mismatch");
  IntMorphism c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMorphism vconcat(const IntMorphism& a, const IntMorphism& b) {
  if (a.cols() != b.cols()) throw InputError("vconcat: column mismatch");
  IntMorphism c(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
  }
  return c;
}

IntMorphism column_block(const IntMorphism& m, std::size_t first, std::size_t count) {
  IntMorphism c(m.rows(), count);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < count; ++j) c(i, j) = m(i, first + j);
  return c;
}

IntMorphism row_block(const IntMorphism& m, std::size_t first, std::size_t count) {
  IntMorphism c(count, m.cols());
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(first + i, j);
  return c;
}

mpz_class determinant(const IntMorphism& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMorphism a = m;
  mpz_class prev = 1;
  int sign = 1;
  // Bareiss fraction-free elimination; every division is exact.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::string serialize(const IntMorphism& m) {
  std::string s = "(" + std::to_string(m.rows()) + "," + std::to_string(m.cols()) + ")[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + m(i, j).get_str();
    s += "]";
  }
  return s + "]";
}

std::string block_string(const IntMorphism& m, std::size_t split) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j == split && split > 0 && split < m.cols()) s += " | ";
      else if (j) s += " ";
      s += m(i, j).get_str();
    }
  }
  return s + ")";
}

namespace {

std::vector<mpz_class> parse_row(std::string_view body, std::string_view whole) {
  std::vector<mpz_class> row;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t c = body.find(',', pos);
    if (c == std::string_view::npos) c = body.size();
    std::string_view tok = body.substr(pos, c - pos);
    if (tok.empty()) throw InputError("empty matrix entry in '" + std::string(whole) + "'");
    row.push_back(parse_integer(tok));
    pos = c + 1;
  }
  return row;
}

}  // namespace

IntMorphism parse_matrix(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  std::string_view v(s);
  long hr = -1, hc = -1;
  // Optional "(r,g)" header followed by a bracketed body.
  if (v.size() > 1 && v[0] == '(') {
    auto close = v.find(')');
    if (close != std::string_view::npos && close + 1 < v.size() && v[close + 1] == '[') {
      auto hdr = parse_row(v.substr(1, close - 1), text);
      if (hdr.size() != 2) throw InputError("bad matrix header in '" + std::string(text) + "'");
      hr = hdr[0].get_si();
      hc = hdr[1].get_si();
      v.remove_prefix(close + 1);
    }
  }
  std::vector<std::vector<mpz_class>> rows;
  if (v.size() >= 4 && v.substr(0, 2) == "[[" && v.substr(v.size() - 2) == "]]") {
    std::string_view body = v.substr(1, v.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
      if (body[pos] != '[') throw InputError("bad matrix literal '" + std::string(text) + "'");
      auto close = body.find(']', pos);
      if (close == std::string_view::npos) throw InputError("bad matrix literal '" + std::string(text) + "'");
      rows.push_back(parse_row(body.substr(pos + 1, close - pos - 1), text));
      pos = close + 1;
      if (pos < body.size()) {
        if (body[pos] != ',') throw InputError("bad matrix literal '" + std::string(text) + "'");
        ++pos;
      }
    }
  } else if (v.size() >= 2 && ((v.front() == '(' && v.back() == ')') || (v.front() == '[' && v.back() == ']'))) {
    rows.push_back(parse_row(v.substr(1, v.size() - 2), text));
  } else {
    throw InputError("bad matrix literal '" + std::string(text) + "'");
  }
  std::size_t g = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != g) throw InputError("ragged matrix '" + std::string(text) + "'");
  if (hr >= 0 && (static_cast<std::size_t>(hr) != rows.size() || static_cast<std::size_t>(hc) != g))
    throw InputError("matrix header disagrees with body in '" + std::string(text) + "'");
  IntMorphism m(rows.size(), g);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < g; ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace tubescan
