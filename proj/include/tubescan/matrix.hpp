#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace tubescan {

// r x g integer matrix, row-major; a morphism E^g -> E^r.
class IntMorphism {
 public:
  IntMorphism() = default;
  IntMorphism(std::size_t rows, std::size_t cols);
  IntMorphism(std::initializer_list<std::initializer_list<long>> rows);
  static IntMorphism identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  const std::vector<mpz_class>& entries() const { return e_; }

  bool operator==(const IntMorphism& o) const = default;
  // Row-major lexicographic, after dimensions.
  bool operator<(const IntMorphism& o) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> e_;
};

IntMorphism operator*(const IntMorphism& a, const IntMorphism& b);
IntMorphism operator*(const mpz_class& k, const IntMorphism& a);

// Columns of m listed by perm (0-based): result column j = m column perm[j].
IntMorphism permute_columns(const IntMorphism& m, const std::vector<std::size_t>& perm);
IntMorphism hconcat(const IntMorphism& a, const IntMorphism& b);
IntMorphism vconcat(const IntMorphism& a, const IntMorphism& b);
IntMorphism column_block(const IntMorphism& m, std::size_t first, std::size_t count);
IntMorphism row_block(const IntMorphism& m, std::size_t first, std::size_t count);

mpz_class determinant(const IntMorphism& m);

// "(r,g)[[a,b],[c,d]]". parse_matrix also accepts "[[..],[..]]", "(2,4)"
// (a single row) and "[2,4]".
std::string serialize(const IntMorphism& m);
IntMorphism parse_matrix(std::string_view s);
// "(2|1)" style: first `split` columns, a bar, the rest; rows joined by "; ".
std::string block_string(const IntMorphism& m, std::size_t split);

}  // namespace tubescan
