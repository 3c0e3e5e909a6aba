#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "tubescan/matrix.hpp"

namespace tubescan {

// y^2 = x^3 + A x + B over Q.
class CurveOverQ {
 public:
  CurveOverQ(mpq_class A, mpq_class B, long degE = 3);

  const mpq_class& A() const { return A_; }
  const mpq_class& B() const { return B_; }
  long degE() const { return degE_; }
  // -16(4A^3 + 27B^2)
  mpq_class discriminant() const;

  bool operator==(const CurveOverQ& o) const = default;

 private:
  mpq_class A_, B_;
  long degE_;
};

struct Point {
  bool inf = true;
  mpq_class x, y;

  static Point O() { return {}; }
  static Point affine(mpq_class x, mpq_class y) { return {false, std::move(x), std::move(y)}; }
  bool operator==(const Point& o) const {
    return inf == o.inf && (inf || (x == o.x && y == o.y));
  }
};

struct PointVector {
  std::vector<Point> coords;

  std::size_t size() const { return coords.size(); }
  const Point& operator[](std::size_t i) const { return coords[i]; }
  Point& operator[](std::size_t i) { return coords[i]; }
  bool operator==(const PointVector& o) const = default;
};

bool on_curve(const CurveOverQ& E, const Point& P);
// Throws InputError when P is not on E.
void require_on_curve(const CurveOverQ& E, const Point& P);

Point negate(const Point& P);
Point point_add(const CurveOverQ& E, const Point& P, const Point& Q);
Point point_sub(const CurveOverQ& E, const Point& P, const Point& Q);
Point scalar_mul(const CurveOverQ& E, const mpz_class& n, const Point& P);

// Rational torsion has order at most 12 (Mazur), so [n]P = O for some n <= 12
// decides torsion over Q.
bool is_torsion(const CurveOverQ& E, const Point& P);
bool is_torsion(const CurveOverQ& E, const PointVector& x);

PointVector vector_add(const CurveOverQ& E, const PointVector& x, const PointVector& y);
PointVector vector_sub(const CurveOverQ& E, const PointVector& x, const PointVector& y);
PointVector vector_scale(const CurveOverQ& E, const mpz_class& n, const PointVector& x);

// i-th entry is sum_j [f_ij] x_j.
PointVector apply_morphism(const CurveOverQ& E, const IntMorphism& F, const PointVector& x);

// "O" or "x,y" with rational literals; surrounding parentheses optional.
std::string serialize(const Point& P);
Point parse_point(std::string_view s);
// Points joined by " ; ".
std::string serialize(const PointVector& x);
PointVector parse_point_vector(std::string_view s);

}  // namespace tubescan
