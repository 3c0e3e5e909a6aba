#include "tubescan/elliptic.hpp"

#include <cctype>

#include "tubescan/arith.hpp"
#include "tubescan/errors.hpp"

namespace tubescan {

CurveOverQ::CurveOverQ(mpq_class A, mpq_class B, long degE)
    : A_(std::move(A)), B_(std::move(B)), degE_(degE) {
  if (discriminant() == 0) throw InputError("singular curve: 4A^3 + 27B^2 = 0");
  if (degE_ < 1) throw InputError("degE must be >= 1");
}

mpq_class CurveOverQ::discriminant() const { return -16 * (4 * A_ * A_ * A_ + 27 * B_ * B_); }

bool on_curve(const CurveOverQ& E, const Point& P) {
  if (P.inf) return true;
  return P.y * P.y == P.x * P.x * P.x + E.A() * P.x + E.B();
}

void require_on_curve(const CurveOverQ& E, const Point& P) {
  if (!on_curve(E, P)) throw InputError("point " + serialize(P) + " is not on the curve");
}

Point negate(const Point& P) {
  if (P.inf) return P;
  return Point::affine(P.x, -P.y);
}

namespace {

Point add_unchecked(const CurveOverQ& E, const Point& P, const Point& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  mpq_class lambda;
  if (P.x == Q.x) {
    if (P.y != Q.y || P.y == 0) return Point::O();
    lambda = (3 * P.x * P.x + E.A()) / (2 * P.y);
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  mpq_class x3 = lambda * lambda - P.x - Q.x;
  mpq_class y3 = lambda * (P.x - x3) - P.y;
  return Point::affine(std::move(x3), std::move(y3));
}

Point mul_unchecked(const CurveOverQ& E, const mpz_class& n, const Point& P) {
  Point R = Point::O(), base = n < 0 ? negate(P) : P;
  mpz_class k = abs(n);
  for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; bit >= 0 && k != 0; --bit) {
    R = add_unchecked(E, R, R);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) R = add_unchecked(E, R, base);
  }
  return R;
}

}  // namespace

Point point_add(const CurveOverQ& E, const Point& P, const Point& Q) {
  require_on_curve(E, P);
  require_on_curve(E, Q);
  return add_unchecked(E, P, Q);
}

Point point_sub(const CurveOverQ& E, const Point& P, const Point& Q) {
  return point_add(E, P, negate(Q));
}

Point scalar_mul(const CurveOverQ& E, const mpz_class& n, const Point& P) {
  require_on_curve(E, P);
  return mul_unchecked(E, n, P);
}

bool is_torsion(const CurveOverQ& E, const Point& P) {
  require_on_curve(E, P);
  Point R = P;
  for (int n = 1; n <= 12; ++n) {
    if (R.inf) return true;
    R = add_unchecked(E, R, P);
  }
  return false;
}

bool is_torsion(const CurveOverQ& E, const PointVector& x) {
  for (const auto& P : x.coords)
    if (!is_torsion(E, P)) return false;
  return true;
}

PointVector vector_add(const CurveOverQ& E, const PointVector& x, const PointVector& y) {
  if (x.size() != y.size()) throw InputError("vector_add: length mismatch");
  PointVector z;
  for (std::size_t i = 0; i < x.size(); ++i) z.coords.push_back(point_add(E, x[i], y[i]));
  return z;
}

PointVector vector_sub(const CurveOverQ& E, const PointVector& x, const PointVector& y) {
  if (x.size() != y.size()) throw InputError("vector_sub: length mismatch");
  PointVector z;
  for (std::size_t i = 0; i < x.size(); ++i) z.coords.push_back(point_sub(E, x[i], y[i]));
  return z;
}

PointVector vector_scale(const CurveOverQ& E, const mpz_class& n, const PointVector& x) {
  PointVector z;
  for (const auto& P : x.coords) z.coords.push_back(scalar_mul(E, n, P));
  return z;
}

PointVector apply_morphism(const CurveOverQ& E, const IntMorphism& F, const PointVector& x) {
  if (F.cols() != x.size())
    throw InputError("apply_morphism: matrix has " + std::to_string(F.cols()) + " columns, vector has " +
                     std::to_string(x.size()) + " coordinates");
  for (const auto& P : x.coords) require_on_curve(E, P);
  PointVector out;
  for (std::size_t i = 0; i < F.rows(); ++i) {
    Point acc = Point::O();
    for (std::size_t j = 0; j < F.cols(); ++j)
      if (F(i, j) != 0) acc = add_unchecked(E, acc, mul_unchecked(E, F(i, j), x[j]));
    out.coords.push_back(acc);
  }
  return out;
}

std::string serialize(const Point& P) {
  if (P.inf) return "O";
  return to_string(P.x) + "," + to_string(P.y);
}

Point parse_point(std::string_view s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  if (t == "O" || t == "o") return Point::O();
  auto comma = t.find(',');
  if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos)
    throw InputError("bad point literal '" + std::string(s) + "'");
  return Point::affine(parse_rational(t.substr(0, comma)), parse_rational(t.substr(comma + 1)));
}

std::string serialize(const PointVector& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " ; " : "") + serialize(x[i]);
  return s;
}

PointVector parse_point_vector(std::string_view s) {
  PointVector v;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t c = s.find(';', pos);
    if (c == std::string_view::npos) c = s.size();
    v.coords.push_back(parse_point(s.substr(pos, c - pos)));
    pos = c + 1;
  }
  return v;
}

}  // namespace tubescan
