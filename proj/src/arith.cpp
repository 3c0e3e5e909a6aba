#include "tubescan/arith.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "tubescan/errors.hpp"

namespace tubescan {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return c >= '0' && c <= '9'; });
}

bool signed_digits(std::string_view s) {
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  return all_digits(s);
}

mpz_class z_from(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

mpz_class parse_integer(std::string_view s) {
  s = trim(s);
  if (!signed_digits(s)) throw InputError("bad integer literal '" + std::string(s) + "'");
  return z_from(s);
}

mpq_class parse_rational(std::string_view s) {
  s = trim(s);
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  if (!signed_digits(num)) throw InputError("bad rational literal '" + std::string(s) + "'");
  mpq_class q;
  if (slash == std::string_view::npos) {
    q = mpq_class(z_from(num));
  } else {
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(den)) throw InputError("bad rational literal '" + std::string(s) + "'");
    mpz_class d = z_from(den);
    if (d == 0) throw InputError("zero denominator in '" + std::string(s) + "'");
    q = mpq_class(z_from(num), d);
  }
  q.canonicalize();
  return q;
}

mpq_class parse_real_literal(std::string_view s) {
  s = trim(s);
  if (s.find('/') != std::string_view::npos) return parse_rational(s);
  std::string_view mant = s;
  long exp10 = 0;
  auto e = s.find_first_of("eE");
  if (e != std::string_view::npos) {
    mant = s.substr(0, e);
    std::string_view ex = s.substr(e + 1);
    if (!signed_digits(ex) || ex.size() > 6)
      throw InputError("bad real literal '" + std::string(s) + "'");
    exp10 = std::stol(std::string(ex));
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.remove_prefix(1);
  }
  auto dot = mant.find('.');
  std::string digits(mant.substr(0, dot));
  if (dot != std::string_view::npos) {
    std::string_view frac = mant.substr(dot + 1);
    digits += frac;
    exp10 -= static_cast<long>(frac.size());
  }
  if (!all_digits(digits)) throw InputError("bad real literal '" + std::string(s) + "'");
  mpq_class q(mpz_class(digits, 10));
  mpz_class p10 = ipow(mpz_class(10), static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0) q /= p10; else q *= p10;
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

std::string to_string(const mpz_class& z) { return z.get_str(); }

std::string to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

unsigned long valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  mpz_class t;
  return mpz_remove(t.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

mpz_class ipow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

mpq_class ipow(const mpq_class& b, long e) {
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  mpq_class r(ipow(mpz_class(b.get_num()), k), ipow(mpz_class(b.get_den()), k));
  r.canonicalize();
  if (e < 0) {
    if (r == 0) throw std::domain_error("negative power of zero");
    r = 1 / r;
  }
  return r;
}

bool exact_root(const mpq_class& x, unsigned long q, mpq_class& out) {
  if (x < 0) return false;
  mpz_class a, b;
  int ea = mpz_root(a.get_mpz_t(), x.get_num().get_mpz_t(), q);
  int eb = mpz_root(b.get_mpz_t(), x.get_den().get_mpz_t(), q);
  if (!ea || !eb) return false;
  out = mpq_class(a, b);
  out.canonicalize();
  return true;
}

mpz_class ceil(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

mpz_class floor(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

namespace {

bool is_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

// Brent's variant of Pollard rho; n odd composite, not a prime power of a small prime.
mpz_class rho(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 128;
    auto f = [&](const mpz_class& v) { mpz_class t = v * v + c; return mpz_class(t % n); };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const mpz_class& n, std::map<mpz_class, unsigned long>& out) {
  if (n == 1) return;
  if (is_prime(n)) { ++out[n]; return; }
  mpz_class d = rho(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned long>> factorize(const mpz_class& n) {
  if (n == 0) throw std::invalid_argument("factorize(0)");
  mpz_class m = abs(n);
  std::map<mpz_class, unsigned long> f;
  for (unsigned long p = 2; p < 10000 && m > 1; p += (p == 2 ? 1 : 2)) {
    mpz_class pz(p);
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) f[pz] = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t());
  }
  split(m, f);
  return {f.begin(), f.end()};
}

}  // namespace tubescan
