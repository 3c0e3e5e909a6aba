#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tubescan {

// Strict rational literal: "-3", "22/7". No decimal point, no exponent.
mpq_class parse_rational(std::string_view s);

// Also accepts decimal and scientific notation ("0.3", "1e-8", "2.5E3"),
// converted exactly.
mpq_class parse_real_literal(std::string_view s);

mpz_class parse_integer(std::string_view s);

// "p/q", or "p" when q = 1.
std::string to_string(const mpq_class& q);
std::string to_string(const mpz_class& z);

// Multiplicity of p in n (n != 0).
unsigned long valuation(const mpz_class& n, const mpz_class& p);

// Prime factorization of |n| with exponents, primes ascending. n != 0.
std::vector<std::pair<mpz_class, unsigned long>> factorize(const mpz_class& n);

mpz_class ipow(const mpz_class& b, unsigned long e);
mpq_class ipow(const mpq_class& b, long e);

// Exact q-th root of a non-negative rational if it exists.
bool exact_root(const mpq_class& x, unsigned long q, mpq_class& out);

mpz_class ceil(const mpq_class& q);
mpz_class floor(const mpq_class& q);

}  // namespace tubescan
