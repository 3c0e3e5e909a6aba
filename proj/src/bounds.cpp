#include "tubescan/bounds.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "tubescan/arith.hpp"
#include "tubescan/errors.hpp"

namespace tubescan {

void BoundParams::validate() const {
  if (d < 1 || d >= g) throw InputError("bound parameters need 1 <= d < g");
  if (s < 0) throw InputError("bound parameters need s >= 0");
  if (K < 0) throw InputError("K must be >= 0");
  if (degV < 1 || stab_order < 1 || degE < 1) throw InputError("degV, stab_order, degE must be >= 1");
  if (eta && *eta <= 0) throw InputError("eta must be positive");
  for (const mpq_class* c : {&c0, &c1, &c2, &c_bog_g, &c_bog_d1, &c_p, &eps0_p})
    if (*c <= 0) throw InputError("constants must be positive");
  if (gamma_norm.lower().sign() < 0) throw InputError("gamma_norm must be >= 0");
  if (eps1_threshold && *eps1_threshold <= 0) throw InputError("eps1_threshold must be positive");
}

mpq_class deg_subgroup_bound(long r, const mpz_class& H, const mpq_class& c0) {
  return c0 * mpq_class(ipow(H, static_cast<unsigned long>(2 * r)));
}

mpq_class deg_image_bound(long d, const mpz_class& a, long degV, const mpq_class& c1) {
  return c1 * mpq_class(ipow(a, static_cast<unsigned long>(2 * d))) * degV;
}

mpq_class deg_helping_bound(long g, long r, const mpz_class& a, long degV, long stab_order, const mpq_class& c2) {
  return c2 * mpq_class(ipow(a, static_cast<unsigned long>(2 * (g - r)))) * stab_order * degV;
}

mpq_class hindry_degree(const mpz_class& b, long d, long degX, long stab_b) {
  mpq_class q(ipow(b, static_cast<unsigned long>(2 * d)) * degX, stab_b);
  q.canonicalize();
  return q;
}

Real bogomolov_epsilon(long degX, long codX, const mpq_class& eta, const mpq_class& c) {
  mpq_class e = mpq_class(1, 2 * codX) + eta;
  e.canonicalize();
  return Real(c) * pow(Real(mpq_class(degX)), -e);
}

Real em_eps1(const BoundParams& p) {
  mpq_class e = mpq_class(1, 2) + p.eta_value();
  return Real(p.c_bog_d1) / pow(Real(mpq_class(p.c1 * p.degV)), e);
}

Real em_eps2(const BoundParams& p) {
  mpq_class e = mpq_class(1, 2 * (p.g - p.d)) + p.eta_value();
  e.canonicalize();
  return Real(p.c_bog_g) / pow(Real(mpq_class(p.c2 * p.stab_order * p.degV)), e);
}

std::pair<Real, Real> em_lower_bounds(const BoundParams& p, const mpz_class& a) {
  if (a < 1) throw InputError("em_lower_bounds needs a >= 1");
  mpq_class eta = p.eta_value();
  mpq_class e1 = p.d + 2 * p.d * eta;
  mpq_class e2 = mpq_class(1, p.g - p.d) - 2 * (p.g - p.d - 1) * eta;
  e1.canonicalize();
  e2.canonicalize();
  Real A(mpq_class{a});
  return {em_eps1(p) / pow(A, e1), em_eps2(p) * pow(A, e2)};
}

FinitoThresholds finito_thresholds(const BoundParams& p) {
  p.validate();
  if (p.K <= 0) throw InputError("finito thresholds need K > 0");
  FinitoThresholds f;
  f.eta = p.eta_value();
  f.exponent_denominator = 1 - 2 * (p.g - p.d - 1) * (p.g - p.d) * f.eta;
  f.exponent_denominator.canonicalize();
  if (f.exponent_denominator <= 0) f.diagnostics.push_back("EXPONENT_NONPOSITIVE");
  if (f.exponent_denominator == 0)
    throw InputError("degenerate parameters: m exponent denominator 1 - 2(g-d-1)(g-d)eta is zero");
  Real e2 = em_eps2(p);
  if (!certainly_positive(e2)) throw InputError("degenerate constants: eps2(V,eta) = 0");
  mpq_class ex = mpq_class(p.g - p.d) / f.exponent_denominator;
  ex.canonicalize();
  f.m = pow(Real(p.K) / e2, ex);
  if (p.eps1_threshold) {
    f.eps1_threshold = *p.eps1_threshold;
    f.eps1_overridden = true;
  } else {
    Real kg = Real(mpq_class(p.K / p.g));
    Real other = em_eps1(p) / (Real(mpq_class(p.g)) * pow(f.m, mpq_class(p.d + 1)));
    f.eps1_threshold = min(kg, other);
  }
  return f;
}

CentroM centro_M(const Real& K, const Real& norm_p, const Real& eps, long r, long g, long s) {
  if (!certainly_positive(eps)) throw InputError("centro_M needs eps > 0");
  if (r < 1 || r > g + s) throw InputError("centro_M needs 1 <= r <= g+s");
  CentroM c;
  c.n = r * (g + s) - r * r + 1;
  mpz_class q = ceil_up((K + norm_p) / eps);
  mpz_class base = std::max(mpz_class(2), mpz_class(q * q));
  c.M = ipow(base, static_cast<unsigned long>(c.n));
  return c;
}

Real equi_Kprime(long g, long s, const Real& K, const Real& eps, const mpq_class& c_p) {
  if (c_p <= 0) throw InputError("c_p must be positive");
  Real inner = Real(mpq_class(g)) * (K + eps) / Real(c_p);
  return Real(mpq_class(g + s)) * max(Real(mpq_class(1)), inner);
}

BoundReport main_delta_chain(const BoundParams& p) {
  FinitoThresholds f = finito_thresholds(p);
  BoundReport R;
  R.params = p;
  R.r = p.d + 1;
  R.eta = f.eta;
  R.exponent_denominator = f.exponent_denominator;
  R.eps_bog = bogomolov_epsilon(p.degV, p.g - p.d, f.eta, p.c_bog_g);
  R.eps1_EM = em_eps1(p);
  R.eps2_EM = em_eps2(p);
  R.m = f.m;
  R.eps1_threshold = f.eps1_threshold;
  R.eps1_overridden = f.eps1_overridden;
  R.diagnostics = f.diagnostics;

  Real K(p.K), gs(mpq_class(p.g + p.s));
  R.delta1 = min(R.eps1_threshold / gs, K) / Real(mpq_class(p.g + p.s + 1));
  CentroM c = centro_M(K, p.gamma_norm, R.delta1, R.r, p.g, p.s);
  R.n = c.n;
  R.M_big = c.M;
  mpq_class ex = -(1 + mpq_class(1, 2 * R.n));
  ex.canonicalize();
  R.delta = R.delta1 * pow(Real(mpq_class(R.M_big)), ex);
  R.K_prime = equi_Kprime(p.g, p.s, K, R.delta, p.c_p);
  if (!certainly_leq(R.delta, Real(p.eps0_p))) R.diagnostics.push_back("EPS0_EXCEEDED");

  if (!certainly_leq(R.delta, R.delta1) || R.M_big < ipow(mpz_class(2), static_cast<unsigned long>(R.n)))
    throw std::logic_error("bound chain ordering violated");
  return R;
}

std::string version_stamp() { return "tubescan 1.0.0"; }

namespace {

enum class Dir { Down, Up };

struct Field {
  std::string key;
  const Real* v;
  Dir dir;
};

std::vector<Field> fields(const BoundReport& r) {
  return {{"eps_bog", &r.eps_bog, Dir::Down},         {"eps1_EM", &r.eps1_EM, Dir::Down},
          {"eps2_EM", &r.eps2_EM, Dir::Down},         {"m", &r.m, Dir::Up},
          {"eps1_threshold", &r.eps1_threshold, Dir::Down}, {"delta1", &r.delta1, Dir::Down},
          {"delta", &r.delta, Dir::Down},             {"K_prime", &r.K_prime, Dir::Up}};
}

std::string decimal(const Real& v, Dir d) {
  return d == Dir::Down ? v.down(kReportDigits) : v.up(kReportDigits);
}

std::string real_param(const Real& v) {
  return v.is_exact() ? to_string(v.exact_value()) : "[" + v.down(kReportDigits) + ", " + v.up(kReportDigits) + "]";
}

std::vector<std::pair<std::string, std::string>> param_list(const BoundParams& p) {
  return {{"g", std::to_string(p.g)},
          {"d", std::to_string(p.d)},
          {"s", std::to_string(p.s)},
          {"K", to_string(p.K)},
          {"degV", std::to_string(p.degV)},
          {"stab_order", std::to_string(p.stab_order)},
          {"degE", std::to_string(p.degE)},
          {"eta", p.eta ? to_string(*p.eta) : "default"},
          {"c0", to_string(p.c0)},
          {"c1", to_string(p.c1)},
          {"c2", to_string(p.c2)},
          {"c_bog_g", to_string(p.c_bog_g)},
          {"c_bog_d1", to_string(p.c_bog_d1)},
          {"c_p", to_string(p.c_p)},
          {"eps0_p", to_string(p.eps0_p)},
          {"gamma_norm", real_param(p.gamma_norm)},
          {"eps1_threshold", p.eps1_threshold ? to_string(*p.eps1_threshold) : "formula"}};
}

}  // namespace

std::string to_kv(const BoundReport& r) {
  std::ostringstream o;
  o << "version = " << version_stamp() << "\n";
  o << "precision = " << kReportDigits << " significant digits; radii rounded down, bounds rounded up\n";
  for (const auto& [k, v] : param_list(r.params)) o << "param." << k << " = " << v << "\n";
  o << "r = " << r.r << "\n";
  o << "n = " << r.n << "\n";
  o << "eta = " << to_string(r.eta) << "\n";
  o << "m_exponent_denominator = " << to_string(r.exponent_denominator) << "\n";
  for (const auto& f : fields(r)) {
    o << f.key << " = " << decimal(*f.v, f.dir) << "\n";
    if (f.v->is_exact()) o << f.key << ".exact = " << to_string(f.v->exact_value()) << "\n";
  }
  o << "eps1_threshold.source = " << (r.eps1_overridden ? "override" : "formula") << "\n";
  o << "M_big = " << r.M_big.get_str() << "\n";
  o << "diagnostics = ";
  for (std::size_t i = 0; i < r.diagnostics.size(); ++i) o << (i ? "," : "") << r.diagnostics[i];
  o << (r.diagnostics.empty() ? "none" : "") << "\n";
  return o.str();
}

std::string to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["version"] = version_stamp();
  j["precision_digits"] = kReportDigits;
  nlohmann::ordered_json params;
  for (const auto& [k, v] : param_list(r.params)) params[k] = v;
  j["params"] = params;
  j["r"] = r.r;
  j["n"] = r.n;
  j["eta"] = to_string(r.eta);
  j["m_exponent_denominator"] = to_string(r.exponent_denominator);
  for (const auto& f : fields(r)) {
    nlohmann::ordered_json q;
    q["decimal"] = decimal(*f.v, f.dir);
    q["rounding"] = f.dir == Dir::Down ? "down" : "up";
    q["exact"] = f.v->is_exact() ? nlohmann::ordered_json(to_string(f.v->exact_value())) : nlohmann::ordered_json();
    j[f.key] = q;
  }
  j["eps1_threshold_source"] = r.eps1_overridden ? "override" : "formula";
  j["M_big"] = r.M_big.get_str();
  j["diagnostics"] = r.diagnostics;
  return j.dump(2) + "\n";
}

const char* to_string(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::PASS: return "PASS";
    case CheckVerdict::FAIL: return "FAIL";
    case CheckVerdict::BOUNDARY: return "BOUNDARY";
  }
  return "?";
}

namespace {

void merge(CheckVerdict& into, CheckVerdict v) {
  if (v == CheckVerdict::FAIL || (v == CheckVerdict::BOUNDARY && into == CheckVerdict::PASS)) into = v;
}

struct HeightBand {
  double lo, hi;
};

HeightBand band(const HeightEngine& H, const PointVector& x, double tol) {
  if (is_torsion(H.curve(), x)) return {0, 0};
  HeightValue h = vector_height(H, x, tol);
  return {std::max(h.value - h.tol, 0.0), h.value + h.tol};
}

}  // namespace

GammaCheck gamma_basis_check(const CurveOverQ& E, const std::vector<PointVector>& gens, const mpq_class& K,
                             double tol, long coeff_box) {
  if (gens.empty()) throw InputError("gamma_basis_check needs at least one generator");
  if (coeff_box < 1) throw InputError("gamma_basis_check needs coeff_box >= 1");
  std::size_t g = gens.front().size();
  for (const auto& v : gens)
    if (v.size() != g) throw InputError("generators must share the ambient power");
  HeightEngine H(E);
  GammaCheck out;

  double bound = 3.0 * static_cast<double>(g) * K.get_d();
  std::vector<HeightBand> hb;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    hb.push_back(band(H, gens[i], tol));
    NormValue n = seminorm(H, gens[i], tol);
    CheckVerdict v;
    if (n.exact_zero) v = K > 0 ? CheckVerdict::FAIL : CheckVerdict::PASS;
    else if (n.value - n.tol >= bound + tol) v = CheckVerdict::PASS;
    else if (n.value + n.tol < bound - tol) v = CheckVerdict::FAIL;
    else v = CheckVerdict::BOUNDARY;
    if (v != CheckVerdict::PASS && !out.failing_generator) out.failing_generator = i;
    merge(out.condition1, v);
  }

  std::size_t s = gens.size();
  std::vector<long> b(s, -coeff_box);
  std::vector<long> boundary_witness;
  for (;;) {
    bool zero = std::all_of(b.begin(), b.end(), [](long v) { return v == 0; });
    if (!zero) {
      PointVector sum;
      sum.coords.assign(g, Point::O());
      double rlo = 0, rhi = 0;
      for (std::size_t i = 0; i < s; ++i) {
        if (b[i] == 0) continue;
        sum = vector_add(E, sum, vector_scale(E, b[i], gens[i]));
        double w = static_cast<double>(b[i]) * static_cast<double>(b[i]) / 9.0;
        rlo += w * hb[i].lo;
        rhi += w * hb[i].hi;
      }
      HeightBand l = band(H, sum, tol);
      CheckVerdict v = l.lo >= rhi ? CheckVerdict::PASS : (l.hi < rlo ? CheckVerdict::FAIL : CheckVerdict::BOUNDARY);
      if (v == CheckVerdict::FAIL && out.condition2 != CheckVerdict::FAIL) out.witness = b;
      if (v == CheckVerdict::BOUNDARY && boundary_witness.empty()) boundary_witness = b;
      merge(out.condition2, v);
    }
    std::size_t k = s;
    while (k > 0 && b[k - 1] == coeff_box) b[--k] = -coeff_box;
    if (k == 0) break;
    ++b[k - 1];
  }
  if (out.condition2 == CheckVerdict::BOUNDARY) out.witness = boundary_witness;
  out.verdict = out.condition1;
  merge(out.verdict, out.condition2);
  return out;
}

}  // namespace tubescan
