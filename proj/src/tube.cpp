#include "tubescan/tube.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "tubescan/arith.hpp"
#include "tubescan/bounds.hpp"
#include "tubescan/enumerate.hpp"
#include "tubescan/errors.hpp"

namespace tubescan {

Residual tube_residual(const HeightEngine& H, const IntMorphism& phi, const PointVector& x, const GammaData& gamma,
                       double tol) {
  const CurveOverQ& E = H.curve();
  if (gamma.coeff_box < 0) throw InputError("coeff_box must be >= 0");
  PointVector base = apply_morphism(E, phi, x);
  std::vector<PointVector> images;
  for (const auto& gen : gamma.generators) {
    if (gen.size() != x.size()) throw InputError("Gamma generator has the wrong ambient power");
    images.push_back(apply_morphism(E, phi, gen));
  }
  std::size_t s = images.size();
  long B = s ? gamma.coeff_box : 0;
  std::vector<long> b(s, -B);
  Residual best;
  bool have = false;
  for (;;) {
    PointVector y = base;
    for (std::size_t i = 0; i < s; ++i)
      if (b[i] != 0) y = vector_sub(E, y, vector_scale(E, b[i], images[i]));
    NormValue n = seminorm(H, y, tol);
    if (!have || (n.exact_zero && !best.norm.exact_zero) || (!best.norm.exact_zero && n.value < best.norm.value)) {
      best = {n, b};
      have = true;
    }
    if (best.norm.exact_zero) break;
    std::size_t k = s;
    while (k > 0 && b[k - 1] == B) b[--k] = -B;
    if (k == 0) break;
    ++b[k - 1];
  }
  return best;
}

Residual tube_residual(const CurveOverQ& E, const IntMorphism& phi, const PointVector& x, const GammaData& gamma,
                       double tol) {
  return tube_residual(HeightEngine(E), phi, x, gamma, tol);
}

PointVector product_embedding(const PointVector& x, const PointVector& gamma_point) {
  PointVector z = x;
  z.coords.insert(z.coords.end(), gamma_point.coords.begin(), gamma_point.coords.end());
  return z;
}

const char* to_string(TubeVerdict v) {
  switch (v) {
    case TubeVerdict::HIT: return "HIT";
    case TubeVerdict::MISS: return "MISS";
    case TubeVerdict::BOUNDARY: return "BOUNDARY";
  }
  return "?";
}

namespace {

TubeVerdict verdict_of(const NormValue& n, double threshold, double band) {
  switch (compare_norm(n, threshold, band)) {
    case Trivalent::IN: return TubeVerdict::HIT;
    case Trivalent::OUT: return TubeVerdict::MISS;
    default: return TubeVerdict::BOUNDARY;
  }
}

std::vector<ScanRecord> scan_point(const HeightEngine& H, std::size_t id, const PointVector& x,
                                   const std::vector<GaussReducedForm>& forms, const ScanOptions& opt, Trivalent vk) {
  std::vector<ScanRecord> out;
  double g = static_cast<double>(x.size()), r = static_cast<double>(opt.r);
  for (std::size_t k = 0; k < forms.size(); ++k) {
    ScanRecord rec;
    rec.point_id = id;
    rec.morphism_index = k;
    rec.phi = forms[k].matrix;
    rec.height = forms[k].a;
    rec.vk = vk;
    rec.threshold = (g - r + 1) * forms[k].a.get_d() * opt.eps;
    try {
      rec.residual = tube_residual(H, rec.phi, x, opt.gamma, opt.tol);
      rec.verdict = verdict_of(rec.residual.norm, rec.threshold, opt.tol);
    } catch (const ResourceError& e) {
      rec.verdict = TubeVerdict::BOUNDARY;
      rec.note = e.what();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

ScanResult scan(const CurveOverQ& E, const std::vector<PointVector>& points, const ScanOptions& opt) {
  if (opt.r < 1 || opt.M_cap < 1) throw InputError("scan needs r >= 1 and M_cap >= 1");
  if (opt.eps < 0 || opt.K < 0 || !(opt.tol > 0)) throw InputError("scan needs eps, K >= 0 and tol > 0");
  ScanResult res;
  res.summary.points_total = points.size();
  if (points.empty()) return res;
  std::size_t g = points.front().size();
  for (const auto& x : points) {
    if (x.size() != g) throw InputError("all points must lie in the same power E^g");
    for (const auto& P : x.coords) require_on_curve(E, P);
  }
  for (const auto& gen : opt.gamma.generators)
    if (gen.size() != g) throw InputError("Gamma generators must lie in E^g");
  if (opt.r > g) throw InputError("scan needs r <= g");

  mpz_class count = count_gauss_reduced_canonical(g, opt.r, opt.M_cap);
  if (count * points.size() > opt.budget) throw ResourceError("scan: point x morphism budget exceeded");
  std::vector<GaussReducedForm> forms = enumerate_gauss_reduced(g, opt.r, opt.M_cap, opt.canonical_only);
  if (mpz_class(forms.size()) * points.size() > opt.budget) throw ResourceError("scan: point x morphism budget exceeded");
  res.summary.morphisms = forms.size();

  HeightEngine H(E);
  std::vector<Trivalent> vk(points.size());
  std::vector<std::vector<ScanRecord>> per_point(points.size());
  auto work = [&](std::size_t i) {
    vk[i] = in_tube_O_eps(H, points[i], opt.K, opt.tol);
    if (vk[i] != Trivalent::OUT) per_point[i] = scan_point(H, i, points[i], forms, opt, vk[i]);
  };
  unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(points.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < points.size(); i += threads) work(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ScanSummary& s = res.summary;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (vk[i] == Trivalent::OUT) {
      ++s.points_outside_vk;
      continue;
    }
    ++s.points_scanned;
    if (vk[i] == Trivalent::BOUNDARY) ++s.points_boundary_vk;
    for (auto& rec : per_point[i]) {
      switch (rec.verdict) {
        case TubeVerdict::HIT:
          ++s.hits;
          ++s.hits_by_height[rec.height.get_si()];
          ++s.hits_by_point[rec.point_id];
          break;
        case TubeVerdict::MISS: ++s.misses; break;
        case TubeVerdict::BOUNDARY: ++s.boundaries; break;
      }
      if (!rec.note.empty()) ++s.errors;
      res.records.push_back(std::move(rec));
    }
  }
  s.records = res.records.size();
  return res;
}

const char* to_string(CentroStatus s) {
  switch (s) {
    case CentroStatus::FOUND: return "FOUND";
    case CentroStatus::FAIL: return "FAIL";
    case CentroStatus::BUDGET_EXCEEDED: return "BUDGET_EXCEEDED";
    case CentroStatus::PRECONDITION_FAILED: return "PRECONDITION_FAILED";
  }
  return "?";
}

namespace {

// Thresholds are compared as doubles; take the lower end, rounded down.
double lower_double(const Real& v) { return v.lower().to_double(MPFR_RNDD); }

}  // namespace

CentroResult centro_containment_check(const CurveOverQ& E, const PointVector& x, const IntMorphism& special_phi,
                                      const mpq_class& K, const mpq_class& eps, std::size_t g, std::size_t s,
                                      std::size_t r, double tol, long budget) {
  if (x.size() != g + s) throw InputError("centro check: point must lie in E^(g+s)");
  if (special_phi.rows() != r) throw InputError("centro check: morphism must have r rows");
  if (!classify_special(special_phi, g, s).special) throw InputError("centro check: morphism is not Special");
  if (eps <= 0) throw InputError("centro check: eps must be positive");
  HeightEngine H(E);
  CentroResult out;

  PointVector p;
  p.coords.assign(x.coords.begin() + static_cast<long>(g), x.coords.end());
  NormValue np = s ? seminorm(H, p, tol) : NormValue{0, 0, true};
  Real norm_p = np.exact_zero ? Real(0)
                              : Real::range(BigFloat(std::max(np.value - np.tol, 0.0), 64),
                                            BigFloat(np.value + np.tol, 64));
  CentroM cm = centro_M(Real(K), norm_p, Real(eps), static_cast<long>(r), static_cast<long>(g), static_cast<long>(s));
  out.n = cm.n;
  out.M = cm.M;

  double width = static_cast<double>(g + s - r + 1);
  mpq_class scale_exp = 1 + mpq_class(1, 2 * cm.n);
  scale_exp.canonicalize();
  GammaData none;

  mpz_class h0 = matrix_height(special_phi);
  Real pre = Real(mpq_class(width)) * Real(mpq_class(h0)) * Real(eps) / pow(Real(mpq_class(cm.M)), scale_exp);
  Residual r0 = tube_residual(H, special_phi, x, none, tol);
  if (compare_norm(r0.norm, lower_double(pre), tol) != Trivalent::IN) {
    out.status = CentroStatus::PRECONDITION_FAILED;
    out.residual = r0.norm;
    return out;
  }

  auto accepts = [&](const IntMorphism& psi, Residual& res) {
    mpz_class h = matrix_height(psi);
    Real rho = Real(mpq_class(static_cast<long>(g + s + 1))) * Real(eps) / pow(Real(mpq_class(h)), scale_exp);
    Real thr = Real(mpq_class(width)) * Real(mpq_class(h)) * rho;
    res = tube_residual(H, psi, x, none, tol);
    return compare_norm(res.norm, lower_double(thr), tol) == Trivalent::IN;
  };

  Residual res;
  if (h0 <= cm.M) {
    ++out.examined;
    if (accepts(special_phi, res)) {
      out.status = CentroStatus::FOUND;
      out.psi = special_phi;
      out.residual = res.norm;
      return out;
    }
  }
  if (!cm.M.fits_slong_p()) {
    out.status = CentroStatus::BUDGET_EXCEEDED;
    return out;
  }
  SpecialEnumerator en(g, s, r, cm.M.get_si());
  while (auto psi = en.next()) {
    if (++out.examined > budget) {
      out.status = CentroStatus::BUDGET_EXCEEDED;
      return out;
    }
    if (accepts(*psi, res)) {
      out.status = CentroStatus::FOUND;
      out.psi = *psi;
      out.residual = res.norm;
      return out;
    }
  }
  out.status = CentroStatus::FAIL;
  return out;
}

}  // namespace tubescan
