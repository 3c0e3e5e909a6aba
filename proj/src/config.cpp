#include "tubescan/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "tubescan/arith.hpp"
#include "tubescan/errors.hpp"

namespace tubescan {

namespace pt = boost::property_tree;

namespace {

long to_long(const std::string& v, const std::string& key) {
  mpz_class z = parse_integer(v);
  if (!z.fits_slong_p()) throw InputError(key + ": integer out of range");
  return z.get_si();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  auto rat = [](mpq_class RunConfig::*f) {
    return Setter([f](RunConfig& c, const std::string& v) { c.*f = parse_rational(v); });
  };
  auto real = [](mpq_class RunConfig::*f) {
    return Setter([f](RunConfig& c, const std::string& v) { c.*f = parse_real_literal(v); });
  };
  auto opt_real = [](std::optional<mpq_class> RunConfig::*f) {
    return Setter([f](RunConfig& c, const std::string& v) { c.*f = parse_real_literal(v); });
  };
  auto integer = [](long RunConfig::*f, const char* key) {
    return Setter([f, key](RunConfig& c, const std::string& v) { c.*f = to_long(v, key); });
  };
  static const std::map<std::string, Setter> m = {
      {"curve.A", rat(&RunConfig::A)},
      {"curve.B", rat(&RunConfig::B)},
      {"curve.degE", integer(&RunConfig::degE, "degE")},
      {"ambient.g", integer(&RunConfig::g, "g")},
      {"ambient.d", integer(&RunConfig::d, "d")},
      {"ambient.s", integer(&RunConfig::s, "s")},
      {"params.K", real(&RunConfig::K)},
      {"params.degV", integer(&RunConfig::degV, "degV")},
      {"params.stab_order", integer(&RunConfig::stab_order, "stab_order")},
      {"params.eta", opt_real(&RunConfig::eta)},
      {"params.c0", real(&RunConfig::c0)},
      {"params.c1", real(&RunConfig::c1)},
      {"params.c2", real(&RunConfig::c2)},
      {"params.c_bog_g", real(&RunConfig::c_bog_g)},
      {"params.c_bog_d1", real(&RunConfig::c_bog_d1)},
      {"params.c_p", real(&RunConfig::c_p)},
      {"params.eps0_p", real(&RunConfig::eps0_p)},
      {"params.gamma_norm", opt_real(&RunConfig::gamma_norm)},
      {"params.eps1_threshold", opt_real(&RunConfig::eps1_threshold)},
      {"gamma.coeff_box", integer(&RunConfig::coeff_box, "coeff_box")},
      {"points.path", [](RunConfig& c, const std::string& v) { c.points_path = v; }},
      {"scan.r", integer(&RunConfig::r, "r")},
      {"scan.eps", real(&RunConfig::eps)},
      {"scan.canonical_only",
       [](RunConfig& c, const std::string& v) {
         if (v != "true" && v != "false") throw InputError("expected true or false");
         c.canonical_only = v == "true";
       }},
      {"tolerances.height", real(&RunConfig::height_tol)},
      {"tolerances.compare", real(&RunConfig::compare_tol)},
      {"caps.M_cap", integer(&RunConfig::M_cap, "M_cap")},
      {"caps.budget", integer(&RunConfig::budget, "budget")},
      {"caps.threads", integer(&RunConfig::threads, "threads")},
  };
  return m;
}

}  // namespace

double nearest(const mpq_class& q) { return BigFloat(q, 53, MPFR_RNDN).to_double(); }

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  RunConfig c;
  std::map<long, PointVector> gens;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw InputError("config: key outside a section: " + section);
    for (const auto& [key, node] : body) {
      std::string value = trim(node.get_value<std::string>());
      std::string full = section + "." + key;
      try {
        if (section == "gamma" && key.rfind("gen", 0) == 0) {
          long idx = to_long(key.substr(3), full);
          if (idx < 1 || gens.count(idx)) throw InputError("config: bad or repeated generator index " + key);
          gens[idx] = parse_point_vector(value);
          continue;
        }
        auto it = setters().find(full);
        if (it == setters().end()) throw InputError("config: unknown key " + full);
        it->second(c, value);
      } catch (const InputError& e) {
        std::string msg = e.what();
        if (msg.rfind("config:", 0) == 0) throw;
        throw InputError("config: " + full + ": " + msg);
      }
    }
  }
  long expect = 1;
  for (auto& [idx, v] : gens) {
    if (idx != expect++) throw InputError("config: generator indices must be 1..n without gaps");
    c.generators.push_back(std::move(v));
  }
  CurveOverQ E = c.curve();  // rejects singular curves
  for (const auto& gen : c.generators)
    for (const auto& P : gen.coords) require_on_curve(E, P);
  if (c.g < 1 || c.d < 0 || c.s < 0) throw InputError("config: need g >= 1, d >= 0, s >= 0");
  if (c.coeff_box < 0 || c.M_cap < 1 || c.budget < 1 || c.threads < 1 || c.r < 1)
    throw InputError("config: need coeff_box >= 0 and r, M_cap, budget, threads >= 1");
  if (c.height_tol <= 0 || c.compare_tol <= 0) throw InputError("config: tolerances must be positive");
  return c;
}

RunConfig load_config(const std::string& path) {
  RunConfig c = parse_config(read_file(path));
  if (!c.points_path.empty()) {
    std::filesystem::path p(c.points_path);
    if (p.is_relative()) c.points_path = (std::filesystem::path(path).parent_path() / p).lexically_normal().string();
  }
  return c;
}

std::string serialize(const RunConfig& c) {
  std::ostringstream o;
  auto q = [](const mpq_class& v) { return to_string(v); };
  o << "[curve]\nA = " << q(c.A) << "\nB = " << q(c.B) << "\ndegE = " << c.degE << "\n\n";
  o << "[ambient]\ng = " << c.g << "\nd = " << c.d << "\ns = " << c.s << "\n\n";
  o << "[params]\nK = " << q(c.K) << "\ndegV = " << c.degV << "\nstab_order = " << c.stab_order << "\n";
  if (c.eta) o << "eta = " << q(*c.eta) << "\n";
  o << "c0 = " << q(c.c0) << "\nc1 = " << q(c.c1) << "\nc2 = " << q(c.c2) << "\nc_bog_g = " << q(c.c_bog_g)
    << "\nc_bog_d1 = " << q(c.c_bog_d1) << "\nc_p = " << q(c.c_p) << "\neps0_p = " << q(c.eps0_p) << "\n";
  if (c.gamma_norm) o << "gamma_norm = " << q(*c.gamma_norm) << "\n";
  if (c.eps1_threshold) o << "eps1_threshold = " << q(*c.eps1_threshold) << "\n";
  o << "\n[gamma]\ncoeff_box = " << c.coeff_box << "\n";
  for (std::size_t i = 0; i < c.generators.size(); ++i)
    o << "gen" << i + 1 << " = " << serialize(c.generators[i]) << "\n";
  if (!c.points_path.empty()) o << "\n[points]\npath = " << c.points_path << "\n";
  o << "\n[scan]\nr = " << c.r << "\neps = " << q(c.eps) << "\ncanonical_only = " << (c.canonical_only ? "true" : "false") << "\n\n";
  o << "[tolerances]\nheight = " << q(c.height_tol) << "\ncompare = " << q(c.compare_tol) << "\n\n";
  o << "[caps]\nM_cap = " << c.M_cap << "\nbudget = " << c.budget << "\nthreads = " << c.threads << "\n";
  return o.str();
}

BoundParams RunConfig::bound_params() const {
  BoundParams p;
  p.g = g;
  p.d = d;
  p.s = s;
  p.K = K;
  p.degV = degV;
  p.stab_order = stab_order;
  p.degE = degE;
  p.eta = eta;
  p.c0 = c0;
  p.c1 = c1;
  p.c2 = c2;
  p.c_bog_g = c_bog_g;
  p.c_bog_d1 = c_bog_d1;
  p.c_p = c_p;
  p.eps0_p = eps0_p;
  p.eps1_threshold = eps1_threshold;
  if (gamma_norm) {
    p.gamma_norm = Real(*gamma_norm);
  } else if (!generators.empty()) {
    HeightEngine H(curve());
    double tol = nearest(height_tol);
    double lo = 0, hi = 0;
    bool all_zero = true;
    for (const auto& gen : generators) {
      NormValue n = seminorm(H, gen, tol);
      if (n.exact_zero) continue;
      all_zero = false;
      lo = std::max(lo, std::max(n.value - n.tol, 0.0));
      hi = std::max(hi, n.value + n.tol);
    }
    p.gamma_norm = all_zero ? Real(0) : Real::range(BigFloat(lo, 64), BigFloat(hi, 64));
  }
  return p;
}

ScanOptions RunConfig::scan_options() const {
  ScanOptions o;
  o.K = nearest(K);
  o.eps = nearest(eps);
  o.gamma = {generators, coeff_box};
  o.r = static_cast<std::size_t>(r);
  o.M_cap = M_cap;
  o.canonical_only = canonical_only;
  o.tol = nearest(compare_tol);
  o.threads = static_cast<unsigned>(threads);
  o.budget = budget;
  return o;
}

std::vector<PointVector> parse_points(const std::string& text) {
  std::vector<PointVector> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      out.push_back(parse_point_vector(line));
    } catch (const InputError& e) {
      throw InputError("points line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<PointVector> load_points(const std::string& path) { return parse_points(read_file(path)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace tubescan
