#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "tubescan/arith.hpp"
#include "tubescan/commands.hpp"
#include "tubescan/errors.hpp"

using namespace tubescan;

namespace {

CurveOverQ curve_from(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw InputError("--curve expects A,B");
  return CurveOverQ(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

std::optional<std::string> opt(const std::string& s) {
  return s.empty() ? std::nullopt : std::optional<std::string>(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tubescan: heights, morphisms, bound chains and tube scans on powers of an elliptic curve"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_stamp());

  std::string config, points, out, curve, tol, point, matrix;
  long cap = 0, g = 0, r = 0, M = 0;
  bool canonical_only = false;

  auto* height = app.add_subcommand("height", "canonical height and norm of a point or point vector");
  height->add_option("point", point, "\"x,y\", \"O\" or \"P ; Q ; ...\"")->required();
  height->add_option("--curve", curve, "A,B for y^2 = x^3 + Ax + B");
  height->add_option("--config", config, "take the curve and height tolerance from a config file");
  height->add_option("--tol", tol, "absolute tolerance (default 1e-20)");

  auto* reduce = app.add_subcommand("reduce", "Gauss-reduce an integer matrix of full row rank");
  reduce->add_option("matrix", matrix, "\"[[2,0,3],[0,2,5]]\", \"(2,4)\", ...")->required();

  auto* enumerate = app.add_subcommand("enumerate", "list Gauss-reduced morphisms of height <= M");
  enumerate->add_option("g", g)->required();
  enumerate->add_option("r", r)->required();
  enumerate->add_option("M", M, "height cap (or --cap)");
  enumerate->add_option("--cap", cap, "height cap");
  enumerate->add_flag("--canonical-only", canonical_only, "only matrices (aI_r | L)");
  enumerate->add_option("--config", config, "take the enumeration budget from a config file");

  auto* bounds = app.add_subcommand("bounds", "evaluate the effective constant chain");
  bounds->add_option("--config", config)->required();
  bounds->add_option("--out", out, "also write the report (and PATH.json)");

  auto* scan = app.add_subcommand("scan", "scan points against tubes around algebraic subgroups");
  scan->add_option("--config", config)->required();
  scan->add_option("--points", points, "points file (overrides the config)");
  scan->add_option("--out", out, "report path (default stdout)");
  scan->add_option("--tol", tol, "comparison tolerance (overrides the config)");
  scan->add_option("--cap", cap, "morphism height cap (overrides the config)");
  scan->add_flag("--canonical-only", canonical_only, "only matrices (aI_r | L)");

  auto* check = app.add_subcommand("check", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (height->parsed()) {
      if (curve.empty() == config.empty()) throw InputError("height needs exactly one of --curve and --config");
      std::optional<RunConfig> c;
      if (!config.empty()) c = load_config(config);
      double t = !tol.empty() ? nearest(parse_real_literal(tol)) : c ? nearest(c->height_tol) : 1e-20;
      return cmd_height(c ? c->curve() : curve_from(curve), point, t, std::cout);
    }
    if (reduce->parsed()) return cmd_reduce(matrix, std::cout);
    if (enumerate->parsed()) {
      if (M == 0) M = cap;
      if (M == 0) throw InputError("enumerate needs M or --cap");
      long budget = config.empty() ? RunConfig{}.budget : load_config(config).budget;
      return cmd_enumerate(g, r, M, canonical_only, budget, std::cout);
    }
    if (bounds->parsed()) return cmd_bounds(load_config(config), opt(out), std::cout);
    if (scan->parsed()) {
      RunConfig c = load_config(config);
      if (!tol.empty()) c.compare_tol = parse_real_literal(tol);
      if (cap > 0) c.M_cap = cap;
      if (canonical_only) c.canonical_only = true;
      return cmd_scan(c, opt(points), opt(out), std::cout);
    }
    if (check->parsed()) return cmd_check(std::cout);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitOk;
}
