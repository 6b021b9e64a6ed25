// cartan: command-line front end. One JSON document on stdout per run,
// diagnostics on stderr.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "cartan/cartan.hpp"
#include "cartan/io.hpp"

using namespace cartan;
using nlohmann::json;

namespace {

struct Config {
  std::string algebra, basis, mspec, point, t;
  std::string method = "residue";
  int nodes = 256;
  double tol = kGateauxTol;
  std::uint64_t seed = 1;
  int points = 20;
  int u = 1;
};

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse, std::string("--") + what + ": bad number '" + item + "'");
    }
  }
  return out;
}

SpanPoint parse_point(const Config& c, const SpanBasis& b) {
  if (c.point.empty()) throw Error(ErrorCode::invalid_argument, "--point is required");
  SpanPoint x(parse_list(c.point, "point"));
  if (static_cast<int>(x.size()) != b.k())
    throw Error(ErrorCode::dimension_mismatch,
                "--point has " + std::to_string(x.size()) + " coordinates, basis has k = " + std::to_string(b.k()));
  return x;
}

cplx parse_t(const Config& c) {
  if (c.t.empty()) throw Error(ErrorCode::invalid_argument, "--t is required");
  const auto v = parse_list(c.t, "t");
  if (v.size() != 2) throw Error(ErrorCode::parse, "--t expects \"re,im\"");
  return {v[0], v[1]};
}

SpanBasis basis_of(const Config& c) {
  if (c.basis.empty()) throw Error(ErrorCode::invalid_argument, "--basis is required");
  if (c.algebra.empty()) return io::load_basis(c.basis);
  return io::load_basis(c.basis, io::load_algebra(c.algebra));
}

MonogenicSpec mspec_of(const Config& c, const AlgebraSpec& spec) {
  if (c.mspec.empty()) throw Error(ErrorCode::invalid_argument, "--mspec is required");
  return io::load_mspec(c.mspec, spec);
}

int cmd_validate(const Config& c, json& out) {
  if (c.algebra.empty()) throw Error(ErrorCode::invalid_argument, "--algebra is required");
  const AlgebraDescription desc = io::load_algebra_description(c.algebra);
  const ValidationReport rep = validate_algebra(desc);
  out["algebra"] = io::to_json(rep);
  bool ok = rep.valid();
  if (ok && !c.basis.empty()) {
    const SpanBasis b = io::load_basis(c.basis, AlgebraSpec(desc));
    const auto cond = check_span_condition(b);
    json failed = json::array();
    for (std::size_t u = 0; u < cond.size(); ++u)
      if (!cond[u]) failed.push_back(u + 1);
    out["span_condition"] = {{"holds", cond}, {"failed", failed}};
    ok = failed.empty();
  }
  out["valid"] = ok;
  return ok ? 0 : 1;
}

int cmd_eval(const Config& c, json& out) {
  const SpanBasis b = basis_of(c);
  const SpanPoint x = parse_point(c, b);
  const MonogenicSpec ms = mspec_of(c, b.algebra());
  Element v;
  if (c.method == "residue") {
    v = eval_residue(ms, x, b);
  } else if (c.method == "quadrature") {
    v = eval_quadrature(ms, x, b, default_contours(ms, x, b, c.nodes));
    out["nodes"] = c.nodes;
  } else {
    throw Error(ErrorCode::invalid_argument, "--method must be residue or quadrature");
  }
  out["method"] = c.method;
  out["point"] = io::to_json(x);
  out["value"] = io::to_json(v);
  return 0;
}

int cmd_invert(const Config& c, json& out) {
  const SpanBasis b = basis_of(c);
  const SpanPoint x = parse_point(c, b);
  out["point"] = io::to_json(x);
  out["value"] = io::to_json(inverse(x, b));
  return 0;
}

int cmd_resolvent(const Config& c, json& out) {
  const SpanBasis b = basis_of(c);
  const SpanPoint x = parse_point(c, b);
  const cplx t = parse_t(c);
  out["point"] = io::to_json(x);
  out["t"] = io::to_json(t);
  out["value"] = io::to_json(resolvent(t, x, b));
  return 0;
}

int cmd_derive(const Config& c, json& out) {
  const SpanBasis b = basis_of(c);
  const SpanPoint x = parse_point(c, b);
  const MonogenicSpec ms = mspec_of(c, b.algebra());
  // Unit box around x, wide enough for the whole step schedule.
  Box box{x.x, x.x};
  for (std::size_t i = 0; i < x.size(); ++i) {
    box.lo[i] -= 1.0;
    box.hi[i] += 1.0;
  }
  const PointFunction phi = representation_function(ms, b, box);
  const auto dirs = default_directions(x.size(), c.seed);
  const DiffReport rep = gateaux_derivative(phi, x, dirs, b, c.tol);
  out = io::to_json(rep);
  out["point"] = io::to_json(x);
  out["exact_derivative"] = io::to_json(eval_residue(derivative(ms), x, b));
  return 0;
}

int cmd_verify_hille(const Config& c, json& out) {
  const SpanBasis b = basis_of(c);
  const MonogenicSpec ms = mspec_of(c, b.algebra());
  HilleOptions opt;
  opt.points = c.points;
  opt.seed = c.seed;
  opt.tol = c.tol;
  out = io::to_json(hille_harness(ms, Box::cube(static_cast<std::size_t>(b.k()), -1.0, 1.0), b, opt));
  return 0;
}

int cmd_mu_basis(const Config& c, json& out) {
  const SpanBasis b = basis_of(c);
  if (c.u < 1 || c.u > b.m()) throw Error(ErrorCode::invalid_argument, "--u must be in 1.." + std::to_string(b.m()));
  json vs = json::array();
  for (const auto& v : noninvertible_subspace(c.u - 1, b)) vs.push_back(io::to_json(v));
  out["u"] = c.u;
  out["dimension"] = vs.size();
  out["basis"] = vs;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations in commutative algebras with a Cartan basis"};
  app.require_subcommand(1);
  Config c;

  auto add_basis = [&](CLI::App* s) {
    s->add_option("--algebra", c.algebra, "algebra description (JSON)");
    s->add_option("--basis", c.basis, "span basis (JSON)");
  };
  auto add_point = [&](CLI::App* s) { s->add_option("--point", c.point, "x1,x2,...,xk"); };

  auto* validate = app.add_subcommand("validate", "check Cartan multiplication rules and the span condition");
  add_basis(validate);

  auto* eval = app.add_subcommand("eval", "evaluate a monogenic function");
  add_basis(eval);
  add_point(eval);
  eval->add_option("--mspec", c.mspec, "component functions (JSON)");
  eval->add_option("--method", c.method, "residue or quadrature")->check(CLI::IsMember({"residue", "quadrature"}));
  eval->add_option("--nodes", c.nodes, "trapezoid nodes per contour")->check(CLI::PositiveNumber);

  auto* invert = app.add_subcommand("invert", "inverse of the embedded point");
  add_basis(invert);
  add_point(invert);

  auto* resolvent = app.add_subcommand("resolvent", "(t - zeta)^-1");
  add_basis(resolvent);
  add_point(resolvent);
  resolvent->add_option("--t", c.t, "re,im");

  auto* derive = app.add_subcommand("derive", "Gateaux derivative report at one point");
  add_basis(derive);
  add_point(derive);
  derive->add_option("--mspec", c.mspec, "component functions (JSON)");
  derive->add_option("--tol", c.tol, "residual tolerance");
  derive->add_option("--seed", c.seed, "direction seed");

  auto* hille = app.add_subcommand("verify-hille", "Gateaux/Lorch harness over sampled points of [-1,1]^k");
  add_basis(hille);
  hille->add_option("--mspec", c.mspec, "component functions (JSON)");
  hille->add_option("--tol", c.tol, "residual tolerance");
  hille->add_option("--seed", c.seed, "sampling seed");
  hille->add_option("--points", c.points, "number of points")->check(CLI::PositiveNumber);

  auto* mu = app.add_subcommand("mu-basis", "orthonormal basis of the noninvertible subspace M_u");
  add_basis(mu);
  mu->add_option("--u", c.u, "idempotent index, 1-based");

  CLI11_PARSE(app, argc, argv);

  json out;
  int status = 0;
  try {
    if (*validate) status = cmd_validate(c, out);
    else if (*eval) status = cmd_eval(c, out);
    else if (*invert) status = cmd_invert(c, out);
    else if (*resolvent) status = cmd_resolvent(c, out);
    else if (*derive) status = cmd_derive(c, out);
    else if (*hille) status = cmd_verify_hille(c, out);
    else if (*mu) status = cmd_mu_basis(c, out);
  } catch (const Error& e) {
    std::cerr << "cartan: " << to_string(e.code()) << ": " << e.what() << "\n";
    out = io::error_json(e);
    status = 2;
  }
  std::cout << out.dump(2) << "\n";
  return status;
}
