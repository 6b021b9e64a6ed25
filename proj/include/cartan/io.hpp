#pragma once

// JSON forms of algebra, basis and monogenic-spec files, and of the reports
// emitted by the command-line tool. Indices in files are one-based.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "cartan/diff_check.hpp"
#include "json.hpp"

namespace cartan::io {

using nlohmann::json;

inline double clean(double v) { return v == 0.0 ? 0.0 : v; }

inline json to_json(cplx z) { return {{"re", clean(z.real())}, {"im", clean(z.imag())}}; }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.value("re", 0.0), j.value("im", 0.0)};
}

inline json to_json(const Element& e) {
  json a = json::array();
  for (const auto& c : e.coords) a.push_back(to_json(c));
  return a;
}

inline Element element_from_json(const json& j) {
  Element e;
  for (const auto& c : j) e.coords.push_back(complex_from_json(c));
  return e;
}

inline json to_json(const SpanPoint& p) {
  json a = json::array();
  for (double v : p.x) a.push_back(clean(v));
  return a;
}

// --- algebra files --------------------------------------------------------

inline AlgebraDescription algebra_from_json(const json& j) {
  AlgebraDescription d;
  d.n = j.at("n").get<int>();
  d.m = j.at("m").get<int>();
  if (j.contains("u_of"))
    for (const auto& [key, value] : j.at("u_of").items()) d.u_of[std::stoi(key) - 1] = value.get<int>() - 1;
  if (j.contains("gamma"))
    for (const auto& g : j.at("gamma"))
      d.gamma.push_back({g.at("r").get<int>() - 1, g.at("s").get<int>() - 1, g.at("k").get<int>() - 1,
                         {g.value("re", 0.0), g.value("im", 0.0)}});
  return d;
}

inline json to_json(const AlgebraDescription& d) {
  json u = json::object();
  for (const auto& [s, v] : d.u_of) u[std::to_string(s + 1)] = v + 1;
  json gamma = json::array();
  for (const auto& g : d.gamma)
    gamma.push_back({{"r", g.r + 1}, {"s", g.s + 1}, {"k", g.k + 1}, {"re", clean(g.value.real())}, {"im", clean(g.value.imag())}});
  return {{"n", d.n}, {"m", d.m}, {"u_of", u}, {"gamma", gamma}};
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
}

template <class F>
auto with_parse_context(const std::filesystem::path& path, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
}

inline AlgebraDescription load_algebra_description(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  return with_parse_context(path, [&] { return algebra_from_json(j); });
}

inline AlgebraSpec load_algebra(const std::filesystem::path& path) { return AlgebraSpec(load_algebra_description(path)); }

// --- basis files ----------------------------------------------------------

inline SpanBasis basis_from_json(const json& j, const AlgebraSpec& spec) {
  std::vector<std::vector<cplx>> rows;
  for (const auto& row : j.at("a")) {
    std::vector<cplx> r;
    for (const auto& c : row) r.push_back(complex_from_json(c));
    rows.push_back(std::move(r));
  }
  if (j.contains("k") && j.at("k").get<int>() != static_cast<int>(rows.size()))
    throw Error(ErrorCode::invalid_basis, "field k does not match the number of rows in a");
  return SpanBasis(spec, std::move(rows));
}

inline json to_json(const SpanBasis& b) {
  json rows = json::array();
  for (const auto& row : b.rows()) {
    json r = json::array();
    for (const auto& c : row) r.push_back(to_json(c));
    rows.push_back(r);
  }
  return {{"k", b.k()}, {"a", rows}};
}

/// Loads a basis file; its "algebra" field (relative to the file) is used unless an algebra is supplied.
inline SpanBasis load_basis(const std::filesystem::path& path, const std::optional<AlgebraSpec>& algebra = std::nullopt) {
  const json j = read_json_file(path);
  AlgebraSpec spec;
  if (algebra) {
    spec = *algebra;
  } else {
    if (!j.contains("algebra")) throw Error(ErrorCode::parse, path.string() + ": no algebra given for basis");
    spec = load_algebra(path.parent_path() / j.at("algebra").get<std::string>());
  }
  return with_parse_context(path, [&] { return basis_from_json(j, spec); });
}

// --- monogenic specs ------------------------------------------------------

inline HoloFunction holo_from_json(const json& j) {
  std::vector<cplx> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(complex_from_json(c));
  const std::string kind = j.value("kind", "poly");
  if (kind == "poly") return HoloFunction::polynomial(std::move(coeffs));
  if (kind == "series")
    return HoloFunction::series(std::move(coeffs), j.contains("center") ? complex_from_json(j.at("center")) : cplx{},
                                j.at("radius").get<double>());
  throw Error(ErrorCode::parse, "unknown holomorphic function kind '" + kind + "'");
}

inline json to_json(const HoloFunction& f) {
  json c = json::array();
  for (const auto& v : f.coeffs) c.push_back(to_json(v));
  if (f.kind == HoloFunction::Kind::polynomial) return {{"kind", "poly"}, {"coeffs", c}};
  return {{"kind", "series"}, {"coeffs", c}, {"center", to_json(f.center)}, {"radius", f.radius}};
}

inline MonogenicSpec mspec_from_json(const json& j) {
  MonogenicSpec ms;
  for (const auto& f : j.at("F")) ms.F.push_back(holo_from_json(f));
  if (j.contains("G"))
    for (const auto& g : j.at("G")) ms.G.push_back(holo_from_json(g));
  return ms;
}

inline json to_json(const MonogenicSpec& ms) {
  json F = json::array(), G = json::array();
  for (const auto& f : ms.F) F.push_back(to_json(f));
  for (const auto& g : ms.G) G.push_back(to_json(g));
  return {{"F", F}, {"G", G}};
}

/// Loads a monogenic spec; a missing or short "G" list is padded with zero components.
inline MonogenicSpec load_mspec(const std::filesystem::path& path, const AlgebraSpec& spec) {
  const json j = read_json_file(path);
  MonogenicSpec ms = with_parse_context(path, [&] { return mspec_from_json(j); });
  while (static_cast<int>(ms.G.size()) < spec.n() - spec.m()) ms.G.push_back(HoloFunction::zero());
  return ms;
}

// --- reports --------------------------------------------------------------

inline json to_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"kind", to_string(x.kind)}, {"detail", x.detail}});
  return {{"valid", r.valid()}, {"violations", v}};
}

inline json to_json(const DiffReport& r) {
  json dirs = json::array();
  for (const auto& d : r.directions) dirs.push_back(to_json(d));
  return {{"derivative", to_json(r.derivative)},
          {"directions", dirs},
          {"residuals", r.residuals},
          {"max_residual", r.max_residual()},
          {"step_schedule", r.step_schedule},
          {"converged", r.converged},
          {"pass", r.pass}};
}

inline json to_json(const HillePointReport& p) {
  json j = {{"point", to_json(p.x)},
            {"gateaux_max_residual", p.gateaux_max_residual},
            {"gateaux_pass", p.gateaux_pass},
            {"lorch_residuals", p.lorch_residuals},
            {"lorch_ratios", p.lorch_ratios},
            {"lorch_pass", p.lorch_pass},
            {"derivative_pass", p.derivative_pass},
            {"pass", p.pass}};
  if (!p.derivative.coords.empty()) j["derivative"] = to_json(p.derivative);
  if (p.derivative_error) j["derivative_error"] = *p.derivative_error;
  if (!p.error.empty()) j["error"] = p.error;
  return j;
}

inline json to_json(const HilleSummary& s) {
  json pts = json::array();
  for (const auto& p : s.points) pts.push_back(to_json(p));
  return {{"points", pts},
          {"gateaux_pass_rate", s.gateaux_pass_rate},
          {"lorch_pass_rate", s.lorch_pass_rate},
          {"derivative_pass_rate", s.derivative_pass_rate},
          {"pass_rate", s.pass_rate}};
}

inline json to_json(const IncrementReport& r) {
  return {{"vacuous", r.vacuous}, {"trials", r.trials}, {"max_increment", r.max_increment}, {"pass", r.pass}};
}

inline json error_json(const Error& e) {
  json j = {{"code", to_string(e.code())}, {"message", e.what()}};
  if (e.index()) j["index"] = *e.index() + 1;
  return {{"error", j}};
}

}  // namespace cartan::io
