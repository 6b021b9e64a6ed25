#pragma once

// Commutative associative algebras over C written in a Cartan basis
// I_1..I_m (idempotents), I_{m+1}..I_n (nilpotents). All indices in this
// header are zero-based: idempotents are 0..m-1, nilpotents m..n-1.

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cartan/error.hpp"

namespace cartan {

inline constexpr double kDefaultTol = 1e-12;

/// Coefficient of I_k in the product I_r I_s, for nilpotent r and s.
struct GammaEntry {
  int r = 0;
  int s = 0;
  int k = 0;
  cplx value;
};

/// Raw, unvalidated description of an algebra as it appears in a spec file.
struct AlgebraDescription {
  int n = 0;
  int m = 0;
  std::map<int, int> u_of;  // nilpotent index -> idempotent index
  std::vector<GammaEntry> gamma;
};

struct Violation {
  enum class Kind { rule2_support, rule3_missing, commutativity, associativity, unit };
  Kind kind;
  std::string detail;
};

inline const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::rule2_support: return "rule2_support";
    case Violation::Kind::rule3_missing: return "rule3_missing";
    case Violation::Kind::commutativity: return "commutativity";
    case Violation::Kind::associativity: return "associativity";
    case Violation::Kind::unit: return "unit";
  }
  return "unknown";
}

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

/// An algebra element: n complex coordinates in the Cartan basis.
struct Element {
  std::vector<cplx> coords;

  Element() = default;
  explicit Element(std::size_t n) : coords(n) {}
  explicit Element(std::vector<cplx> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  cplx& operator[](std::size_t i) { return coords[i]; }
  const cplx& operator[](std::size_t i) const { return coords[i]; }

  Element& operator+=(const Element& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  Element& operator-=(const Element& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
  }
  Element& operator*=(cplx c) {
    for (auto& v : coords) v *= c;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(cplx c, Element a) { return a *= c; }
  friend Element operator*(Element a, cplx c) { return a *= c; }
  friend bool operator==(const Element&, const Element&) = default;

 private:
  void check_same_size(const Element& o) const {
    if (o.coords.size() != coords.size())
      throw Error(ErrorCode::dimension_mismatch, "element sizes differ");
  }
};

namespace detail {

struct Term {
  int k;
  cplx value;
};

/// Dense n x n table of sparse products I_r I_s, assembled from rules 1-3.
/// Entries listed only for r <= s would suffice; both halves are kept so
/// lookups need no index juggling.
class ProductTable {
 public:
  ProductTable() = default;

  ProductTable(int n, int m, const std::map<int, int>& u_of,
               const std::map<std::pair<int, int>, std::vector<Term>>& nilpotent)
      : n_(n), table_(static_cast<std::size_t>(n) * n) {
    for (int r = 0; r < m; ++r) at(r, r).push_back({r, 1.0});
    for (const auto& [s, u] : u_of) {
      at(u, s).push_back({s, 1.0});
      at(s, u).push_back({s, 1.0});
    }
    for (const auto& [rs, terms] : nilpotent) {
      at(rs.first, rs.second) = terms;
      if (rs.first != rs.second) at(rs.second, rs.first) = terms;
    }
  }

  const std::vector<Term>& operator()(int r, int s) const {
    return table_[static_cast<std::size_t>(r) * n_ + s];
  }

 private:
  std::vector<Term>& at(int r, int s) { return table_[static_cast<std::size_t>(r) * n_ + s]; }

  int n_ = 0;
  std::vector<std::vector<Term>> table_;
};

inline Element multiply(const Element& a, const Element& b, const ProductTable& table) {
  const std::size_t n = a.size();
  Element out(n);
  // Symmetric accumulation (a_i b_j + a_j b_i) makes the product bitwise commutative.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx w = (i == j) ? a[i] * b[i] : a[i] * b[j] + a[j] * b[i];
      if (w == cplx{}) continue;
      for (const Term& t : table(static_cast<int>(i), static_cast<int>(j)))
        out[static_cast<std::size_t>(t.k)] += w * t.value;
    }
  }
  return out;
}

inline void check_structure(const AlgebraDescription& d) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::structural, msg); };
  if (d.n < 1) fail("n must be positive");
  if (d.m < 1 || d.m > d.n) fail("m must satisfy 1 <= m <= n");
  for (const auto& [s, u] : d.u_of) {
    if (s < d.m || s >= d.n) fail("u_of key " + std::to_string(s + 1) + " is not a nilpotent index");
    if (u < 0 || u >= d.m) fail("u_of value for " + std::to_string(s + 1) + " is not an idempotent index");
  }
  for (const auto& g : d.gamma) {
    if (g.r < d.m || g.r >= d.n || g.s < d.m || g.s >= d.n)
      fail("gamma factor indices must be nilpotent: (" + std::to_string(g.r + 1) + "," +
           std::to_string(g.s + 1) + ")");
    if (g.k < 0 || g.k >= d.n) fail("gamma target index out of range: " + std::to_string(g.k + 1));
  }
}

}  // namespace detail

class AlgebraSpec;
ValidationReport validate_algebra(const AlgebraDescription& d);

/// A validated Cartan-form algebra A_n^m. Construction refuses invalid input.
class AlgebraSpec {
 public:
  AlgebraSpec() = default;

  explicit AlgebraSpec(AlgebraDescription d) {
    ValidationReport report = validate_algebra(d);
    if (!report.valid()) {
      std::ostringstream os;
      os << "invalid algebra:";
      for (const auto& v : report.violations) os << " [" << to_string(v.kind) << "] " << v.detail << ';';
      throw Error(ErrorCode::invalid_algebra, os.str());
    }
    desc_ = std::move(d);
    table_ = build_table(desc_);
  }

  int n() const { return desc_.n; }
  int m() const { return desc_.m; }
  bool is_idempotent(int i) const { return i >= 0 && i < desc_.m; }

  /// u_s for a nilpotent index s.
  int idempotent_of(int s) const { return desc_.u_of.at(s); }

  /// Nonzero terms of I_r I_s.
  const std::vector<detail::Term>& product(int r, int s) const { return table_(r, s); }

  /// Coefficient of I_k in I_r I_s.
  cplx structure_constant(int r, int s, int k) const {
    for (const auto& t : table_(r, s))
      if (t.k == k) return t.value;
    return {};
  }

  const AlgebraDescription& description() const { return desc_; }
  const detail::ProductTable& table() const { return table_; }

  static detail::ProductTable build_table(const AlgebraDescription& d) {
    std::map<std::pair<int, int>, std::vector<detail::Term>> nil;
    for (const auto& g : d.gamma) {
      auto key = std::minmax(g.r, g.s);
      auto& terms = nil[{key.first, key.second}];
      auto it = std::find_if(terms.begin(), terms.end(), [&](const detail::Term& t) { return t.k == g.k; });
      if (it == terms.end() && g.value != cplx{}) terms.push_back({g.k, g.value});
    }
    for (auto& [_, terms] : nil)
      std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
    return detail::ProductTable(d.n, d.m, d.u_of, nil);
  }

 private:
  AlgebraDescription desc_;
  detail::ProductTable table_;
};

inline Element basis_vector(const AlgebraSpec& spec, int k) {
  if (k < 0 || k >= spec.n()) throw Error(ErrorCode::invalid_argument, "basis index out of range", k);
  Element e(static_cast<std::size_t>(spec.n()));
  e[static_cast<std::size_t>(k)] = 1.0;
  return e;
}

/// 1 = I_1 + ... + I_m.
inline Element unit(const AlgebraSpec& spec) {
  Element e(static_cast<std::size_t>(spec.n()));
  for (int u = 0; u < spec.m(); ++u) e[static_cast<std::size_t>(u)] = 1.0;
  return e;
}

inline Element mul(const Element& a, const Element& b, const AlgebraSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.n());
  if (a.size() != n || b.size() != n)
    throw Error(ErrorCode::dimension_mismatch, "element length does not match algebra dimension");
  return detail::multiply(a, b, spec.table());
}

/// Euclidean norm of the coordinate vector.
inline double norm(const Element& a) {
  double s = 0.0;
  for (const auto& v : a.coords) s += std::norm(v);
  return std::sqrt(s);
}

/// f_u: the multiplicative functional whose kernel is the maximal ideal I_u.
inline cplx functional(const Element& a, int u, const AlgebraSpec& spec) {
  if (!spec.is_idempotent(u)) throw Error(ErrorCode::invalid_argument, "idempotent index out of range", u);
  if (a.size() != static_cast<std::size_t>(spec.n()))
    throw Error(ErrorCode::dimension_mismatch, "element length does not match algebra dimension");
  return a[static_cast<std::size_t>(u)];
}

inline bool in_ideal(const Element& a, int u, const AlgebraSpec& spec, double tol = kDefaultTol) {
  return std::abs(functional(a, u, spec)) <= tol;
}

/// Membership in the radical, the intersection of all maximal ideals.
inline bool in_radical(const Element& a, const AlgebraSpec& spec, double tol = kDefaultTol) {
  for (int u = 0; u < spec.m(); ++u)
    if (!in_ideal(a, u, spec, tol)) return false;
  return true;
}

inline ValidationReport validate_algebra(const AlgebraDescription& d) {
  detail::check_structure(d);
  ValidationReport report;
  auto add = [&](Violation::Kind kind, std::string detail) { report.violations.push_back({kind, std::move(detail)}); };
  auto idx = [](int i) { return std::to_string(i + 1); };

  for (int s = d.m; s < d.n; ++s)
    if (!d.u_of.count(s)) add(Violation::Kind::rule3_missing, "no idempotent assigned to I_" + idx(s));

  std::map<std::tuple<int, int, int>, cplx> seen;
  for (const auto& g : d.gamma) {
    if (g.value != cplx{} && g.k <= std::max(g.r, g.s))
      add(Violation::Kind::rule2_support, "I_" + idx(g.r) + " I_" + idx(g.s) + " has a component on I_" + idx(g.k) +
                                              " but support must start at index " + idx(std::max(g.r, g.s) + 1));
    auto key = std::make_tuple(g.r, g.s, g.k);
    if (seen.count(key))
      throw Error(ErrorCode::structural, "duplicate gamma entry (" + idx(g.r) + "," + idx(g.s) + "," + idx(g.k) + ")");
    seen[key] = g.value;
  }
  for (const auto& [key, value] : seen) {
    auto [r, s, k] = key;
    if (r >= s) continue;
    auto it = seen.find({s, r, k});
    if (it != seen.end() && std::abs(it->second - value) > kDefaultTol)
      add(Violation::Kind::commutativity, "I_" + idx(r) + " I_" + idx(s) + " != I_" + idx(s) + " I_" + idx(r) +
                                              " at I_" + idx(k));
  }
  if (!report.valid()) return report;

  // Remaining checks run on the assembled table.
  const auto table = AlgebraSpec::build_table(d);
  const auto n = static_cast<std::size_t>(d.n);
  auto e = [&](int i) {
    Element v(n);
    v[static_cast<std::size_t>(i)] = 1.0;
    return v;
  };
  Element one(n);
  for (int u = 0; u < d.m; ++u) one[static_cast<std::size_t>(u)] = 1.0;

  for (int a = 0; a < d.n; ++a) {
    if (norm(detail::multiply(one, e(a), table) - e(a)) > kDefaultTol)
      add(Violation::Kind::unit, "1 * I_" + idx(a) + " != I_" + idx(a));
  }
  for (int a = 0; a < d.n; ++a) {
    for (int b = 0; b < d.n; ++b) {
      const Element ab = detail::multiply(e(a), e(b), table);
      for (int c = 0; c < d.n; ++c) {
        const Element lhs = detail::multiply(ab, e(c), table);
        const Element rhs = detail::multiply(e(a), detail::multiply(e(b), e(c), table), table);
        if (norm(lhs - rhs) > kDefaultTol)
          add(Violation::Kind::associativity,
              "(I_" + idx(a) + " I_" + idx(b) + ") I_" + idx(c) + " != I_" + idx(a) + " (I_" + idx(b) + " I_" + idx(c) + ")");
      }
    }
  }
  return report;
}

}  // namespace cartan
