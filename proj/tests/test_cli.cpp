#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "cartan/io.hpp"

using nlohmann::json;

namespace {

const std::string fx = std::string(CARTAN_FIXTURES) + "/";

struct Run {
  int status;
  std::string out;
  json doc() const { return json::parse(out); }
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CARTAN_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::complex<double> c(const json& j) { return cartan::io::complex_from_json(j); }

}  // namespace

TEST_CASE("cli validate") {
  auto ok = run("validate --algebra " + fx + "dual.json");
  CHECK(ok.status == 0);
  CHECK(ok.doc().at("valid") == true);

  auto bad = run("validate --algebra " + fx + "dual_rule2_violation.json");
  CHECK(bad.status == 1);
  CHECK(bad.doc().at("algebra").at("violations").at(0).at("kind") == "rule2_support");

  auto real = run("validate --algebra " + fx + "dual.json --basis " + fx + "dual_real_basis.json");
  CHECK(real.status == 1);
  CHECK(real.doc().at("span_condition").at("failed") == json::array({1}));

  CHECK(run("validate --algebra " + fx + "n4.json --basis " + fx + "n4_basis.json").status == 0);
}

TEST_CASE("cli invert, resolvent and eval") {
  auto inv = run("invert --basis " + fx + "dual_basis.json --point 0,1");
  REQUIRE(inv.status == 0);
  const json v = inv.doc().at("value");
  CHECK(c(v.at(0)) == std::complex<double>(0, -1));
  CHECK(c(v.at(1)) == std::complex<double>(1, 0));

  auto res = run("resolvent --basis " + fx + "dual_basis.json --point 2,3 --t 0,0");
  REQUIRE(res.status == 0);
  const std::complex<double> xi(2, 3);
  CHECK(std::abs(c(res.doc().at("value").at(0)) + 1.0 / xi) < 1e-15);

  for (const char* method : {"residue", "quadrature"}) {
    auto ev = run("eval --basis " + fx + "dual_basis.json --mspec " + fx + "identity.json --point 0.3,-0.2 --method " +
                  method);
    REQUIRE(ev.status == 0);
    const json e = ev.doc().at("value");
    CHECK(std::abs(c(e.at(0)) - std::complex<double>(0.3, -0.2)) < 1e-13);
    CHECK(std::abs(c(e.at(1)) - (-0.2)) < 1e-13);
  }
}

TEST_CASE("cli derive, verify-hille and mu-basis") {
  auto d = run("derive --basis " + fx + "n4_basis.json --mspec " + fx + "n4_mixed.json --point 0.1,0.2 --seed 3");
  REQUIRE(d.status == 0);
  CHECK(d.doc().at("pass") == true);
  CHECK(d.doc().at("directions").size() == 22);

  auto h = run("verify-hille --basis " + fx + "dual_basis.json --mspec " + fx + "cube.json");
  REQUIRE(h.status == 0);
  CHECK(h.doc().at("pass_rate") == 1.0);
  CHECK(h.doc().at("points").size() == 20);
  CHECK(run("verify-hille --basis " + fx + "dual_basis.json --mspec " + fx + "cube.json --points 5").doc().at("points").size() ==
        5);

  auto mu = run("mu-basis --basis " + fx + "cc_basis3.json --u 1");
  REQUIRE(mu.status == 0);
  CHECK(mu.doc().at("dimension") == 1);
  CHECK(std::abs(mu.doc().at("basis").at(0).at(2).get<double>() + std::sqrt(0.5)) < 1e-14);
}

TEST_CASE("cli output is byte-identical for identical inputs") {
  const std::string args = "verify-hille --basis " + fx + "n4_basis.json --mspec " + fx + "n4_mixed.json --seed 7";
  const auto a = run(args), b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(run(args + " --seed 8").out != a.out);
}

TEST_CASE("cli errors are machine-readable and exit nonzero") {
  auto sing = run("invert --basis " + fx + "dual_basis.json --point 0,0");
  CHECK(sing.status != 0);
  CHECK(sing.doc().at("error").at("code") == "singular");
  CHECK(sing.doc().at("error").at("index") == 1);

  auto pole = run("resolvent --basis " + fx + "dual_basis.json --point 2,3 --t 2,3");
  CHECK(pole.status != 0);
  CHECK(pole.doc().at("error").at("code") == "pole");

  auto missing = run("validate --algebra " + fx + "nope.json");
  CHECK(missing.status != 0);
  CHECK(missing.doc().at("error").at("code") == "parse");

  auto dims = run("invert --basis " + fx + "dual_basis.json --point 1,2,3");
  CHECK(dims.status != 0);
  CHECK(dims.doc().at("error").at("code") == "dimension_mismatch");

  CHECK(run("frobnicate").status != 0);
  CHECK(run("eval --basis " + fx + "dual_basis.json --mspec " + fx + "identity.json --point 0,0 --method simpson").status !=
        0);
}
