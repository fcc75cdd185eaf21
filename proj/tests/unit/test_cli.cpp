#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "cli_io.hpp"
#include "dsbd/fields.hpp"
#include "dsbd/special.hpp"
#include "test_util.hpp"

using namespace dsbd;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / "dsbd_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::vector<std::vector<std::string>> csv(const std::string& text) { return cli::read_csv(text, "out").rows; }

double num(const std::string& s) { return std::stod(s); }

}  // namespace

TEST_CASE("csv round trip") {
  std::ostringstream os;
  cli::write_csv_row(os, {"a", "b,c", "say \"hi\"", "line\nbreak"});
  auto rows = csv(os.str());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == std::vector<std::string>{"a", "b,c", "say \"hi\"", "line\nbreak"});
  CHECK_THROWS_AS(cli::read_csv("a,\"b\n", "x"), cli::InputError);
  CHECK(cli::csv_number(NAN) == "nan");
  CHECK(cli::read_csv("1,2\r\n\r\n3,4\r\n", "x").rows.size() == 2);
}

TEST_CASE("verify") {
  std::string rep = (scratch() / "geometry.json").string();
  Run r = run({"verify", "--suite", "geometry", "--out", rep});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(std::ifstream(rep));
  CHECK(j["suite"] == "geometry");
  CHECK(j["config"]["d"] == 2);
  REQUIRE(j["checks"].size() == 7);
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("defect"));
    CHECK(c.contains("tol"));
    CHECK(c["pass"] == true);
    CHECK(c.contains("flags"));
    CHECK(c.contains("seconds"));
  }
  CHECK(j["calibration"].contains("rho_ordering"));
  CHECK(j.contains("notes"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"verify", "--suite", "nonexistent"}).code == 2);
  CHECK(run({"verify", "--suite", "geometry", "--nu", "0"}).code == 2);
  CHECK(run({"verify", "--suite", "geometry", "--d", "5"}).code == 2);
  CHECK(run({"verify", "--config", write("bad.json", "{\"d\": 2,")}).code == 2);
  CHECK(run({"verify", "--config", write("keys.json", "{\"quad\": 2}")}).code == 2);
  CHECK(run({"reconstruct", "--data", "/nonexistent.json", "--points", "/nonexistent.csv"}).code == 2);
  CHECK(run({"asymptotics", "--spec", write("bad_spec.json", "[1, 2")}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("config file with flag overrides") {
  std::string cfg = write("cfg.json", "{\"d\": 2, \"nu\": 0, \"quad_order\": 32}");
  CHECK(run({"verify", "--config", cfg, "--suite", "geometry"}).code == 2);
  std::string rep = (scratch() / "over.json").string();
  CHECK(run({"verify", "--config", cfg, "--nu", "2", "--suite", "geometry", "--out", rep}).code == 0);
  auto j = nlohmann::json::parse(std::ifstream(rep));
  CHECK(j["config"]["nu"] == 2.0);
  CHECK(j["config"]["quad_order"] == 32);
}

TEST_CASE("twopoint") {
  std::string empty = write("empty.csv", "");
  Run e = run({"twopoint", "--pairs", empty});
  CHECK(e.code == 0);
  CHECK(csv(e.out).size() == 1);

  // two pairs with the same x.y, a coincident pair and a pair off dS
  std::string pairs = write("pairs.csv",
                            "x0,x1,x2,y0,y1,y2\n"
                            "0,1,0,0,0.5403023058681398,0.8414709848078965\n"
                            "0,0,1,0,0.8414709848078965,0.5403023058681398\n"
                            "0,1,0,0,1,0\n"
                            "1,1,1,2,2,2\n");
  Run plus = run({"twopoint", "--pairs", pairs, "--sign", "+"});
  Run minus = run({"twopoint", "--pairs", pairs, "--sign", "-"});
  REQUIRE(plus.code == 0);
  auto P = csv(plus.out), M = csv(minus.out);
  REQUIRE(P.size() == 5);
  CHECK(P[0].back() == "flag");
  CHECK(P[1][9] == "ok");
  CHECK_ABS(num(P[1][7]), 0.0792755270015492, 1e-12);
  CHECK_ABS(num(P[1][7]), num(P[2][7]), 1e-5 * num(P[1][7]));
  for (int k : {1, 2}) {
    CHECK_ABS(num(P[k][7]), num(M[k][7]), 1e-12);
    CHECK_ABS(num(P[k][8]), -num(M[k][8]), 1e-12);
  }
  CHECK(P[3][9].rfind("error:", 0) == 0);
  CHECK(P[4][9].rfind("error:", 0) == 0);
  CHECK(P[3][7] == "nan");
}

TEST_CASE("asymptotics and reconstruction through files") {
  std::string spec = write("spec.json",
                           R"({"sign": "+", "exponent": "plus",
                               "profile": [{"l": 1, "axis": [1, 0], "coef": [1, 0.5]},
                                           {"l": 2, "axis": [0, 1]}]})");
  std::string data = (scratch() / "data.json").string();
  Run a = run({"asymptotics", "--spec", spec, "--quad-order", "32", "--data-out", data});
  REQUIRE(a.code == 0);
  auto rows = csv(a.out);
  REQUIRE(rows.size() > 1);
  const auto& head = rows[0];
  auto col = [&](const std::string& n) { return std::find(head.begin(), head.end(), n) - head.begin(); };
  double vmax = 0, vminus = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(num(rows[k][col("defect")]) < 1e-2);
    CHECK(rows[k][col("flag")] == "ok");
    vmax = std::max(vmax, std::hypot(num(rows[k][col("v_plus_re")]), num(rows[k][col("v_plus_im")])));
    vminus = std::max(vminus, std::hypot(num(rows[k][col("v_minus_re")]), num(rows[k][col("v_minus_im")])));
  }
  CHECK(vminus < 1e-3 * vmax);

  // the extracted data reproduces the packet
  std::string pts = write("pts.csv", "t,w1,w2\n0.3,1,0\n-0.5,0.6,0.8\n1.2,0,-1\n");
  Run r = run({"reconstruct", "--data", data, "--points", pts, "--quad-order", "32"});
  REQUIRE(r.code == 0);
  auto R = csv(r.out);
  REQUIRE(R.size() == 4);
  ModelParams p(2, 1.0);
  RulePtr rule = sphere_rule(p, 32);
  Vec e0 = Vec::Unit(2, 0), e1 = Vec::Unit(2, 1);
  BoundaryFunction psi = zonal_basis(1, make_direction(e0), rule) * cplx(1, 0.5) + zonal_basis(2, make_direction(e1), rule);
  WavePacket u(psi, Sign::PLUS, p.lam_plus(), p);
  for (std::size_t k = 1; k < R.size(); ++k) {
    Vec w(2);
    w << num(R[k][1]), num(R[k][2]);
    cplx want = u(ds_chart(num(R[k][0]), w));
    CHECK_REL(cplx(num(R[k][3]), num(R[k][4])), want, 1e-3);
  }

  // zero data gives a zero column
  nlohmann::json j = nlohmann::json::parse(std::ifstream(data));
  for (const char* key : {"v_plus", "v_minus"})
    for (auto& v : j[key]) v = {0.0, 0.0};
  std::string zero = write("zero.json", j.dump());
  Run z = run({"reconstruct", "--data", zero, "--points", pts, "--quad-order", "32"});
  for (const auto& row : csv(z.out)) {
    if (row[0] == "t") continue;
    CHECK(num(row[3]) == 0.0);
    CHECK(num(row[4]) == 0.0);
  }

  // a data file from a different rule is rejected
  j["fingerprint"] = "0000";
  CHECK(run({"reconstruct", "--data", write("fp.json", j.dump()), "--points", pts}).code == 2);
}

TEST_CASE("degraded quadrature still produces a report") {
  std::string rep = (scratch() / "coarse.json").string();
  Run r = run({"verify", "--suite", "identities", "--quad-order", "8", "--out", rep});
  CHECK((r.code == 0 || r.code == 1));
  auto j = nlohmann::json::parse(std::ifstream(rep));
  CHECK(j["checks"].size() > 0);
}
