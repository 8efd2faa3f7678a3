#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "stieltjes/cli/app.hpp"
#include "stieltjes/cli/config.hpp"

using namespace stieltjes;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(STIELTJES_TEST_DATA) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "stieltjes_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_config(const std::string& name, const json& doc) {
  const fs::path p = scratch(name);
  std::ofstream(p) << doc.dump();
  return p;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> r;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) r.push_back(std::stod(cell));
    rows.push_back(r);
  }
  return rows;
}

std::vector<double> sorted(const json& arr) {
  auto v = arr.get<std::vector<double>>();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("integrate: Heaviside and cos agree") {
  auto r = run({"integrate", data("heaviside_cos.json"), "--method", "both"});
  CHECK(r.code == 0);
  auto d = r.doc();
  CHECK(d["results"]["ls"]["value"] == 1.0);
  CHECK(d["results"]["rs"]["value"] == 1.0);
  CHECK(d["comparison"]["verdict"] == "agree");
  CHECK(d["method"] == "both");
  CHECK(d.contains("elapsed_ms"));
  CHECK(d["tolerances"]["tol"] == 1e-9);
}

TEST_CASE("integrate: geometric family with x") {
  for (const char* method : {"ls", "rs", "both"}) {
    auto r = run({"integrate", data("geometric_x.json"), "--method", method});
    CHECK(r.code == 0);
    for (const auto& [k, v] : r.doc()["results"].items()) CHECK(std::fabs(v["value"].get<double>() - 2.0) <= 1e-8);
  }
}

TEST_CASE("integrate: shared jump under rs exits 2 with a witness") {
  auto r = run({"integrate", data("sign_heaviside.json"), "--method", "rs"});
  CHECK(r.code == 2);
  auto rs = r.doc()["results"]["rs"];
  CHECK(rs["status"] == "rs_divergent");
  CHECK(rs["value"].is_null());
  CHECK(sorted(rs["witness"]["limit_set"]) == std::vector<double>{-1.0, 0.0, 1.0});
}

TEST_CASE("integrate: --out, --tol and text output") {
  const fs::path out = scratch("result.json");
  fs::remove(out);
  auto r = run({"integrate", data("mixed_unit_jump.json"), "--out", out.string(), "--tol", "1e-7"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  json d = json::parse(in);
  CHECK(std::fabs(d["results"]["ls"]["value"].get<double>() - 1.5) <= 1e-9);
  CHECK(d["tolerances"]["tol"] == 1e-7);

  auto t = run({"integrate", data("heaviside_cos.json"), "--format", "text"});
  CHECK(t.out.find("comparison: agree") != std::string::npos);
}

TEST_CASE("trace: Heaviside and cos with midpoint tags") {
  auto r = run({"trace", data("heaviside_cos_interval.json"), "--policy", "midpoint"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,cells,mesh,sum\n", 0) == 0);
  CHECK(r.out.find('\r') == std::string::npos);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 16);
  CHECK(std::fabs(rows.back()[3] - 1.0) <= 1e-9);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i][0] == static_cast<double>(i + 1));
    CHECK(rows[i][1] == std::ldexp(1.0, static_cast<int>(i + 1)));
  }
}

TEST_CASE("trace: F = x and f = x approach 1/2 as the mesh shrinks") {
  const fs::path csv = scratch("trace.csv");
  auto r = run({"trace", data("identity_x.json"), "--policy", "left", "--n-max", "12", "--csv", csv.string()});
  CHECK(r.code == 0);
  CHECK(r.doc()["command"] == "trace");
  std::ifstream in(csv);
  std::stringstream ss;
  ss << in.rdbuf();
  auto rows = csv_rows(ss.str());
  REQUIRE(rows.size() == 12);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][2] < rows[i - 1][2]);
    CHECK(std::fabs(rows[i][3] - 0.5) < std::fabs(rows[i - 1][3] - 0.5));
  }
}

TEST_CASE("trace: empty config fails without output") {
  auto r = run({"trace", data("empty.json")});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
  CHECK(run({"trace", data("heaviside_cos.json")}).code == 1);  // needs an interval
  CHECK(run({"trace", data("heaviside_cos_interval.json"), "--policy", "sideways"}).code == 1);
  CHECK(run({"trace", data("heaviside_cos_interval.json"), "--n-max", "40"}).code == 1);
}

TEST_CASE("witness: sign at the Heaviside jump") {
  auto r = run({"witness", data("sign_heaviside.json"), "--jump", "0"});
  CHECK(r.code == 0);
  auto w = r.doc()["witness"];
  CHECK(sorted(w["jump_inside_cell_limits"]) == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(sorted(w["jump_on_grid_limits"]) == std::vector<double>{-1.0, 0.0});
  CHECK(w["all_reproduced"] == true);
}

TEST_CASE("witness: half jump") {
  auto r = run({"witness", data("sign_half_jump.json"), "--jump", "0"});
  CHECK(r.code == 0);
  CHECK(sorted(r.doc()["witness"]["jump_on_grid_limits"]) == std::vector<double>{-0.5, 0.0, 0.5});
}

TEST_CASE("witness: continuous integrand has none") {
  auto r = run({"witness", data("heaviside_cos_interval.json"), "--jump", "0"});
  CHECK(r.code == 1);
  CHECK(r.err.find("no witness") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("compare renders the three comparison outcomes") {
  auto a = run({"compare", data("heaviside_cos.json")});
  CHECK(a.code == 0);
  CHECK(a.doc()["verdict"] == "agree");
  auto g = run({"compare", data("geometric_x.json")});
  CHECK(g.code == 0);
  CHECK(g.doc()["max_abs_difference"].get<double>() <= 1e-8);
  auto s = run({"compare", data("signed.json"), "--format", "text"});
  CHECK(s.code == 2);
  CHECK(s.out.find("verdict: not_comparable") != std::string::npos);
  CHECK(s.out.find("ls: error") != std::string::npos);
}

TEST_CASE("config errors name the offending field") {
  json bad = json::parse(R"({"distribution": {"jumps": [{"x": 0, "mass": 1}, {"x": 1, "mass": "heavy"}]},
                             "integrand": "x", "interval": [0, 2]})");
  auto r = run({"integrate", write_config("bad_mass.json", bad).string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("distribution.jumps[1].mass") != std::string::npos);

  json unknown = json::parse(R"({"distribution": {"jumps": []}, "integrand": "x", "interval": [0, 1], "colour": 1})");
  r = run({"integrate", write_config("unknown.json", unknown).string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("colour") != std::string::npos);

  json syntax = json::parse(R"({"distribution": {"jumps": []}, "integrand": "2*+", "interval": [0, 1]})");
  r = run({"integrate", write_config("syntax.json", syntax).string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("integrand") != std::string::npos);

  CHECK(run({"integrate", "/nonexistent/config.json"}).code == 1);
  std::ofstream(scratch("not_json.json")) << "{ nope";
  CHECK(run({"integrate", scratch("not_json.json").string()}).code == 1);
}

TEST_CASE("parse_config") {
  auto c = cli::parse_config(json::parse(R"({"distribution": {"base": 0.5}, "integrand": "1", "interval": "real-line",
                                            "options": {"policy": "at_jump", "seed": 9}})"));
  CHECK_FALSE(c.interval.has_value());
  CHECK(c.options.policy == "at_jump");
  CHECK(c.options.seed == 9);
  CHECK(c.options.n_max == 16);
  auto bad = [](const char* text) {
    try {
      cli::parse_config(json::parse(text));
    } catch (const cli::ConfigError& e) {
      return e.path();
    }
    return std::string("no error");
  };
  CHECK(bad(R"({"distribution": {}, "integrand": "1", "interval": [1, 0]})") == "interval");
  CHECK(bad(R"({"distribution": {}, "integrand": "1", "interval": [0, 1], "options": {"n_max": 0}})") ==
        "options.n_max");
  CHECK(bad(R"({"distribution": {}, "integrand": "1", "interval": [0, 1], "options": {"policy": "up"}})") ==
        "options.policy");
  CHECK(bad(R"({"distribution": {"segments": [{"from": 0, "to": 1, "expr": "x"}],
                "right_tail": {"location": "x", "mass": "1"}}, "integrand": "1", "interval": [0, 1]})") ==
        "distribution.segments");
  CHECK(bad(R"({"integrand": "1", "interval": [0, 1]})") == "distribution");
  CHECK(bad(R"({"distribution": {"jumps": [{"x": 0, "mass": 0}]}, "integrand": "1", "interval": [-1, 1]})") ==
        "distribution.jumps[0].mass");
}

TEST_CASE("normalized configs reproduce results bit for bit") {
  for (const char* name : {"heaviside_cos.json", "geometric_x.json", "mixed_unit_jump.json", "sign_half_jump.json"}) {
    const fs::path dumped = scratch(std::string("normalized_") + name);
    auto first = run({"integrate", data(name), "--dump-normalized", dumped.string()});
    auto second = run({"integrate", dumped.string()});
    CHECK(first.code == second.code);
    auto a = first.doc();
    auto b = second.doc();
    a.erase("elapsed_ms");
    b.erase("elapsed_ms");
    CHECK(a == b);
    // The dump is itself normalized.
    std::ifstream in(dumped);
    json d = json::parse(in);
    CHECK(cli::normalized(cli::parse_config(d)) == d);
  }
}

TEST_CASE("argument handling") {
  auto h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("integrate") != std::string::npos);
  CHECK(run({}).code == 1);
  CHECK(run({"integrate"}).code == 1);
  CHECK(run({"integrate", data("heaviside_cos.json"), "--method", "simpson"}).code == 1);
  CHECK(run({"witness", data("sign_heaviside.json")}).code == 1);
}
