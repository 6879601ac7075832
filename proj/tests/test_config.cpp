#include "radhf/config.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace radhf;
using nlohmann::json;

namespace {

std::string field_of(const json &doc) {
  try {
    parse_run_config(doc);
  } catch (const ConfigError &e) {
    return e.field;
  }
  return "<accepted>";
}

json helium_doc() {
  return json::parse(R"({"model": "rhf", "Z": 2, "shells": [{"l": 0}],
                         "grid": {"n": 300, "r_max": 20}})");
}

} // namespace

TEST_CASE("config errors name the offending field") {
  auto d = helium_doc();
  CHECK(field_of(d) == "<accepted>");

  d = helium_doc();
  d["shells"][0]["l"] = -1;
  CHECK(field_of(d) == "shells[0].l");

  d = helium_doc();
  d["shells"].push_back({{"l", "p"}});
  CHECK(field_of(d) == "shells[1].l");

  d = helium_doc();
  d["grid"]["points"] = 10;
  CHECK(field_of(d) == "grid.points");

  d = helium_doc();
  d["Z"] = 0;
  CHECK(field_of(d) == "Z");

  d = helium_doc();
  d["model"] = "dft";
  CHECK(field_of(d) == "model");

  d = helium_doc();
  d["shells"] = json::array();
  CHECK(field_of(d) == "shells");

  d = helium_doc();
  d["grid"]["n"] = 4;
  CHECK(field_of(d) == "grid.n");

  d = helium_doc();
  d["scf"] = {{"damping", 1.5}};
  CHECK(field_of(d) == "scf.damping");

  d = helium_doc();
  d["shells"][0]["spin"] = "up";
  CHECK(field_of(d) == "shells[0].spin");

  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("defaults are filled in") {
  const auto run = parse_run_config(json::parse(R"({"Z": 2, "shells": [{"l": 0}]})"));
  CHECK(run.config.model == Model::rhf);
  CHECK(run.grid.kind == GridKind::uniform);
  CHECK(run.grid.n == 2000);
  CHECK_FALSE(run.grid.r_max.has_value());
  CHECK(run.scf.tol_energy == 1e-9);
  CHECK(run.scf.tol_residual == 1e-6);
  CHECK_FALSE(run.output.result.has_value());
  const auto echo = to_json(run);
  CHECK(echo["grid"]["r_max"] == 40.0);
  CHECK(parse_run_config(echo).grid.r_max == 40.0);

  const auto u = parse_run_config(json::parse(
      R"({"model": "uhf", "Z": 3, "shells": [{"l": 0, "spin": "alpha"}, {"l": 1, "spin": "beta"}]})"));
  CHECK(u.config.shells[1].spin == Spin::beta);
}

TEST_CASE("result document is deterministic and round trips") {
  const auto run = parse_run_config(helium_doc());
  const auto a = solve(run.config, run.grid, run.scf);
  const auto b = solve(run.config, run.grid, run.scf);
  REQUIRE(a.converged);
  const auto da = result_document(run, a, theorem_report(a));
  const auto db = result_document(run, b, theorem_report(b));
  CHECK(da.dump() == db.dump());
  for (const char *key : {"input", "units", "energy", "shells", "theorem_report", "convergence",
                          "provenance", "orbitals"})
    CHECK(da.contains(key));

  const auto back = state_from_result(json::parse(da.dump()));
  CHECK(back.energy.total == Catch::Approx(a.energy.total).epsilon(1e-14));
  CHECK(back.shells[0].orbital[100] == a.shells[0].orbital[100]);

  auto stripped = da;
  stripped.erase("orbitals");
  CHECK_THROWS_AS(state_from_result(stripped), Error);
}

TEST_CASE("orbital CSV layout") {
  const auto run = parse_run_config(json::parse(
      R"({"Z": 10, "shells": [{"l": 0}, {"l": 0}, {"l": 1}], "grid": {"n": 200, "r_max": 20},
          "scf": {"max_iter": 1}})"));
  const auto s = solve(run.config, run.grid, run.scf);
  std::ostringstream out;
  write_orbitals_csv(out, s);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "r,f_1,f_2,f_3,density");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (rows == 50) {
      std::vector<double> v;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ','))
        v.push_back(std::stod(cell));
      REQUIRE(v.size() == 5);
      CHECK(v[0] == s.grid()->r(49));
      CHECK(v[4] == Catch::Approx(2 * (v[1] * v[1] + v[2] * v[2] + 3 * v[3] * v[3])).epsilon(1e-14));
    }
  }
  CHECK(rows == 200);
}
