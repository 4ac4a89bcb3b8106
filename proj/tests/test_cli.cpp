#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sf5/cli.hpp"

using namespace sf5;
using namespace sf5::cli;

namespace {

RunConfig fast_config() {
  RunConfig c;
  c.restarts = 3;
  c.max_iters = 600;
  return c;
}

}  // namespace

TEST_CASE("config validation and file parsing") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.output_format = "xml";
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = RunConfig{};
  c.restarts = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = RunConfig{};
  CHECK_THROWS_AS(c.apply("seed", "-3"), UsageError);
  CHECK_THROWS_AS(c.apply("restarts", "many"), UsageError);
  CHECK_THROWS_AS(c.apply("colour", "red"), UsageError);

  const auto path = std::filesystem::temp_directory_path() / "sf5_test_config.txt";
  {
    std::ofstream out(path);
    out << "# comment\nseed = 9\nrestarts=5  # trailing\n\nformat=csv\n";
  }
  RunConfig f;
  f.apply_file(path.string());
  CHECK(f.seed == 9);
  CHECK(f.restarts == 5);
  CHECK(f.output_format == "csv");
  {
    std::ofstream out(path);
    out << "seed 9\n";
  }
  CHECK_THROWS_AS(f.apply_file(path.string()), UsageError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(f.apply_file("/nonexistent/sf5.cfg"), UsageError);
}

TEST_CASE("config JSON round trip") {
  RunConfig c;
  c.seed = 42;
  c.restarts = 7;
  c.output_path = "/tmp/x.json";
  const auto back = config_from_json(json::parse(to_json(c).dump()));
  CHECK(back.seed == 42);
  CHECK(back.restarts == 7);
  CHECK(back.output_path == c.output_path);
  CHECK(to_json(back) == to_json(c));
}

TEST_CASE("report JSON round trip and replay") {
  const std::vector<std::pair<std::string, json>> runs{
      {"groups.check", {{"m", 7}, {"n", 9}, {"r", 2}}},
      {"extent.optimize", {{"n", 5}, {"k", 1}, {"l", 2}, {"q", 3}}},
      {"extent.bound", {{"n", 61}, {"q", 5}}},
      {"torus.analyze", {{"weights", "1,1,-2;1,-2,1"}}},
      {"rep.verify", {{"m", 7}, {"n", 9}, {"r", 2}, {"c", 3}}},
  };
  for (const auto& [cmd, args] : runs) {
    const auto r = run_command(cmd, args, fast_config());
    CHECK(r.exit_code == kSuccess);
    const auto doc = json::parse(to_json(r).dump());
    const auto back = report_from_json(doc);
    CHECK(to_json(back) == doc);
    const auto rep = replay(doc);
    INFO(cmd);
    CHECK(rep.identical);
    // a tampered payload must be detected
    auto tampered = doc;
    tampered["payload"]["tampered"] = true;
    CHECK_FALSE(replay(tampered).identical);
  }
}

TEST_CASE("usage errors and failing checks") {
  const auto c = fast_config();
  CHECK_THROWS_AS(run_command("groups.check", {{"m", 7}, {"n", 3}, {"r", 3}}, c), UsageError);
  CHECK_THROWS_AS(run_command("groups.check", {{"m", 7}}, c), UsageError);
  CHECK_THROWS_AS(run_command("nope", json::object(), c), UsageError);
  CHECK_THROWS_AS(run_command("extent.optimize", {{"n", 6}, {"k", 2}, {"l", 1}, {"q", 3}}, c), UsageError);
  CHECK_THROWS_AS(run_command("torus.analyze", {{"weights", "1,2"}}, c), UsageError);

  const auto bad_rel = run_command("rep.verify", {{"m", 7}, {"n", 9}, {"r", 2}, {"c", 1}}, c);
  CHECK(bad_rel.exit_code == kFailure);
  CHECK(bad_rel.payload["relations_verified"] == false);

  const auto degenerate = run_command("torus.analyze", {{"weights", "1,1,1;2,2,2"}}, c);
  CHECK(degenerate.exit_code == kFailure);
  CHECK(degenerate.payload["effective"] == false);

  const auto scan = run_command("extent.scan", {{"q", 5}, {"from", 55}, {"to", 65}}, c);
  CHECK(scan.exit_code == kSuccess);
  CHECK(scan.payload["rows"].size() == 11);
}

TEST_CASE("rendering") {
  const auto scan = run_command("extent.scan", {{"q", 5}, {"from", 60}, {"to", 62}}, fast_config());
  const auto csv = render(scan, "csv");
  CHECK(csv.rfind("n,bound,verdict,margin\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("61,") != std::string::npos);
  const auto doc = json::parse(render(scan, "json"));
  CHECK(doc["command"] == "extent.scan");
  const auto table = render(run_command("groups.check", {{"m", 7}, {"n", 9}, {"r", 2}}, fast_config()), "table");
  CHECK(table.find("spherical.verdict") != std::string::npos);
  CHECK(table.find("result: ok") != std::string::npos);
}
