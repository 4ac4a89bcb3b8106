// sf5: command-line front end over the library modules.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sf5/cli.hpp"

namespace {

using sf5::json;
using namespace sf5::cli;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<sf5::i64> restarts, max_iters, order_cap;
  std::optional<std::string> format, output, config;
};

RunConfig resolve(const Globals& g) {
  RunConfig c;
  if (g.config) c.apply_file(*g.config);
  if (g.seed) c.seed = *g.seed;
  if (g.restarts) c.restarts = *g.restarts;
  if (g.max_iters) c.max_iters = *g.max_iters;
  if (g.order_cap) c.order_cap = *g.order_cap;
  if (g.format) c.output_format = *g.format;
  if (g.output) c.output_path = *g.output;
  c.validate();
  return c;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << text;
}

int emit(const Report& r) {
  std::cout << render(r, r.config.output_format);
  const std::string doc = to_json(r).dump(2) + "\n";
  if (r.config.output_path) {
    write_file(*r.config.output_path, doc);
  } else if (const char* dir = std::getenv("SF5_OUTPUT_DIR"); dir && *dir) {
    write_file(std::filesystem::path(dir) / (r.command + ".json"), doc);
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical 5-space-form toolkit: groups, lens extents, torus actions, representations"};
  app.require_subcommand(1);

  Globals g;
  auto add_globals = [&](CLI::App* sub) {
    sub->add_option("--seed", g.seed, "RNG seed (positive)");
    sub->add_option("--restarts", g.restarts, "optimizer / sampler restarts");
    sub->add_option("--max-iters", g.max_iters, "iterations per restart");
    sub->add_option("--order-cap", g.order_cap, "harness order cap");
    sub->add_option("--format", g.format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--output", g.output, "write the JSON report here");
    sub->add_option("--config", g.config, "key=value config file")->check(CLI::ExistingFile);
  };

  std::string command;
  json args = json::object();
  std::string replay_path;

  sf5::i64 m = 0, n = 0, r = 0, c = 0, k = 0, l = 0, q = 5, from = 61, to = 10'000, max_order = 0;
  std::string weights, rho_a, rho_b;
  double a1_margin = 1e-6;

  auto groups = app.add_subcommand("groups", "metacyclic presentations");
  groups->require_subcommand(1);
  auto g_check = groups->add_subcommand("check", "predicates for one presentation");
  g_check->add_option("m", m)->required();
  g_check->add_option("n", n)->required();
  g_check->add_option("r", r)->required();
  g_check->callback([&] {
    command = "groups.check";
    args = {{"m", m}, {"n", n}, {"r", r}};
  });
  auto g_enum = groups->add_subcommand("enumerate", "spherical presentations up to an order");
  g_enum->add_option("--max-order", max_order)->required();
  g_enum->callback([&] {
    command = "groups.enumerate";
    args = {{"max_order", max_order}};
  });
  auto g_harness = groups->add_subcommand("harness", "search for counterexamples to the sphericity criterion");
  g_harness->add_option("--max-order", max_order)->required();
  g_harness->callback([&] {
    command = "groups.harness";
    args = {{"max_order", max_order}};
  });

  auto extent = app.add_subcommand("extent", "lens space extents");
  extent->require_subcommand(1);
  auto e_bound = extent->add_subcommand("bound", "closed-form upper bound");
  e_bound->add_option("--n", n)->required();
  e_bound->add_option("--q", q);
  e_bound->callback([&] {
    command = "extent.bound";
    args = {{"n", n}, {"q", q}};
  });
  auto e_opt = extent->add_subcommand("optimize", "numerical lower bound");
  e_opt->add_option("--n", n)->required();
  e_opt->add_option("--k", k)->required();
  e_opt->add_option("--l", l)->required();
  e_opt->add_option("--q", q);
  e_opt->callback([&] {
    command = "extent.optimize";
    args = {{"n", n}, {"k", k}, {"l", l}, {"q", q}};
  });
  auto e_scan = extent->add_subcommand("scan", "bound over a range of n");
  e_scan->add_option("--q", q);
  e_scan->add_option("--from", from);
  e_scan->add_option("--to", to);
  e_scan->callback([&] {
    command = "extent.scan";
    args = {{"q", q}, {"from", from}, {"to", to}};
  });

  auto torus = app.add_subcommand("torus", "linear torus actions on S^5");
  torus->require_subcommand(1);
  auto t_an = torus->add_subcommand("analyze", "orbit strata and isotropy");
  t_an->add_option("--weights", weights, "rows separated by ';', e.g. 1,1,-2;1,-2,1")->required();
  t_an->callback([&] {
    command = "torus.analyze";
    args = {{"weights", weights}};
  });

  auto rep = app.add_subcommand("rep", "block-rotation representations");
  rep->require_subcommand(1);
  auto r_verify = rep->add_subcommand("verify", "relations, freeness, injectivity radii");
  auto r_inv = rep->add_subcommand("invariance", "torus invariance under the group");
  for (auto* sub : {r_verify, r_inv}) {
    sub->add_option("--m", m)->required();
    sub->add_option("--n", n)->required();
    sub->add_option("--r", r)->required();
    sub->add_option("--c", c, "numerator of the bottom block angle c/n")->required();
  }
  r_verify->callback([&] {
    command = "rep.verify";
    args = {{"m", m}, {"n", n}, {"r", r}, {"c", c}};
  });
  r_inv->add_option("--weights", weights)->required();
  r_inv->add_option("--rho-a", rho_a, "k x k integer matrix for A")->required();
  r_inv->add_option("--rho-b", rho_b, "k x k integer matrix for B")->required();
  r_inv->callback([&] {
    command = "rep.invariance";
    args = {{"m", m}, {"n", n}, {"r", r}, {"c", c}, {"weights", weights}, {"rho_a", rho_a}, {"rho_b", rho_b}};
  });

  auto verify = app.add_subcommand("verify-all", "run acceptance criteria A1-A10");
  verify->add_option("--a1-margin", a1_margin);
  verify->callback([&] {
    command = "verify-all";
    args = {{"a1_margin", a1_margin}};
  });

  auto replay_cmd = app.add_subcommand("replay", "re-run a saved JSON report and compare payloads");
  replay_cmd->add_option("file", replay_path)->required()->check(CLI::ExistingFile);
  replay_cmd->callback([&] { command = "replay"; });

  for (auto* sub : {g_check, g_enum, g_harness, e_bound, e_opt, e_scan, t_an, r_verify, r_inv, verify, replay_cmd})
    add_globals(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kSuccess : kUsage;
  }

  try {
    if (command == "replay") {
      std::ifstream in(replay_path);
      json saved;
      try {
        saved = json::parse(in);
      } catch (const json::exception& e) {
        throw UsageError(std::string("cannot parse report: ") + e.what());
      }
      const auto result = replay(saved);
      const auto config = resolve(g);
      std::cout << render(result.replayed, config.output_format);
      std::cout << "replay: payload " << (result.identical ? "identical" : "DIFFERS") << "\n";
      return result.identical ? kSuccess : kFailure;
    }
    const auto config = resolve(g);
    const auto report = run_command(command, args, config);
    const int rc = emit(report);
    if (command == "verify-all" && !config.output_path && !std::getenv("SF5_OUTPUT_DIR")) {
      write_file("verify-all.json", to_json(report).dump(2) + "\n");
    }
    return rc;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
