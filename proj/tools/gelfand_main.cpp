#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gelfand/errors.hpp"
#include "gelfand/verify.hpp"

namespace {

using namespace gelfand::verify;

struct Options {
  int n = 1;
  int m = 1;
  int q = 2;
  std::vector<int> modulus;
  std::vector<int> twist;
  int additive_twist = 0;
  std::vector<int> chi;
  std::uint64_t max_group_order = Budgets{}.max_group_order;
  std::uint64_t max_subgroup_order = Budgets{}.max_subgroup_order;
  std::uint64_t max_hecke_order = Budgets{}.max_hecke_order;
  int jobs = 1;
  std::uint64_t seed = 1;
  std::uint64_t instances = 1000;
  std::string out;
  std::string format = "json";
};

void add_budget_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-group-order", o.max_group_order, "|G| cap for completeness");
  cmd->add_option("--max-subgroup-order", o.max_subgroup_order,
                  "|H| cap for stabilizer and witness passes");
  cmd->add_option("--max-hecke-order", o.max_hecke_order, "|G| cap for the Hecke algebra");
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "seed for randomized suites and representatives");
  cmd->add_option("--out", o.out, "report path (default stdout)");
  cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

void add_field_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "n")->check(CLI::NonNegativeNumber);
  cmd->add_option("--m", o.m, "m")->check(CLI::NonNegativeNumber);
  cmd->add_option("--q", o.q, "field size");
  cmd->add_option("--modulus", o.modulus, "irreducible modulus, low degree first")->delimiter(',');
}

void add_twist_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--twist", o.twist, "a1,a2 (default: every twist)")->delimiter(',')->expected(2);
  cmd->add_option("--additive-twist", o.additive_twist, "c, the psi_0 scalar code");
}

Campaign base_campaign(const Options& o) {
  Campaign c;
  c.budgets = {o.max_group_order, o.max_subgroup_order, o.max_hecke_order};
  c.seed = o.seed;
  c.jobs = o.jobs;
  c.property_instances = o.instances;
  return c;
}

ShalikaEntry shalika_entry(const Options& o) {
  ShalikaEntry e{{o.q, o.modulus}, o.n, o.m, {}, {}};
  if (e.n > e.m) {
    std::cerr << "note: H_{n,m} needs n <= m; running (" << o.m << "," << o.n << ")\n";
    e.requested = {o.n, o.m};
    std::swap(e.n, e.m);
  }
  if (!o.twist.empty() || o.additive_twist != 0)
    e.twists = {Twist{o.twist.empty() ? 0 : o.twist[0], o.twist.empty() ? 0 : o.twist[1],
                      o.additive_twist != 0 ? o.additive_twist : 1}};
  return e;
}

void emit(const json& report, const Options& o) {
  const std::string text = o.format == "text" ? to_text(report) : report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw gelfand::ConfigError("cannot write " + o.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of twisted Gelfand pairs over finite fields"};
  app.require_subcommand(1);
  Options o;

  auto* vs = app.add_subcommand("verify-shalika", "geometric, completeness and Hecke checks");
  auto* vd = app.add_subcommand("verify-deltap", "Delta P Hecke commutativity");
  auto* ec = app.add_subcommand("enumerate-cosets", "every representative with its outcomes");
  auto* hc = app.add_subcommand("hecke-check", "Shalika Hecke commutativity");
  auto* pr = app.add_subcommand("properties", "randomized and brute-force structural suites");
  auto* ca = app.add_subcommand("campaign", "the default grid with every check");
  for (auto* cmd : {vs, ec, hc}) {
    add_field_options(cmd, o);
    add_twist_options(cmd, o);
  }
  add_field_options(vd, o);
  vd->add_option("--chi", o.chi, "x1,x2 (default: every determinant character)")
      ->delimiter(',')
      ->expected(2);
  for (auto* cmd : {vs, vd, ec, hc, pr, ca}) add_budget_options(cmd, o);
  for (auto* cmd : {pr, ca}) cmd->add_option("--instances", o.instances, "instances per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Campaign c = base_campaign(o);
    json report;
    bool strict = true;
    if (*vs || *hc) {
      c.shalika = {shalika_entry(o)};
      c.checks = {true, true, true, false, false};
      if (*hc) c.checks = {false, false, true, false, false};
      report = run_campaign(c);
    } else if (*vd) {
      DeltaPEntry e{{o.q, o.modulus}, o.n, o.m, {}};
      if (!o.chi.empty()) e.chis = {Chi{o.chi[0], o.chi[1]}};
      c.deltap = {e};
      c.checks = {false, false, true, false, false};
      report = run_campaign(c);
    } else if (*ec) {
      const ShalikaEntry e = shalika_entry(o);
      report = {{"tool", kToolName}, {"version", kToolVersion}, {"config", config_json(e)},
                {"records", enumerate_cosets(e, c)}};
    } else if (*pr) {
      c.checks = {false, false, false, true, true};
      report = run_campaign(c);
    } else {
      const Campaign d = default_campaign();
      c.shalika = d.shalika;
      c.deltap = d.deltap;
      strict = false;
      report = run_campaign(c);
    }
    emit(report, o);
    return exit_code(report, strict);
  } catch (const gelfand::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
