#include "gelfand/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "gelfand/cut.hpp"
#include "gelfand/errors.hpp"
#include "gelfand/parallel.hpp"

namespace gelfand::verify {

using cosets::Analysis;
using cosets::CosetEngine;
using cosets::CosetRecord;
using cosets::OmegaIndex;
using matrix::Mat;
using shalika::DeltaPContext;
using shalika::Flavor;
using shalika::ShalikaContext;

namespace {

constexpr const char* kHolds = "holds";
constexpr const char* kCounterexample = "counterexample";
constexpr const char* kSkipped = "skipped";

json skipped(const std::string& reason) { return {{"verdict", kSkipped}, {"reason", reason}}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const Field& F, const Mat& x) { return matrix::format(F, x); }

json pair_json(const Field& F, const std::optional<cosets::Pair>& p) {
  if (!p) return nullptr;
  return json::array({fmt(F, p->first), fmt(F, p->second)});
}

std::string chi_string(const Chi& c) {
  return "(" + std::to_string(c.x1) + "," + std::to_string(c.x2) + ")";
}

ShalikaContext base_context(const ShalikaEntry& e) { return ShalikaContext(e.field.make(), e.n, e.m); }

struct RepRecord {
  OmegaIndex index;
  Mat y, z, gamma;
};

std::vector<RepRecord> collect_representatives(const ShalikaContext& ctx, std::uint64_t budget) {
  std::vector<RepRecord> reps;
  cosets::for_each_representative(
      ctx, budget, [&](const OmegaIndex& idx, const Mat& y, const Mat& z, const Mat& g) {
        reps.push_back({idx, y, z, g});
      });
  return reps;
}

std::vector<Analysis> analyze_all(const CosetEngine& engine, const std::vector<RepRecord>& reps,
                                  const std::vector<Twist>& twists, int jobs) {
  std::vector<Analysis> out(reps.size());
  parallel_for(reps.size(), jobs,
               [&](std::size_t i) { out[i] = engine.analyze(reps[i].gamma, twists, Flavor::kPsiU); });
  return out;
}

json rep_json(const Field& F, const RepRecord& r) {
  return {{"index", r.index.to_string()}, {"y", fmt(F, r.y)}, {"z", fmt(F, r.z)},
          {"rep", fmt(F, r.gamma)}};
}

// Y2 = Z2 = 0 read literally, so empty blocks count as zero.
bool unguarded_degenerate(const ShalikaContext& ctx, const RepRecord& r) {
  const auto sp = cosets::block_split(ctx.n(), ctx.m(), r.index);
  const auto yb = matrix::partition(r.y, sp.y_rows, sp.y_cols);
  const auto zb = matrix::partition(r.z, sp.z_rows, sp.z_cols);
  return matrix::is_zero(yb[1]) && matrix::is_zero(zb[1]);
}

}  // namespace

Field FieldParams::make() const { return Field::parse(std::to_string(q), modulus); }

Campaign default_campaign() {
  Campaign c;
  for (int q : {2, 3}) {
    for (int n = 0; n <= 2; ++n)
      for (int m = std::max(n, 1); n + m <= 4; ++m) c.shalika.push_back({{q, {}}, n, m, {}, {}});
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}})
      c.deltap.push_back({{q, {}}, n, m, {}});
  }
  return c;
}

std::vector<Twist> entry_twists(const ShalikaEntry& e) {
  return e.twists.empty() ? base_context(e).effective_twists() : e.twists;
}

std::vector<Chi> entry_chis(const DeltaPEntry& e) {
  if (!e.chis.empty()) return e.chis;
  const int q = e.field.q;
  std::vector<Chi> out;
  for (int x1 = 0; x1 < (e.n > 0 ? q - 1 : 1); ++x1)
    for (int x2 = 0; x2 < (e.m > 0 ? q - 1 : 1); ++x2) out.push_back({x1, x2});
  return out;
}

json config_json(const ShalikaEntry& e) {
  const Field F = e.field.make();
  json j = {{"q", F.q()}};
  if (!F.is_prime_field()) j["modulus"] = F.modulus();
  j["n"] = e.n;
  j["m"] = e.m;
  if (e.requested) j["requested"] = {e.requested->first, e.requested->second};
  return j;
}

json config_json(const DeltaPEntry& e) {
  const Field F = e.field.make();
  json j = {{"q", F.q()}};
  if (!F.is_prime_field()) j["modulus"] = F.modulus();
  j["n"] = e.n;
  j["m"] = e.m;
  return j;
}

// ------------------------------------------------------------- geometric

json run_geometric(const ShalikaEntry& e, const Campaign& c) {
  const ShalikaContext ctx = base_context(e);
  const Field& F = ctx.field();
  const auto twists = entry_twists(e);
  std::vector<RepRecord> reps;
  std::vector<Analysis> results;
  bool streamed = false;
  try {
    reps = collect_representatives(ctx, c.budgets.max_subgroup_order);
    const CosetEngine engine(ctx, c.budgets.max_subgroup_order);
    streamed = !engine.materialized();
    results = analyze_all(engine, reps, twists, c.jobs);
  } catch (const BudgetExceeded& ex) {
    return skipped(ex.what());
  }

  struct TwistTally {
    std::uint64_t admissible = 0, witnessed = 0, counterexamples = 0, condition_failures = 0;
  };
  std::vector<TwistTally> tally(twists.size());
  std::uint64_t checked = 0, failures = 0, degenerate = 0, degenerate_failures = 0;
  std::uint64_t unguarded = 0, unguarded_nonzero = 0;
  json first_counterexample = nullptr, first_condition_failure = nullptr;
  std::map<OmegaIndex, std::vector<std::uint64_t>> table_reps;
  std::map<OmegaIndex, std::vector<TwistTally>> table;

  for (std::size_t i = 0; i < reps.size(); ++i) {
    const RepRecord& r = reps[i];
    auto& row = table[r.index];
    if (row.empty()) row.resize(twists.size());
    table_reps[r.index].push_back(i);
    for (std::size_t t = 0; t < twists.size(); ++t) {
      const auto& o = results[i].outcomes[t];
      if (!o.admissible) continue;
      ++tally[t].admissible;
      ++row[t].admissible;
      if (o.witness) {
        ++tally[t].witnessed;
        ++row[t].witnessed;
      } else {
        ++tally[t].counterexamples;
        if (first_counterexample.is_null()) {
          first_counterexample = rep_json(F, r);
          first_counterexample["twist"] = to_string(twists[t]);
        }
      }
      const CosetRecord rec{r.index, r.y, r.z, r.gamma, true, o.violation, o.witness};
      const auto cond = cosets::necessary_conditions(ctx, rec);
      ++checked;
      if (cond.degenerate_case) {
        ++degenerate;
        if (!cond.degenerate_offsets) ++degenerate_failures;
      }
      if (unguarded_degenerate(ctx, r)) {
        ++unguarded;
        if (r.index.s != 0 || r.index.t + r.index.k1 - r.index.k2 != 0) ++unguarded_nonzero;
      }
      if (!cond.all()) {
        ++failures;
        ++tally[t].condition_failures;
        if (first_condition_failure.is_null()) {
          first_condition_failure = rep_json(F, r);
          first_condition_failure["twist"] = to_string(twists[t]);
          first_condition_failure["failed"] = json::array();
          auto& f = first_condition_failure["failed"];
          if (!cond.vanishing_rows) f.push_back("vanishing_rows");
          if (!cond.vanishing_columns) f.push_back("vanishing_columns");
          if (!cond.vanishing_corners) f.push_back("vanishing_corners");
          if (!cond.matching_cross_blocks) f.push_back("matching_cross_blocks");
          if (!cond.degenerate_offsets) f.push_back("degenerate_offsets");
        }
      }
    }
  }

  std::uint64_t counterexamples = 0;
  json per_twist = json::array();
  for (std::size_t t = 0; t < twists.size(); ++t) {
    counterexamples += tally[t].counterexamples;
    per_twist.push_back({{"twist", to_string(twists[t])},
                         {"admissible", tally[t].admissible},
                         {"witnessed", tally[t].witnessed},
                         {"counterexamples", tally[t].counterexamples},
                         {"verdict", tally[t].counterexamples ? kCounterexample : kHolds}});
  }
  json out = {{"verdict", counterexamples ? kCounterexample : kHolds},
              {"omega", cosets::omega_enumerate(ctx.n(), ctx.m()).size()},
              {"representatives", reps.size()},
              {"subgroup_order", ctx.h_order()},
              {"streamed", streamed},
              {"per_twist", per_twist}};
  if (!first_counterexample.is_null()) out["first_counterexample"] = first_counterexample;

  json conditions = {{"verdict", failures ? kCounterexample : kHolds},
                     {"checked", checked},
                     {"failures", failures},
                     {"degenerate_cases", degenerate},
                     {"degenerate_offset_failures", degenerate_failures},
                     {"unguarded_degenerate_cases", unguarded},
                     {"unguarded_nonzero_offsets", unguarded_nonzero}};
  if (!first_condition_failure.is_null()) conditions["first_failure"] = first_condition_failure;
  out["conditions"] = conditions;

  json rows = json::array();
  for (const auto& [idx, row] : table) {
    json adm = json::array(), wit = json::array();
    for (const auto& t : row) {
      adm.push_back(t.admissible);
      wit.push_back(t.witnessed);
    }
    rows.push_back({{"index", idx.to_string()},
                    {"representatives", table_reps[idx].size()},
                    {"admissible", adm},
                    {"witnessed", wit}});
  }
  out["coset_table"] = rows;
  return out;
}

json enumerate_cosets(const ShalikaEntry& e, const Campaign& c) {
  const ShalikaContext ctx = base_context(e);
  const Field& F = ctx.field();
  const auto twists = entry_twists(e);
  std::vector<RepRecord> reps;
  std::vector<Analysis> results;
  try {
    reps = collect_representatives(ctx, c.budgets.max_subgroup_order);
    const CosetEngine engine(ctx, c.budgets.max_subgroup_order);
    results = analyze_all(engine, reps, twists, c.jobs);
  } catch (const BudgetExceeded& ex) {
    return skipped(ex.what());
  }
  json records = json::array();
  std::uint64_t counterexamples = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    json rec = rep_json(F, reps[i]);
    json outcomes = json::array();
    for (std::size_t t = 0; t < twists.size(); ++t) {
      const auto& o = results[i].outcomes[t];
      if (o.admissible && !o.witness) ++counterexamples;
      outcomes.push_back({{"twist", to_string(twists[t])},
                          {"admissible", o.admissible},
                          {"witness", pair_json(F, o.witness)},
                          {"violation", pair_json(F, o.violation)}});
    }
    rec["outcomes"] = outcomes;
    records.push_back(rec);
  }
  return {{"verdict", counterexamples ? kCounterexample : kHolds},
          {"representatives", reps.size()},
          {"records", records}};
}

// ---------------------------------------------------------- completeness

json run_completeness(const ShalikaEntry& e, const Campaign& c) {
  const ShalikaContext ctx = base_context(e);
  cosets::CompletenessReport r;
  try {
    r = cosets::completeness_check(ctx, c.budgets.max_group_order);
  } catch (const BudgetExceeded& ex) {
    return skipped(ex.what());
  }
  json per_index = json::array();
  for (const auto& p : r.per_index)
    per_index.push_back({{"index", p.index.to_string()},
                         {"representatives", p.representatives},
                         {"distinct_cosets", p.distinct_cosets}});
  return {{"verdict", r.partition_ok() ? kHolds : kCounterexample},
          {"group_order", r.group_order},
          {"representatives", r.representatives},
          {"distinct_cosets", r.distinct_cosets},
          {"covered", r.covered},
          {"missing_cosets", r.missing_cosets},
          {"coset_sizes", r.coset_sizes},
          {"per_index", per_index}};
}

// ----------------------------------------------------------------- hecke

namespace {

json hecke_json(const hecke::HeckeReport& r) {
  json j = {{"dimension", r.dimension},
            {"stabilizer_compatible", r.stabilizer_compatible},
            {"compatibility_crosscheck", r.compatibility_crosscheck},
            {"commutative", r.commutative}};
  if (r.noncommuting) {
    const auto [i, k] = *r.noncommuting;
    j["noncommuting"] = {{"pair", {i, k}}, {"representatives", {r.basis[i], r.basis[k]}}};
  } else {
    j["noncommuting"] = nullptr;
  }
  j["associative"] = r.associative;
  j["associativity_triples"] = r.associativity_triples;
  j["representative_independent"] = r.representative_independent;
  return j;
}

hecke::HeckeOptions hecke_options(const Campaign& c) {
  hecke::HeckeOptions o;
  o.max_group_order = c.budgets.max_hecke_order;
  o.seed = c.seed;
  o.jobs = c.jobs;
  return o;
}

}  // namespace

json run_hecke(const ShalikaEntry& e, const Campaign& c, const json* geometric) {
  const ShalikaContext ctx = base_context(e);
  const auto twists = entry_twists(e);
  const hecke::ShalikaModel base(ctx);
  std::optional<hecke::HeckeGeometry<hecke::ShalikaModel>> geo;
  try {
    geo.emplace(base, c.budgets.max_hecke_order);
  } catch (const BudgetExceeded& ex) {
    return skipped(ex.what());
  }
  const bool have_gk = geometric && geometric->value("verdict", "") != kSkipped;
  const auto opts = hecke_options(c);
  bool all_ok = true;
  json per_twist = json::array();
  for (std::size_t t = 0; t < twists.size(); ++t) {
    const hecke::ShalikaModel model(ctx.with_twist(twists[t]));
    const auto r = hecke::hecke_check(*geo, model, opts);
    json j = {{"twist", to_string(twists[t])}};
    j.update(hecke_json(r));
    const bool ok = r.ok() && r.dimension == r.stabilizer_compatible;
    all_ok = all_ok && ok;
    if (have_gk) {
      const bool gk = (*geometric)["per_twist"][t]["verdict"] == kHolds;
      j["agreement"] = gk == r.commutative ? "agree" : "disagree";
    } else {
      j["agreement"] = "n/a";
    }
    j["verdict"] = ok ? kHolds : kCounterexample;
    per_twist.push_back(j);
  }
  return {{"verdict", all_ok ? kHolds : kCounterexample},
          {"conductor", hecke::conductor(ctx.field())},
          {"group_order", geo->group_order()},
          {"subgroup_order", geo->subgroup_order()},
          {"double_cosets", geo->coset_count()},
          {"per_twist", per_twist}};
}

json run_hecke(const DeltaPEntry& e, const Campaign& c) {
  const DeltaPContext base_ctx(e.field.make(), e.n, e.m);
  const hecke::DeltaPModel base(base_ctx);
  std::optional<hecke::HeckeGeometry<hecke::DeltaPModel>> geo;
  try {
    geo.emplace(base, c.budgets.max_hecke_order);
  } catch (const BudgetExceeded& ex) {
    return skipped(ex.what());
  }
  const auto opts = hecke_options(c);
  bool all_ok = true;
  json per_chi = json::array();
  for (const Chi& chi : entry_chis(e)) {
    const hecke::DeltaPModel model(DeltaPContext(base_ctx.field(), e.n, e.m, chi));
    const auto r = hecke::hecke_check(*geo, model, opts);
    json j = {{"chi", chi_string(chi)}};
    j.update(hecke_json(r));
    const bool ok = r.ok() && r.dimension == r.stabilizer_compatible;
    all_ok = all_ok && ok;
    // No geometric pipeline exists for Delta P.
    j["agreement"] = "n/a";
    j["verdict"] = ok ? kHolds : kCounterexample;
    per_chi.push_back(j);
  }
  json out = {{"verdict", all_ok ? kHolds : kCounterexample},
              {"conductor", hecke::conductor(base_ctx.field())},
              {"group_order", geo->group_order()},
              {"subgroup_order", geo->subgroup_order()},
              {"double_cosets", geo->coset_count()}};
  try {
    out["det_family_exhaustive"] =
        shalika::deltap_det_family_exhaustive(base_ctx, c.budgets.max_hecke_order);
  } catch (const BudgetExceeded&) {
    out["det_family_exhaustive"] = nullptr;
  }
  out["per_chi"] = per_chi;
  return out;
}

// ------------------------------------------------------------ structural

json run_structural(const Campaign& c) {
  struct Shape {
    int q, n, m;
  };
  const std::vector<Shape> shapes = {{2, 1, 1}, {2, 1, 2}, {2, 1, 3}, {2, 2, 2}, {3, 1, 1}, {3, 1, 2}};
  const std::uint64_t budget = c.budgets.max_subgroup_order;
  bool ok = true;
  json checks = json::array();
  auto tally_json = [&](const char* name, const Shape& s, const cut::Tally& t) {
    json j = {{"name", name}, {"q", s.q}, {"n", s.n}, {"m", s.m},
              {"checked", t.checked}, {"failures", t.failures}};
    if (!t.ok()) j["first_failure"] = t.first_failure;
    ok = ok && t.ok();
    return j;
  };
  for (const Shape& s : shapes) {
    const Field F = Field::parse(std::to_string(s.q));
    try {
      checks.push_back(tally_json("weld_inheritance", s, cut::weld_inheritance_check(F, s.n, s.m, budget)));
      checks.push_back(tally_json("cut_equivalence", s, cut::cut_equivalence_check(F, s.n, s.m, budget)));
      const auto survey = cut::reduced_form_check(F, s.n, s.m, budget);
      json j = tally_json("reduced_form", s, survey.tally);
      j["same_shape"] = survey.same_shape;
      j["other_shape"] = survey.other_shape;
      checks.push_back(j);
    } catch (const BudgetExceeded& ex) {
      checks.push_back({{"name", "all"}, {"q", s.q}, {"n", s.n}, {"m", s.m},
                        {"verdict", kSkipped}, {"reason", ex.what()}});
    }
  }
  return {{"verdict", ok ? kHolds : kCounterexample}, {"checks", checks}};
}

// -------------------------------------------------------------- campaign

json run_campaign(const Campaign& c) {
  const auto t_all = std::chrono::steady_clock::now();
  json report = {{"tool", kToolName}, {"version", kToolVersion}};
  json checks = json::array();
  if (c.checks.geometric) checks.push_back("geometric");
  if (c.checks.completeness) checks.push_back("completeness");
  if (c.checks.hecke) checks.push_back("hecke");
  if (c.checks.properties) checks.push_back("properties");
  if (c.checks.structural) checks.push_back("structural");
  report["campaign"] = {{"seed", c.seed},
                        {"property_instances", c.property_instances},
                        {"budgets",
                         {{"max_group_order", c.budgets.max_group_order},
                          {"max_subgroup_order", c.budgets.max_subgroup_order},
                          {"max_hecke_order", c.budgets.max_hecke_order}}},
                        {"checks", checks}};

  json shalika = json::array();
  for (const ShalikaEntry& e : c.shalika) {
    json entry = {{"config", config_json(e)}};
    json twists = json::array();
    for (const Twist& t : entry_twists(e)) twists.push_back(to_string(t));
    entry["twists"] = twists;
    json timing = json::object();
    if (c.checks.geometric) {
      const auto t0 = std::chrono::steady_clock::now();
      entry["geometric"] = run_geometric(e, c);
      timing["geometric_seconds"] = seconds_since(t0);
    }
    if (c.checks.completeness) {
      const auto t0 = std::chrono::steady_clock::now();
      entry["completeness"] = run_completeness(e, c);
      timing["completeness_seconds"] = seconds_since(t0);
    }
    if (c.checks.hecke) {
      const auto t0 = std::chrono::steady_clock::now();
      entry["hecke"] = run_hecke(e, c, entry.contains("geometric") ? &entry["geometric"] : nullptr);
      timing["hecke_seconds"] = seconds_since(t0);
    }
    entry["timing"] = timing;
    shalika.push_back(entry);
  }
  report["shalika"] = shalika;

  json deltap = json::array();
  if (c.checks.hecke)
    for (const DeltaPEntry& e : c.deltap) {
      json entry = {{"config", config_json(e)}};
      json chis = json::array();
      for (const Chi& x : entry_chis(e)) chis.push_back(chi_string(x));
      entry["chis"] = chis;
      const auto t0 = std::chrono::steady_clock::now();
      entry["hecke"] = run_hecke(e, c);
      entry["timing"] = {{"hecke_seconds", seconds_since(t0)}};
      deltap.push_back(entry);
    }
  report["deltap"] = deltap;

  if (c.checks.properties) {
    const auto t0 = std::chrono::steady_clock::now();
    report["properties"] = run_properties(c);
    report["properties"]["timing"] = {{"seconds", seconds_since(t0)}};
  }
  if (c.checks.structural) {
    const auto t0 = std::chrono::steady_clock::now();
    report["structural"] = run_structural(c);
    report["structural"]["timing"] = {{"seconds", seconds_since(t0)}};
  }

  // Summary: counts per section kind.
  std::map<std::string, std::map<std::string, std::uint64_t>> counts;
  auto count = [&](const std::string& kind, const json& section) {
    counts[kind][section.value("verdict", kSkipped)]++;
  };
  for (const auto& entry : report["shalika"]) {
    if (entry.contains("geometric")) {
      count("geometric", entry["geometric"]);
      if (entry["geometric"].contains("conditions")) count("conditions", entry["geometric"]["conditions"]);
    }
    if (entry.contains("completeness")) count("completeness", entry["completeness"]);
    if (entry.contains("hecke")) count("hecke_shalika", entry["hecke"]);
  }
  for (const auto& entry : report["deltap"]) count("hecke_deltap", entry["hecke"]);
  if (report.contains("properties")) count("properties", report["properties"]);
  if (report.contains("structural")) count("structural", report["structural"]);

  json summary = json::object();
  bool any_counterexample = false;
  for (const auto& [kind, by_verdict] : counts) {
    json j = json::object();
    for (const char* v : {kHolds, kCounterexample, kSkipped}) {
      const auto it = by_verdict.find(v);
      j[v] = it == by_verdict.end() ? 0 : it->second;
    }
    any_counterexample = any_counterexample || j[kCounterexample].get<std::uint64_t>() > 0;
    summary[kind] = j;
  }
  summary["verdict"] = any_counterexample ? kCounterexample : kHolds;
  report["summary"] = summary;
  report["timing"] = {{"total_seconds", seconds_since(t_all)}};
  return report;
}

json strip_timing(json report) {
  if (report.is_object()) {
    report.erase("timing");
    for (auto& [k, v] : report.items()) v = strip_timing(v);
  } else if (report.is_array()) {
    for (auto& v : report) v = strip_timing(v);
  }
  return report;
}

// -------------------------------------------------------------- output

namespace {

std::string config_label(const json& cfg) {
  std::ostringstream os;
  os << "q=" << cfg["q"].get<int>() << " n=" << cfg["n"].get<int>() << " m=" << cfg["m"].get<int>();
  return os.str();
}

std::string section_line(const std::string& label, const std::string& name, const json& s) {
  std::string line = label + " " + name + "=" + s.value("verdict", kSkipped);
  if (s.value("verdict", "") == kSkipped) line += " (" + s.value("reason", "") + ")";
  return line + "\n";
}

}  // namespace

std::string to_text(const json& report) {
  std::string out = report.value("tool", kToolName) + " " + report.value("version", "") + "\n";
  if (report.contains("shalika"))
    for (const auto& e : report["shalika"]) {
      const std::string label = "shalika " + config_label(e["config"]);
      for (const char* k : {"geometric", "completeness", "hecke"})
        if (e.contains(k)) out += section_line(label, k, e[k]);
      if (e.contains("geometric") && e["geometric"].contains("conditions"))
        out += section_line(label, "conditions", e["geometric"]["conditions"]);
    }
  if (report.contains("deltap"))
    for (const auto& e : report["deltap"])
      out += section_line("deltap " + config_label(e["config"]), "hecke", e["hecke"]);
  if (report.contains("properties")) {
    for (const auto& s : report["properties"]["suites"])
      out += "property " + s["name"].get<std::string>() + " instances=" +
             std::to_string(s["instances"].get<std::uint64_t>()) +
             " failures=" + std::to_string(s["failures"].get<std::uint64_t>()) + "\n";
  }
  if (report.contains("structural")) out += section_line("structural", "all", report["structural"]);
  if (report.contains("records")) out += section_line("cosets", "records", report["records"]);
  if (report.contains("summary")) out += "verdict=" + report["summary"].value("verdict", "") + "\n";
  return out;
}

int exit_code(const json& report, bool strict) {
  bool counterexample = false, skip = false;
  std::function<void(const json&)> walk = [&](const json& j) {
    if (j.is_object()) {
      if (j.contains("verdict") && j["verdict"].is_string()) {
        counterexample = counterexample || j["verdict"] == kCounterexample;
        skip = skip || j["verdict"] == kSkipped;
      }
      for (const auto& [k, v] : j.items())
        if (k != "summary") walk(v);
    } else if (j.is_array()) {
      for (const auto& v : j) walk(v);
    }
  };
  walk(report);
  if (counterexample) return 1;
  if (strict && skip) return 2;
  return 0;
}

}  // namespace gelfand::verify
