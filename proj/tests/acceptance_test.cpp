// Runs the default campaign twice and prints one PASS/FAIL line per
// acceptance criterion. Exit status is 0 iff every criterion passes.

#include <algorithm>
#include <cstdio>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "gelfand/matrix.hpp"
#include "gelfand/verify.hpp"

using namespace gelfand::verify;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  if (!ok) ++failures;
}

std::uint64_t gl_order(const json& cfg) {
  return gelfand::matrix::gl_order(cfg["q"].get<int>(), cfg["n"].get<int>() + cfg["m"].get<int>());
}

std::string S(std::uint64_t v) { return std::to_string(v); }

}  // namespace

int main() {
  Campaign c = default_campaign();
  c.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const json r1 = run_campaign(c);
  const json r2 = run_campaign(c);

  // 1. Every psi_u-admissible representative has a psi-tau-invariance witness.
  {
    bool ok = true;
    std::uint64_t configs = 0, twist_runs = 0, admissible = 0, counterexamples = 0;
    for (const auto& e : r1["shalika"]) {
      const auto& g = e["geometric"];
      ++configs;
      if (g["verdict"] != "holds") ok = false;
      if (!g.contains("per_twist") || g["per_twist"].size() != e["twists"].size()) {
        ok = false;
        continue;
      }
      for (const auto& t : g["per_twist"]) {
        ++twist_runs;
        admissible += t["admissible"].get<std::uint64_t>();
        counterexamples += t["counterexamples"].get<std::uint64_t>();
      }
    }
    ok = ok && configs == 16 && counterexamples == 0;
    report(1, "geometric", ok,
           "configs=" + S(configs) + " twist_runs=" + S(twist_runs) + " admissible=" + S(admissible) +
               " counterexamples=" + S(counterexamples));
  }

  // 2. The representatives' double cosets partition G wherever |G| <= 10^5.
  {
    bool ok = true, cross = false;
    std::uint64_t checked = 0;
    for (const auto& e : r1["shalika"]) {
      const auto& s = e["completeness"];
      const bool in_scope = gl_order(e["config"]) <= 100000;
      if (!in_scope) {
        ok = ok && s["verdict"] == "skipped";
        continue;
      }
      ++checked;
      if (s["verdict"] != "holds" || s["missing_cosets"] != 0 || s["covered"] != s["group_order"])
        ok = false;
      if (e["config"]["q"] == 2 && e["config"]["n"] == 1 && e["config"]["m"] == 1) {
        auto sizes = s["coset_sizes"].get<std::vector<int>>();
        std::sort(sizes.begin(), sizes.end());
        cross = s["distinct_cosets"] == 2 && sizes == std::vector<int>{2, 4};
      }
    }
    ok = ok && cross && checked == 13;
    report(2, "completeness", ok,
           "configs=" + S(checked) + " gl2f2_cosets_2_4=" + (cross ? "yes" : "no"));
  }

  // 3. Shalika Hecke algebras commutative, dimension = compatible cosets.
  {
    bool ok = true;
    std::uint64_t checked = 0, noncommuting = 0;
    for (const auto& e : r1["shalika"]) {
      const auto& h = e["hecke"];
      if (gl_order(e["config"]) > 25000) continue;
      if (h["verdict"] != "holds") ok = false;
      if (!h.contains("per_twist")) continue;
      for (const auto& t : h["per_twist"]) {
        ++checked;
        if (t["commutative"] != true) ++noncommuting;
        if (t["dimension"] != t["stabilizer_compatible"] || t["compatibility_crosscheck"] != true ||
            t["associative"] != true || t["representative_independent"] != true ||
            t["agreement"] != "agree")
          ok = false;
      }
    }
    ok = ok && noncommuting == 0 && checked > 0;
    report(3, "hecke_shalika", ok, "twist_runs=" + S(checked) + " noncommuting=" + S(noncommuting));
  }

  // 4. Delta P Hecke algebras commutative for every determinant character.
  {
    bool ok = true;
    std::set<std::string> seen;
    std::uint64_t runs = 0, failed = 0;
    for (const auto& e : r1["deltap"]) {
      const int q = e["config"]["q"], n = e["config"]["n"], m = e["config"]["m"];
      if (n != 1 || (m != 1 && m != 2)) continue;
      seen.insert(S(q) + "," + S(m));
      const auto& h = e["hecke"];
      if (h["verdict"] != "holds" || h["per_chi"].size() != static_cast<std::size_t>((q - 1) * (q - 1)))
        ok = false;
      if (!h.contains("per_chi")) continue;
      for (const auto& x : h["per_chi"]) {
        ++runs;
        if (x["commutative"] != true || x["verdict"] != "holds") ++failed;
      }
    }
    ok = ok && seen.size() == 4 && failed == 0;
    report(4, "hecke_deltap", ok, "chi_runs=" + S(runs) + " failures=" + S(failed));
  }

  // 5. Seeded randomized suites, at least 1000 instances each.
  {
    const std::set<std::string> required = {
        "embed_product",  "embed_orthogonality",  "embed_transpose",
        "weld_inverse",   "weld_multiplicativity", "weld_character",
        "tau_weld_compatibility", "tau_laws",      "character_multiplicativity",
        "gk_conditions"};
    bool ok = r1["properties"]["verdict"] == "holds";
    std::set<std::string> seen;
    std::uint64_t failed = 0, min_instances = UINT64_MAX;
    for (const auto& s : r1["properties"]["suites"]) {
      seen.insert(s["name"].get<std::string>());
      failed += s["failures"].get<std::uint64_t>();
      min_instances = std::min(min_instances, s["instances"].get<std::uint64_t>());
    }
    ok = ok && seen == required && failed == 0 && min_instances >= 1000;
    report(5, "properties", ok,
           "suites=" + S(seen.size()) + " min_instances=" + S(min_instances) + " failures=" + S(failed));
  }

  // 6. Necessary conditions on every admissible record; brute-force weld
  // inheritance and cut equivalence at n + m <= 4 over F_2.
  {
    bool ok = r1["structural"]["verdict"] == "holds";
    std::uint64_t records = 0, failed = 0, weld = 0, cut = 0;
    for (const auto& e : r1["shalika"]) {
      const auto& cond = e["geometric"]["conditions"];
      if (cond["verdict"] != "holds") ok = false;
      records += cond["checked"].get<std::uint64_t>();
      failed += cond["failures"].get<std::uint64_t>();
    }
    std::set<std::string> f2_shapes;
    for (const auto& x : r1["structural"]["checks"]) {
      if (x.value("verdict", "") == "skipped") ok = false;
      if (x["q"] != 2) continue;
      f2_shapes.insert(S(x["n"].get<int>()) + "," + S(x["m"].get<int>()));
      if (x["name"] == "weld_inheritance") weld += x["checked"].get<std::uint64_t>();
      if (x["name"] == "cut_equivalence") cut += x["checked"].get<std::uint64_t>();
      if (x.value("failures", 0) != 0) ok = false;
    }
    ok = ok && failed == 0 && records > 0 && weld > 0 && cut > 0 && f2_shapes.size() == 4;
    report(6, "structural", ok,
           "admissible_records=" + S(records) + " condition_failures=" + S(failed) +
               " weld_checked=" + S(weld) + " cut_checked=" + S(cut));
  }

  // 7. Same seed, byte-identical reports modulo timing.
  {
    const std::string a = strip_timing(r1).dump(2), b = strip_timing(r2).dump(2);
    report(7, "determinism", a == b, "bytes=" + S(a.size()) + (a == b ? " identical" : " differ"));
  }

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
