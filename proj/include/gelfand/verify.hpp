#ifndef GELFAND_VERIFY_HPP
#define GELFAND_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gelfand/cosets.hpp"
#include "gelfand/hecke.hpp"
#include "gelfand/shalika.hpp"

namespace gelfand::verify {

using json = nlohmann::ordered_json;
using ff::Field;
using shalika::Chi;
using shalika::Twist;

inline constexpr const char* kToolName = "gelfand";
inline constexpr const char* kToolVersion = "1.0.0";

struct FieldParams {
  int q = 2;
  /// Low degree first; empty selects the shipped modulus.
  std::vector<int> modulus;
  Field make() const;
};

struct ShalikaEntry {
  FieldParams field;
  int n = 0;
  int m = 0;
  /// Empty means every effective twist.
  std::vector<Twist> twists;
  /// Set when the request had n > m and was swapped.
  std::optional<std::pair<int, int>> requested;
};

struct DeltaPEntry {
  FieldParams field;
  int n = 1;
  int m = 1;
  /// Empty means every determinant character (x1, x2).
  std::vector<Chi> chis;
};

struct Budgets {
  /// |G| cap for completeness.
  std::uint64_t max_group_order = cosets::kDefaultMaxGroupOrder;
  /// |H| cap for stabilizer and witness passes, and the representative count.
  std::uint64_t max_subgroup_order = cosets::kDefaultMaxSubgroupOrder;
  /// |G| cap for the Hecke algebra.
  std::uint64_t max_hecke_order = hecke::kDefaultMaxHeckeOrder;
};

struct Checks {
  bool geometric = true;
  bool completeness = true;
  bool hecke = true;
  bool properties = true;
  bool structural = true;
};

struct Campaign {
  std::vector<ShalikaEntry> shalika;
  std::vector<DeltaPEntry> deltap;
  Budgets budgets;
  Checks checks;
  std::uint64_t seed = 1;
  std::uint64_t property_instances = 1000;
  int jobs = 1;
  /// Emit every representative with its per-twist outcome.
  bool coset_records = false;
};

/// q in {2, 3}; Shalika (n, m) with n <= m, n + m <= 4; Delta P (1,1),
/// (1,2), (2,1); all twists and characters; every check.
Campaign default_campaign();

/// Twists actually run for an entry.
std::vector<Twist> entry_twists(const ShalikaEntry& e);
std::vector<Chi> entry_chis(const DeltaPEntry& e);

// Sections. Each carries "verdict": "holds", "counterexample" or "skipped"
// (with "reason").

json run_geometric(const ShalikaEntry& e, const Campaign& c);
json run_completeness(const ShalikaEntry& e, const Campaign& c);
/// geometric, when given, is this entry's geometric section; each twist's
/// Hecke verdict is compared with it.
json run_hecke(const ShalikaEntry& e, const Campaign& c, const json* geometric = nullptr);
json run_hecke(const DeltaPEntry& e, const Campaign& c);
/// Seeded randomized identity suites, c.property_instances each.
json run_properties(const Campaign& c);
/// Brute-force weld inheritance, cut equivalence and reduced forms at
/// n + m <= 4 over F_2, plus (1,1), (1,2) over F_3.
json run_structural(const Campaign& c);

/// Every representative with its per-twist admissibility, witness and
/// violation.
json enumerate_cosets(const ShalikaEntry& e, const Campaign& c);

/// The full report. Wall-clock fields live under "timing" keys only.
json run_campaign(const Campaign& c);

json config_json(const ShalikaEntry& e);
json config_json(const DeltaPEntry& e);

/// Removes every "timing" key, recursively.
json strip_timing(json report);

/// One line per configuration and section.
std::string to_text(const json& report);

/// 0 when nothing failed, 1 for any counterexample, 2 when strict and some
/// requested section was skipped.
int exit_code(const json& report, bool strict);

}  // namespace gelfand::verify

#endif  // GELFAND_VERIFY_HPP
