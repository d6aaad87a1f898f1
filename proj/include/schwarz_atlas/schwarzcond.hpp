#pragma once

// Exact Schwarz conditions for the root-system system with parameter k,
// the enumerator over k = (p-2)/(2p), and the Deligne-Mostow comparison
// for type A_n.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schwarz_atlas/exact.hpp"
#include "schwarz_atlas/roots.hpp"

namespace schwarz_atlas::schwarz {

using roots::RootSystemType;

enum class ConditionKind {
  HyperbolicRange,
  ToricA,
  ToricDE,
  Mirror,
  Identity,
  SpecialA7inE7,
  SpecialA8inE8,
  SpecialD8inE8
};

std::string kind_name(ConditionKind k);

struct StratumCondition {
  ConditionKind kind = ConditionKind::ToricA;
  std::string label;
  Rational value;
  bool satisfied = false;
  bool vacuous = false;
  /// k equal to the hyperbolic exponent (HyperbolicRange only).
  bool boundary = false;
  /// Leaf-to-branch distance and how often it occurs (ToricDE only).
  int d = 0;
  int multiplicity = 0;
};

std::vector<StratumCondition> toric_condition(const RootSystemType& t, const Rational& k);
std::vector<StratumCondition> mirror_identity_condition(const RootSystemType& t, const Rational& k);
std::vector<StratumCondition> special_point_condition(const RootSystemType& t, const Rational& k);
StratumCondition hyperbolic_range(const RootSystemType& t, const Rational& k);

struct SchwarzReport {
  RootSystemType type;
  Rational k;
  std::optional<long long> p;
  std::vector<StratumCondition> conditions;
  bool pass = false;
};

SchwarzReport check(const RootSystemType& t, const Rational& k);

/// Types scanned for a given rank bound: A2..A_r, D4..D_r, E6, E7, E8.
std::vector<RootSystemType> scan_types(int rank_max);

struct EnumerationRow {
  std::optional<long long> p;  // empty for the k = 1/2 row
  Rational k;
  std::vector<RootSystemType> passing;
};

struct Enumeration {
  long long p_min = 3;
  long long p_max = 10;
  int rank_max = 13;
  /// Only values of p with at least one passing type.
  std::vector<EnumerationRow> rows;
  std::optional<EnumerationRow> k_half;
};

Enumeration enumerate(long long p_min, long long p_max, int rank_max, bool include_k_half = false);

/// The published table: p -> types.
const std::map<long long, std::vector<RootSystemType>>& corollary_table();

struct Discrepancy {
  long long p = 0;
  RootSystemType type;
  bool extra = false;  // enumerated but not in the table
  bool documented = false;
};

struct CorollaryDiff {
  std::vector<Discrepancy> items;
  int undocumented = 0;
  bool matches_up_to_documented() const { return undocumented == 0; }
};

/// Symmetric difference against the table restricted to the scanned range.
CorollaryDiff corollary_diff(const Enumeration& e);

struct DMVector {
  std::vector<Rational> mu;
  bool degenerate = false;  // some entry outside (0, 1)
  Rational sum() const;
};

/// mu_1 = ... = mu_{n+1} = k, mu_0 = mu_{n+2} = 1 - (n+1)k/2.
DMVector dm_mu_vector(int n, const Rational& k);

struct DMPair {
  int i = 0, j = 0;
  Rational value;  // 1 - mu_i - mu_j
  bool equal = false;
  bool vacuous = false;  // mu_i + mu_j >= 1
  bool satisfied = false;
};

struct DMConditions {
  std::vector<DMPair> pairs;
  bool pass = false;
};

/// All unordered pairs. Throws ValidationError for a degenerate vector.
DMConditions dm_conditions(const DMVector& mu);

/// Conditions for the pairs (0,1), (1,n+1), (0,n+2) only.
DMConditions dm_conditions_restricted(const DMVector& mu);

bool hidden_symmetry(int n, const Rational& k);

struct DMScanEntry {
  int n = 0;
  long long p = 0;
  Rational k;
  bool degenerate = false;
  bool identities_hold = false;
  bool dm_pass = false;
  bool schwarz_pass = false;
  bool hidden_symmetry = false;
};

struct DMScan {
  std::vector<DMScanEntry> entries;
  int identity_failures = 0;
  int verdict_disagreements = 0;  // non-degenerate entries only
  std::vector<std::pair<long long, int>> degenerate;  // (p, n)
  std::vector<std::pair<long long, int>> hidden_raw;  // all (p, n) with k = 2/(n+3)
  std::vector<std::pair<long long, int>> hidden_flagged;  // those that also pass
};

/// n in [2, n_max], p in [3, p_max]. Requires n_max <= 10, p_max <= 60.
DMScan dm_equivalence_scan(int n_max, long long p_max);

}  // namespace schwarz_atlas::schwarz
