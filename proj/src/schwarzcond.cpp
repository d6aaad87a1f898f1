#include "schwarz_atlas/schwarzcond.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "schwarz_atlas/errors.hpp"
#include "schwarz_atlas/parallel.hpp"

namespace schwarz_atlas::schwarz {

using roots::Family;

namespace {

StratumCondition conditional(ConditionKind kind, std::string label, const Rational& v) {
  StratumCondition c;
  c.kind = kind;
  c.label = std::move(label);
  c.value = v;
  c.vacuous = v.sign() <= 0;
  c.satisfied = conditional_unit_fraction(v);
  return c;
}

StratumCondition strict(ConditionKind kind, std::string label, const Rational& v) {
  StratumCondition c;
  c.kind = kind;
  c.label = std::move(label);
  c.value = v;
  c.satisfied = is_unit_fraction(v);
  return c;
}

std::optional<long long> p_of(const Rational& k) {
  Rational x = (Rational(1) - Rational(2) * k) / Rational(2);
  if (x.sign() <= 0 || x.num() != 1) return std::nullopt;
  if (x.den() > BigInt(std::numeric_limits<long long>::max())) return std::nullopt;
  return static_cast<long long>(x.den());
}

}  // namespace

std::string kind_name(ConditionKind k) {
  switch (k) {
    case ConditionKind::HyperbolicRange:
      return "HyperbolicRange";
    case ConditionKind::ToricA:
      return "ToricA";
    case ConditionKind::ToricDE:
      return "ToricDE";
    case ConditionKind::Mirror:
      return "Mirror";
    case ConditionKind::Identity:
      return "Identity";
    case ConditionKind::SpecialA7inE7:
      return "SpecialA7inE7";
    case ConditionKind::SpecialA8inE8:
      return "SpecialA8inE8";
    case ConditionKind::SpecialD8inE8:
      return "SpecialD8inE8";
  }
  return "?";
}

std::vector<StratumCondition> toric_condition(const RootSystemType& t, const Rational& k) {
  if (t.family == Family::A)
    return {strict(ConditionKind::ToricA, "(n-1)k/2", Rational(t.rank - 1) * k / Rational(2))};
  std::vector<int> ds = roots::toric_d_set(t);
  std::vector<StratumCondition> out;
  for (int d : std::set<int>(ds.begin(), ds.end())) {
    auto c = strict(ConditionKind::ToricDE, "dk (d=" + std::to_string(d) + ")", Rational(d) * k);
    c.d = d;
    c.multiplicity = static_cast<int>(std::count(ds.begin(), ds.end(), d));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<StratumCondition> mirror_identity_condition(const RootSystemType& t, const Rational& k) {
  const Rational h(roots::coxeter_number(t));
  return {conditional(ConditionKind::Mirror, "(1-2k)/2", (Rational(1) - Rational(2) * k) / Rational(2)),
          conditional(ConditionKind::Identity, "(hk-1)/2", (h * k - Rational(1)) / Rational(2))};
}

std::vector<StratumCondition> special_point_condition(const RootSystemType& t, const Rational& k) {
  if (t.family != Family::E) return {};
  if (t.rank == 7)
    return {conditional(ConditionKind::SpecialA7inE7, "(8k-1)/2", (Rational(8) * k - Rational(1)) / Rational(2))};
  if (t.rank == 8)
    return {conditional(ConditionKind::SpecialA8inE8, "(9k-1)", Rational(9) * k - Rational(1)),
            conditional(ConditionKind::SpecialD8inE8, "(14k-1)/2", (Rational(14) * k - Rational(1)) / Rational(2))};
  return {};
}

StratumCondition hyperbolic_range(const RootSystemType& t, const Rational& k) {
  const Rational m = roots::hyperbolic_exponent(t);
  StratumCondition c;
  c.kind = ConditionKind::HyperbolicRange;
  c.label = "0<k<m";
  c.value = m;
  c.satisfied = k.sign() > 0 && k < m;
  c.boundary = k == m;
  return c;
}

SchwarzReport check(const RootSystemType& t, const Rational& k) {
  SchwarzReport r;
  r.type = t;
  r.k = k;
  r.p = p_of(k);
  for (auto&& c : toric_condition(t, k)) r.conditions.push_back(std::move(c));
  for (auto&& c : mirror_identity_condition(t, k)) r.conditions.push_back(std::move(c));
  for (auto&& c : special_point_condition(t, k)) r.conditions.push_back(std::move(c));
  r.conditions.push_back(hyperbolic_range(t, k));
  r.pass = std::all_of(r.conditions.begin(), r.conditions.end(),
                       [](const StratumCondition& c) { return c.satisfied; });
  return r;
}

std::vector<RootSystemType> scan_types(int rank_max) {
  if (rank_max < 2) throw ValidationError("rank bound must be at least 2");
  if (rank_max > 30) throw ValidationError("rank bound above 30 is not supported");
  std::vector<RootSystemType> out;
  for (int n = 2; n <= rank_max; ++n) out.push_back(RootSystemType::make(Family::A, n));
  for (int n = 4; n <= rank_max; ++n) out.push_back(RootSystemType::make(Family::D, n));
  for (int n = 6; n <= 8; ++n) out.push_back(RootSystemType::make(Family::E, n));
  return out;
}

Enumeration enumerate(long long p_min, long long p_max, int rank_max, bool include_k_half) {
  if (p_min < 3 || p_max < p_min) throw ValidationError("need 3 <= p_min <= p_max");
  Enumeration e;
  e.p_min = p_min;
  e.p_max = p_max;
  e.rank_max = rank_max;
  const auto types = scan_types(rank_max);
  auto row_for = [&](const Rational& k) {
    EnumerationRow row;
    row.k = k;
    for (const auto& t : types)
      if (check(t, k).pass) row.passing.push_back(t);
    return row;
  };
  auto rows = parallel_map(static_cast<std::size_t>(p_max - p_min + 1), [&](std::size_t i) {
    long long p = p_min + static_cast<long long>(i);
    EnumerationRow row = row_for(k_from_p(p));
    row.p = p;
    return row;
  });
  for (auto& row : rows)
    if (!row.passing.empty()) e.rows.push_back(std::move(row));
  if (include_k_half) e.k_half = row_for(Rational(1, 2));
  return e;
}

const std::map<long long, std::vector<RootSystemType>>& corollary_table() {
  static const std::map<long long, std::vector<RootSystemType>> table = [] {
    auto parse = [](std::initializer_list<const char*> names) {
      std::vector<RootSystemType> v;
      for (const char* s : names) v.push_back(RootSystemType::from_name(s));
      return v;
    };
    return std::map<long long, std::vector<RootSystemType>>{
        {3, parse({"A2", "A3", "A4", "A7", "D4", "D5", "D6", "E6", "E7"})},
        {4, parse({"A2", "A3", "A5", "D4", "D5", "E6"})},
        {6, parse({"A2", "A3", "A4", "A5", "D4"})},
        {10, parse({"A2"})},
    };
  }();
  return table;
}

CorollaryDiff corollary_diff(const Enumeration& e) {
  const auto types = scan_types(e.rank_max);
  auto in_scope = [&](const RootSystemType& t) {
    return std::find(types.begin(), types.end(), t) != types.end();
  };
  const std::set<std::pair<long long, RootSystemType>> documented{
      {3, RootSystemType::from_name("A5")}, {6, RootSystemType::from_name("A5")}};
  std::set<std::pair<long long, RootSystemType>> found, listed;
  for (const auto& row : e.rows)
    for (const auto& t : row.passing) found.insert({*row.p, t});
  for (const auto& [p, ts] : corollary_table()) {
    if (p < e.p_min || p > e.p_max) continue;
    for (const auto& t : ts)
      if (in_scope(t)) listed.insert({p, t});
  }
  CorollaryDiff diff;
  std::set<std::pair<long long, RootSystemType>> all = found;
  all.insert(listed.begin(), listed.end());
  for (const auto& key : all) {
    bool f = found.contains(key), l = listed.contains(key);
    if (f == l) continue;
    Discrepancy d;
    d.p = key.first;
    d.type = key.second;
    d.extra = f;
    d.documented = documented.contains(key) &&
                   ((key.first == 3 && d.extra) || (key.first == 6 && !d.extra));
    if (!d.documented) ++diff.undocumented;
    diff.items.push_back(d);
  }
  return diff;
}

Rational DMVector::sum() const {
  Rational s;
  for (const auto& m : mu) s += m;
  return s;
}

DMVector dm_mu_vector(int n, const Rational& k) {
  if (n < 1) throw ValidationError("n must be at least 1");
  DMVector v;
  Rational outer = Rational(1) - Rational(n + 1) * k / Rational(2);
  v.mu.push_back(outer);
  for (int i = 0; i < n + 1; ++i) v.mu.push_back(k);
  v.mu.push_back(outer);
  for (const auto& m : v.mu)
    if (m.sign() <= 0 || m >= Rational(1)) v.degenerate = true;
  return v;
}

namespace {

DMPair evaluate_pair(const DMVector& v, int i, int j) {
  DMPair p;
  p.i = i;
  p.j = j;
  p.value = Rational(1) - v.mu[i] - v.mu[j];
  p.equal = v.mu[i] == v.mu[j];
  p.vacuous = p.value.sign() <= 0;
  p.satisfied = p.vacuous || (p.equal ? is_two_over_natural(p.value) : is_unit_fraction(p.value));
  return p;
}

}  // namespace

DMConditions dm_conditions(const DMVector& mu) {
  if (mu.degenerate) throw ValidationError("degenerate mu vector: entries must lie in (0, 1)");
  DMConditions out;
  const int N = static_cast<int>(mu.mu.size());
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) out.pairs.push_back(evaluate_pair(mu, i, j));
  out.pass = std::all_of(out.pairs.begin(), out.pairs.end(), [](const DMPair& p) { return p.satisfied; });
  return out;
}

DMConditions dm_conditions_restricted(const DMVector& mu) {
  if (mu.degenerate) throw ValidationError("degenerate mu vector: entries must lie in (0, 1)");
  const int N = static_cast<int>(mu.mu.size());
  if (N < 4) throw ValidationError("mu vector too short");
  DMConditions out;
  // Toric pair: mu_0 and mu_1 are distinct strata of W', so the 1/N rule applies.
  DMPair toric = evaluate_pair(mu, 0, 1);
  toric.equal = false;
  toric.satisfied = toric.vacuous || is_unit_fraction(toric.value);
  out.pairs.push_back(toric);
  for (auto [i, j] : {std::pair{1, N - 2}, std::pair{0, N - 1}}) {
    DMPair p = evaluate_pair(mu, i, j);
    p.equal = true;
    p.satisfied = p.vacuous || is_two_over_natural(p.value);
    out.pairs.push_back(p);
  }
  out.pass = std::all_of(out.pairs.begin(), out.pairs.end(), [](const DMPair& p) { return p.satisfied; });
  return out;
}

bool hidden_symmetry(int n, const Rational& k) { return k == Rational(2, n + 3); }

DMScan dm_equivalence_scan(int n_max, long long p_max) {
  if (n_max < 2 || n_max > 10 || p_max < 3 || p_max > 60)
    throw ValidationError("scan bounds must satisfy 2 <= n_max <= 10 and 3 <= p_max <= 60");
  DMScan scan;
  for (int n = 2; n <= n_max; ++n) {
    for (long long p = 3; p <= p_max; ++p) {
      DMScanEntry e;
      e.n = n;
      e.p = p;
      e.k = k_from_p(p);
      DMVector v = dm_mu_vector(n, e.k);
      const Rational& mu0 = v.mu.front();
      const Rational& mu1 = v.mu[1];
      const Rational& mun1 = v.mu[n + 1];
      const Rational& mun2 = v.mu[n + 2];
      const Rational two(2);
      e.identities_hold = (Rational(1) - mu0 - mu1 == Rational(n - 1) * e.k / two) &&
                          ((Rational(1) - mu1 - mun1) / two == (Rational(1) - two * e.k) / two) &&
                          ((Rational(1) - mu0 - mun2) / two == (Rational(n + 1) * e.k - Rational(1)) / two) &&
                          v.sum() == two;
      if (!e.identities_hold) ++scan.identity_failures;
      e.schwarz_pass = check(RootSystemType::make(Family::A, n), e.k).pass;
      e.degenerate = v.degenerate;
      if (e.degenerate) {
        scan.degenerate.push_back({p, n});
      } else {
        e.dm_pass = dm_conditions_restricted(v).pass;
        if (e.dm_pass != e.schwarz_pass) ++scan.verdict_disagreements;
      }
      e.hidden_symmetry = hidden_symmetry(n, e.k);
      if (e.hidden_symmetry) {
        scan.hidden_raw.push_back({p, n});
        if (e.schwarz_pass) scan.hidden_flagged.push_back({p, n});
      }
      scan.entries.push_back(e);
    }
  }
  return scan;
}

}  // namespace schwarz_atlas::schwarz
