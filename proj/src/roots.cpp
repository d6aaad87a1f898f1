#include "schwarz_atlas/roots.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "schwarz_atlas/errors.hpp"

namespace schwarz_atlas::roots {

namespace {

constexpr int kMaxClassicalRank = 30;

IntVector unit(int dim, int i, long long value = 1) {
  IntVector v(dim, 0);
  v[i] = value;
  return v;
}

IntVector add(IntVector a, const IntVector& b, long long scale = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
  return a;
}

// Simple roots of E8 in Bourbaki numbering, coordinates doubled.
std::vector<IntVector> e8_simple_doubled() {
  std::vector<IntVector> s;
  s.push_back({1, -1, -1, -1, -1, -1, -1, 1});
  s.push_back({2, 2, 0, 0, 0, 0, 0, 0});
  s.push_back({-2, 2, 0, 0, 0, 0, 0, 0});
  for (int i = 1; i < 6; ++i) {
    IntVector v(8, 0);
    v[i] = -2;
    v[i + 1] = 2;
    s.push_back(v);
  }
  return s;
}

std::vector<std::vector<Rational>> exact_inverse(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
    a[i][n + i] = Rational(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw std::logic_error("singular Cartan matrix");
    std::swap(a[pivot], a[col]);
    Rational inv = Rational(1) / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Rational f = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

}  // namespace

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::D: return 'D';
    case Family::E: return 'E';
  }
  return '?';
}

RootSystemType RootSystemType::make(Family family, int rank) {
  switch (family) {
    case Family::A:
      if (rank < 1 || rank > kMaxClassicalRank)
        throw ValidationError("type A requires 1 <= rank <= 30");
      break;
    case Family::D:
      if (rank < 4 || rank > kMaxClassicalRank)
        throw ValidationError("type D requires 4 <= rank <= 30");
      break;
    case Family::E:
      if (rank < 6 || rank > 8) throw ValidationError("type E requires rank 6, 7 or 8");
      break;
  }
  return RootSystemType{family, rank};
}

RootSystemType RootSystemType::parse(std::string_view family, int rank) {
  if (family == "A" || family == "a") return make(Family::A, rank);
  if (family == "D" || family == "d") return make(Family::D, rank);
  if (family == "E" || family == "e") return make(Family::E, rank);
  throw ValidationError("unknown root system family '" + std::string(family) +
                        "' (only simply-laced A, D, E are supported)");
}

RootSystemType RootSystemType::from_name(std::string_view name) {
  if (name.size() < 2) throw ValidationError("malformed root system name '" + std::string(name) + "'");
  int rank = 0;
  for (char c : name.substr(1)) {
    if (c < '0' || c > '9')
      throw ValidationError("malformed root system name '" + std::string(name) + "'");
    rank = rank * 10 + (c - '0');
    if (rank > 1000) throw ValidationError("rank out of range in '" + std::string(name) + "'");
  }
  return parse(name.substr(0, 1), rank);
}

std::string RootSystemType::name() const {
  return std::string(1, family_letter(family)) + std::to_string(rank);
}

int coxeter_number(const RootSystemType& t) {
  switch (t.family) {
    case Family::A: return t.rank + 1;
    case Family::D: return 2 * t.rank - 2;
    case Family::E: return t.rank == 6 ? 12 : (t.rank == 7 ? 18 : 30);
  }
  return 0;
}

Rational theorem_a(const RootSystemType& t) {
  switch (t.family) {
    case Family::A: return Rational(t.rank + 1, 4);
    case Family::D: return Rational(t.rank - 2);
    case Family::E: return Rational(t.rank == 6 ? 6 : (t.rank == 7 ? 12 : 30));
  }
  return {};
}

Rational hyperbolic_exponent(const RootSystemType& t) {
  switch (t.family) {
    case Family::A: return Rational(2, t.rank + 1);
    case Family::D: return Rational(1, t.rank - 2);
    case Family::E: return Rational(1, t.rank - 3);
  }
  return {};
}

std::vector<int> toric_d_set(const RootSystemType& t) {
  switch (t.family) {
    case Family::A:
      throw ValidationError("toric d-set is defined for types D and E only");
    case Family::D: return {1, t.rank - 3};
    case Family::E: return {1, 2, t.rank - 4};
  }
  return {};
}

IntMatrix cartan_matrix(const RootSystemType& t) {
  const int n = t.rank;
  IntMatrix c(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto link = [&](int a, int b) { c[a][b] = c[b][a] = -1; };
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case Family::E:
      link(0, 2);
      link(2, 3);
      link(1, 3);
      for (int i = 3; i + 1 < n; ++i) link(i, i + 1);
      break;
  }
  return c;
}

std::vector<int> leaf_branch_distances(const RootSystemType& t) {
  const IntMatrix c = cartan_matrix(t);
  const int n = t.rank;
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && c[i][j] != 0) adj[i].push_back(j);
  int branch = -1;
  for (int i = 0; i < n; ++i)
    if (adj[i].size() == 3) branch = i;
  if (branch < 0) return {};

  std::vector<int> dist(n, -1);
  std::queue<int> q;
  dist[branch] = 0;
  q.push(branch);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (adj[i].size() == 1) out.push_back(dist[i]);
  std::sort(out.begin(), out.end());
  return out;
}

RootSystem RootSystem::build(const RootSystemType& type) {
  RootSystemType t = RootSystemType::make(type.family, type.rank);
  RootSystem r;
  r.type_ = t;
  const int n = t.rank;

  switch (t.family) {
    case Family::A:
      r.ambient_dim_ = n + 1;
      for (int i = 0; i < n; ++i)
        r.simple_ambient_.push_back(add(unit(n + 1, i), unit(n + 1, i + 1), -1));
      break;
    case Family::D:
      r.ambient_dim_ = n;
      for (int i = 0; i + 1 < n; ++i)
        r.simple_ambient_.push_back(add(unit(n, i), unit(n, i + 1), -1));
      r.simple_ambient_.push_back(add(unit(n, n - 2), unit(n, n - 1)));
      break;
    case Family::E: {
      r.ambient_dim_ = 8;
      r.ambient_scale_ = 2;
      auto e8 = e8_simple_doubled();
      r.simple_ambient_.assign(e8.begin(), e8.begin() + n);
      break;
    }
  }

  r.gram_.assign(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.gram_[i][j] = r.inner(r.simple_ambient_[i], r.simple_ambient_[j]);
  if (r.gram_ != cartan_matrix(t))
    throw std::logic_error("ambient simple roots do not reproduce the Cartan matrix of " + t.name());

  // Positive roots: closure of the simple roots under simple reflections,
  // keeping images with nonnegative coefficients. s_i permutes R+ \ {alpha_i}.
  std::set<IntVector> seen;
  std::vector<IntVector> frontier;
  for (int i = 0; i < n; ++i) {
    IntVector e = unit(n, i);
    seen.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& beta : frontier) {
      for (int i = 0; i < n; ++i) {
        long long pairing = 0;
        for (int j = 0; j < n; ++j) pairing += beta[j] * r.gram_[j][i];
        IntVector image = beta;
        image[i] -= pairing;
        bool positive = std::all_of(image.begin(), image.end(), [](long long x) { return x >= 0; });
        if (positive && seen.insert(image).second) next.push_back(image);
      }
    }
    frontier = std::move(next);
  }

  r.positive_coeffs_.assign(seen.begin(), seen.end());
  std::sort(r.positive_coeffs_.begin(), r.positive_coeffs_.end(),
            [](const IntVector& a, const IntVector& b) {
              long long ha = std::accumulate(a.begin(), a.end(), 0LL);
              long long hb = std::accumulate(b.begin(), b.end(), 0LL);
              if (ha != hb) return ha < hb;
              return a < b;
            });
  for (const auto& c : r.positive_coeffs_) r.positive_ambient_.push_back(r.to_ambient(c));

  r.inverse_gram_ = exact_inverse(r.gram_);
  return r;
}

long long RootSystem::inner(const IntVector& x, const IntVector& y) const {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  const long long sq = static_cast<long long>(ambient_scale_) * ambient_scale_;
  if (s % sq != 0) throw ValidationError("vector outside the root lattice model");
  return s / sq;
}

long long RootSystem::inner_coefficients(const IntVector& c1, const IntVector& c2) const {
  long long s = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) s += c1[i] * gram_[i][j] * c2[j];
  return s;
}

IntVector RootSystem::to_ambient(const IntVector& coefficients) const {
  IntVector v(ambient_dim_, 0);
  for (int i = 0; i < rank(); ++i) v = add(std::move(v), simple_ambient_[i], coefficients[i]);
  return v;
}

bool RootSystem::is_root(const IntVector& ambient) const {
  if (static_cast<int>(ambient.size()) != ambient_dim_) return false;
  IntVector neg = ambient;
  for (auto& x : neg) x = -x;
  return std::find(positive_ambient_.begin(), positive_ambient_.end(), ambient) !=
             positive_ambient_.end() ||
         std::find(positive_ambient_.begin(), positive_ambient_.end(), neg) !=
             positive_ambient_.end();
}

int coxeter_number(const RootSystem& r) {
  return static_cast<int>(2 * r.positive_roots().size()) / r.rank();
}
Rational theorem_a(const RootSystem& r) { return theorem_a(r.type()); }
Rational hyperbolic_exponent(const RootSystem& r) { return hyperbolic_exponent(r.type()); }
std::vector<int> toric_d_set(const RootSystem& r) { return toric_d_set(r.type()); }

IntVector reflect(const RootSystem& r, const IntVector& lambda, const IntVector& alpha) {
  if (!r.is_root(alpha)) throw ValidationError("reflection vector is not a root");
  if (static_cast<int>(lambda.size()) != r.ambient_dim())
    throw ValidationError("vector has wrong ambient dimension");
  return add(lambda, alpha, -r.inner(lambda, alpha));
}

IntVector coroot_coordinates(const RootSystem& r, const IntVector& alpha_ambient) {
  IntVector out;
  out.reserve(r.rank());
  for (const auto& s : r.simple_roots()) out.push_back(r.inner(s, alpha_ambient));
  return out;
}

}  // namespace schwarz_atlas::roots
