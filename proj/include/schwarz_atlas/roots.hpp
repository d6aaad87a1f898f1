#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "schwarz_atlas/exact.hpp"

namespace schwarz_atlas::roots {

using IntVector = std::vector<long long>;
using IntMatrix = std::vector<IntVector>;

enum class Family { A, D, E };

struct RootSystemType {
  Family family = Family::A;
  int rank = 1;

  /// Validates A_n (n >= 1), D_n (n >= 4), E_6/E_7/E_8.
  static RootSystemType make(Family family, int rank);
  static RootSystemType parse(std::string_view family, int rank);
  /// e.g. "A2", "D4", "E8".
  static RootSystemType from_name(std::string_view name);

  std::string name() const;
  bool operator==(const RootSystemType&) const = default;
  auto operator<=>(const RootSystemType&) const = default;
};

char family_letter(Family f);

// Closed forms, keyed on the type alone.
int coxeter_number(const RootSystemType& t);
Rational theorem_a(const RootSystemType& t);
Rational hyperbolic_exponent(const RootSystemType& t);
/// D_n -> {1, n-3}, E_n -> {1, 2, n-4}. Throws ValidationError for type A.
std::vector<int> toric_d_set(const RootSystemType& t);

/// Cartan matrix in Bourbaki numbering (0-based indices).
IntMatrix cartan_matrix(const RootSystemType& t);

/// An ADE root system with exact integer data.
///
/// Ambient vectors are stored as integers scaled by `ambient_scale` (2 for
/// type E, whose standard model has half-integer coordinates, 1 otherwise);
/// the real inner product is dot(x, y) / ambient_scale^2.
class RootSystem {
 public:
  static RootSystem build(const RootSystemType& type);

  const RootSystemType& type() const { return type_; }
  int rank() const { return type_.rank; }
  int ambient_dim() const { return ambient_dim_; }
  int ambient_scale() const { return ambient_scale_; }

  const std::vector<IntVector>& simple_roots() const { return simple_ambient_; }
  /// Sorted by height, then lexicographically on simple-root coefficients.
  const std::vector<IntVector>& positive_roots() const { return positive_ambient_; }
  /// Coefficients of each positive root in the simple-root basis.
  const std::vector<IntVector>& positive_coefficients() const { return positive_coeffs_; }
  /// Gram matrix (alpha_i, alpha_j) of the simple roots.
  const IntMatrix& gram() const { return gram_; }
  /// Inverse Cartan matrix: Gram matrix of the fundamental coweights.
  const std::vector<std::vector<Rational>>& inverse_gram() const { return inverse_gram_; }

  long long inner(const IntVector& x, const IntVector& y) const;
  bool is_root(const IntVector& ambient) const;
  /// Ambient vector sum_i c_i alpha_i.
  IntVector to_ambient(const IntVector& coefficients) const;
  /// Inner product of two vectors given in simple-root coordinates.
  long long inner_coefficients(const IntVector& c1, const IntVector& c2) const;

  const IntVector& highest_root() const { return positive_coeffs_.back(); }

 private:
  RootSystemType type_;
  int ambient_dim_ = 0;
  int ambient_scale_ = 1;
  std::vector<IntVector> simple_ambient_;
  std::vector<IntVector> positive_ambient_;
  std::vector<IntVector> positive_coeffs_;
  IntMatrix gram_;
  std::vector<std::vector<Rational>> inverse_gram_;
};

/// h = |R| / n, computed from the enumerated roots.
int coxeter_number(const RootSystem& r);
Rational theorem_a(const RootSystem& r);
Rational hyperbolic_exponent(const RootSystem& r);
std::vector<int> toric_d_set(const RootSystem& r);

/// s_alpha(lambda) = lambda - (lambda, alpha) alpha in ambient coordinates.
/// Throws ValidationError when alpha is not a root.
IntVector reflect(const RootSystem& r, const IntVector& lambda, const IntVector& alpha);

/// Coordinates of the coroot of alpha in the basis dual to the simple roots:
/// entry i is (alpha_i, alpha).
IntVector coroot_coordinates(const RootSystem& r, const IntVector& alpha_ambient);

/// Distances in the Dynkin diagram from each leaf to the branch node, read
/// off the Cartan matrix. Empty for type A (no branch node).
std::vector<int> leaf_branch_distances(const RootSystemType& t);

}  // namespace schwarz_atlas::roots
