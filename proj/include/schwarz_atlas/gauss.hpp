#pragma once

// The Euler-Gauss equation
//   z(1-z) f'' + [gamma - (alpha+beta+1) z] f' - alpha beta f = 0
// with Frobenius solutions at 0, numeric continuation, monodromy around
// 0, 1, infinity, the Schwarz map and the degree-two pullback.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "schwarz_atlas/circles.hpp"
#include "schwarz_atlas/exact.hpp"
#include "schwarz_atlas/ode.hpp"

namespace schwarz_atlas::gauss {

using cplx = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

struct GaussParams {
  Rational alpha;
  Rational beta;
  Rational gamma;

  /// (1 - gamma, gamma - alpha - beta, beta - alpha).
  ExponentTriple differences() const;
  /// Some exponent difference is an integer.
  bool log_case() const;
  /// gamma = 1 - kappa, alpha = (1 - kappa - lambda - mu)/2,
  /// beta = (1 - kappa - lambda + mu)/2.
  static GaussParams from_differences(const ExponentTriple& d);
};

enum class SingularPoint { Zero, One, Infinity };
std::string point_name(SingularPoint s);

struct RiemannScheme3 {
  std::array<SingularPoint, 3> points{SingularPoint::Zero, SingularPoint::One,
                                      SingularPoint::Infinity};
  std::array<std::array<Rational, 2>, 3> exponents;
  ExponentTriple differences;
  bool log_case = false;

  Rational exponent_sum() const;
};

RiemannScheme3 riemann_scheme(const GaussParams& p);

/// Parameters (k1, k2, lambda) of the pullback along w = 1/2 - (z + 1/z)/4.
struct PullbackParams {
  Rational k1;
  Rational k2;
  Rational lambda_pb;
  bool operator==(const PullbackParams&) const = default;
};

GaussParams dictionary(const PullbackParams& pb);
PullbackParams inverse_dictionary(const GaussParams& p);

/// Points 1, -1, 0, infinity of the z-line.
struct RiemannScheme4 {
  std::array<std::string, 4> points{"1", "-1", "0", "inf"};
  std::array<std::array<Rational, 2>, 4> exponents;
};

RiemannScheme4 pullback_scheme(const GaussParams& p);

/// Exact coefficients of
///   theta^2 + c1 (1+z^-1)/(1-z^-1) theta + c2 (1+z^-2)/(1-z^-2) theta + c0,
/// theta = z d/dz.
struct PullbackOde {
  Rational c1;
  Rational c2;
  Rational c0;
};

PullbackOde pullback_ode(const PullbackParams& pb);

cplx pullback_map(cplx z);
Rational pullback_map(const Rational& z);

/// Columns are the jets (f, f') of two solutions at `base`.
struct SolutionFrame {
  cplx base{0.5, 0.0};
  Matrix2 jets = Matrix2::Identity();

  cplx wronskian() const { return jets.determinant(); }
};

using Path = std::vector<cplx>;

struct ContinuationOptions {
  double clearance = 1e-3;
  numeric::Tolerances tolerances{};
};

/// Throws ValidationError when a segment comes within `clearance` of 0 or 1.
void validate_path(const Path& path, double clearance);

/// f''(z) from (f, f') via the equation.
cplx second_derivative(const GaussParams& p, cplx z, cplx f, cplx df);

/// Frobenius solutions z^{1-gamma}(1 + ...) and (1 + ...), with their
/// derivatives, on the principal branch. Requires |z| < 1, z not in (-1, 0].
SolutionFrame local_basis_at_zero(const GaussParams& p, cplx z);

/// Linear map on jets realized by continuation along `path`.
Matrix2 transport(const GaussParams& p, const Path& path, const ContinuationOptions& opt = {});

SolutionFrame continue_along(const GaussParams& p, const Path& path, const SolutionFrame& frame,
                             const ContinuationOptions& opt = {});

/// Loops based at 1/2: counterclockwise around 0, counterclockwise around 1,
/// and the loop around infinity for which the composite of all three is
/// trivial.
Path monodromy_loop(SingularPoint s);

struct Monodromy {
  SingularPoint point = SingularPoint::Zero;
  /// Action on jets (f, f') at 1/2.
  Matrix2 matrix;
  std::array<cplx, 2> eigenvalues;
  /// exp(2 pi i e) over the scheme exponents at the point.
  std::array<cplx, 2> expected;
  double eigenvalue_residual = 0.0;
};

Monodromy monodromy_at(const GaussParams& p, SingularPoint s, const ContinuationOptions& opt = {});

struct MonodromyGroup {
  Monodromy m0;
  Monodromy m1;
  Monodromy m_inf;
  /// max |M_inf M_1 M_0 - I|.
  double relation_residual = 0.0;
};

MonodromyGroup monodromy_group(const GaussParams& p, const ContinuationOptions& opt = {});

/// Matches two spectra up to ordering; max distance of the best pairing.
double spectrum_distance(const std::array<cplx, 2>& a, const std::array<cplx, 2>& b);

/// Path from 1/2 into the closed upper half-plane: a straight segment when
/// Im z > 0, through 1/2 + i/2 and x + i/2 when z = x is real.
Path upper_path(cplx z);

/// [f1 : f2] at z in the closed upper half-plane, continued from the
/// Frobenius basis at 1/2. `basis` mixes the columns (identity by default).
geometry::ProjPoint schwarz_map(const GaussParams& p, cplx z, const Matrix2& basis = Matrix2::Identity());

struct VertexAngles {
  std::array<double, 3> angles{};  // at Pev(0), Pev(1), Pev(infinity)
  std::array<cplx, 3> vertices{};
  std::array<geometry::GeneralizedCircle, 3> sides;  // images of (0,1), (1,inf), (-inf,0)
};

/// Interior angles of the Schwarz triangle measured from circle fits of
/// the boundary images. Throws LogCaseError for integer differences.
VertexAngles vertex_angles(const GaussParams& p, const Matrix2& basis = Matrix2::Identity());

/// |det| stays above 1e-12 times its initial value along the path.
bool wronskian_check(const GaussParams& p, const Path& path, const SolutionFrame& frame,
                     const ContinuationOptions& opt = {});

/// Residual of f(w(z)) in the pullback equation, for f the holomorphic
/// Frobenius solution at w = 0 of the dictionary-matched Gauss equation.
/// Normalized by max(1, |f| + |theta f| + |theta^2 f|).
double pullback_ode_residual(const PullbackParams& pb, cplx z);

/// Boundary of the Schwarz triangle as an SVG document.
std::string schwarz_triangle_svg(const GaussParams& p, int samples_per_side = 48);

}  // namespace schwarz_atlas::gauss
