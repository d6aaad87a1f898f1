#pragma once

// The root-system hypergeometric system on the torus
//   theta_xi theta_eta f + 1/2 k sum_{alpha>0} alpha(xi) alpha(eta) phi(h^-alpha) theta_{alpha^vee} f
//     + a k^2 (xi, eta) f = 0,   phi(u) = (1+u)/(1-u),
// in coordinates z_i = h^{-alpha_i} with theta_i = theta_{xi_i} = -z_i d/dz_i.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "schwarz_atlas/errors.hpp"
#include "schwarz_atlas/exact.hpp"
#include "schwarz_atlas/ode.hpp"
#include "schwarz_atlas/roots.hpp"

namespace schwarz_atlas::torus {

using cplx = std::complex<double>;
using Point = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using roots::IntVector;
using roots::RootSystem;

/// No Hermitian form, or more than one up to scale.
class FormDegenerate : public NumericError {
 public:
  FormDegenerate(const std::string& what, int dimension) : NumericError(what), dimension_(dimension) {}
  int dimension() const { return dimension_; }

 private:
  int dimension_;
};

/// h^{-alpha} = prod z_i^{c_i} for alpha = sum c_i alpha_i.
cplx char_value(const Point& z, const IntVector& coefficients);

/// min over positive roots of |h^{-alpha} - 1|.
double mirror_distance(const RootSystem& r, const Point& z);

/// z_i = exp(-x_i) with x evenly spaced in [0.5, 0.7].
Point default_base(int rank);

struct SystemCoeffs {
  int rank = 0;
  /// c[i][j]: coefficients of theta_1..theta_n in equation (xi_i, xi_j).
  std::vector<std::vector<Eigen::VectorXcd>> c;
  /// s[i][j] = a k^2 (xi_i, xi_j).
  std::vector<std::vector<Rational>> s;
};

/// Throws MirrorSingularity on a mirror.
SystemCoeffs assemble(const RootSystem& r, const Rational& k, const Point& z,
                      const std::optional<Rational>& a_override = std::nullopt);

/// Coefficients of the equation for an arbitrary pair (xi, eta) given in
/// fundamental-coweight coordinates.
Eigen::VectorXcd pair_coefficients(const SystemCoeffs& s, const Eigen::VectorXd& xi,
                                   const Eigen::VectorXd& eta);

/// Exact weight 1/2 k alpha(xi_i) alpha(xi_j) (alpha_l, alpha) of phi(h^-alpha)
/// theta_l, one row per positive root.
std::vector<std::vector<Rational>> phi_weights(const RootSystem& r, const Rational& k, int i, int j);

struct Connection {
  Point base;
  /// theta_i F = A[i] F on F = (f, theta_1 f, ..., theta_n f).
  std::vector<Matrix> A;
  /// dA[l][i] = theta_l A[i].
  std::vector<std::vector<Matrix>> dA;
};

Connection connection(const RootSystem& r, const Rational& k, const Point& z,
                      const std::optional<Rational>& a_override = std::nullopt,
                      bool with_derivatives = true);

/// max over i < j of max-abs(theta_i A_j - theta_j A_i + [A_j, A_i]).
double flatness_residual(const RootSystem& r, const Rational& k, const Point& z,
                         const std::optional<Rational>& a_override = std::nullopt);

/// Same quantity with theta-derivatives of A by central differences.
double flatness_residual_fd(const RootSystem& r, const Rational& k, const Point& z,
                            double step = 1e-5);

/// (s_i z)_j = z_j z_i^{-C_ji}; index i is 0-based.
Point reflect_point(const RootSystem& r, int i, const Point& z);

/// Discrepancy between the system at s_i z for the pair (s_i xi_a, s_i xi_b)
/// and the transported system at z. i = -1 is the identity element.
double w_invariance_residual(const RootSystem& r, const Rational& k, const Point& z, int i);

using TorusPath = std::vector<Point>;

struct TransportOptions {
  double clearance = 1e-3;
  numeric::Tolerances tolerances{};
  /// Refuse to integrate when the start point is not flat to this level.
  double flatness_gate = 1e-6;
};

/// Fundamental solution Phi with jets(end) = Phi * jets(start); segments
/// are straight in log z.
Matrix transport(const RootSystem& r, const Rational& k, const TorusPath& path,
                 const TransportOptions& opt = {});

Matrix continue_frame(const RootSystem& r, const Rational& k, const TorusPath& path,
                      const Matrix& frame, const TransportOptions& opt = {});

/// Loop in the complement around the mirror h^alpha = 1: walk along the
/// coroot direction until h^-alpha sits at distance 0.1 from 1, circle
/// once counterclockwise, walk back. Throws NumericError when another
/// mirror is encircled or approached.
TorusPath mirror_loop(const RootSystem& r, const IntVector& alpha, const Point& base,
                      int circle_points = 64);

/// z_l -> z_l exp(-i phi), phi in [0, 2 pi].
TorusPath coordinate_loop(const Point& base, int l, int points = 64);

struct MirrorMonodromy {
  IntVector alpha;
  Matrix M;
  Eigen::VectorXcd eigenvalues;
  cplx q_squared;
  /// ||(M - I)(M - q^2 I)||_F / ||M||_F^2.
  double hecke_residual = 0.0;
};

MirrorMonodromy mirror_monodromy(const RootSystem& r, const Rational& k, const Point& base,
                                 const IntVector& alpha, const TransportOptions& opt = {});

struct InvariantForm {
  Matrix H;
  int positive = 0;
  int negative = 0;
  int null_dimension = 0;
  /// max over generators of ||M^* H M - H||_F with ||H||_F = 1.
  double residual = 0.0;
  std::vector<double> singular_tail;
};

/// Least squares for M^* H M = H over the real space of Hermitian
/// matrices. Throws FormDegenerate unless the solution space is a line.
InvariantForm invariant_form(const std::vector<Matrix>& generators, double null_tol = 1e-6);

/// Simple-root mirror loops and coordinate loops at `base`.
std::vector<Matrix> monodromy_generators(const RootSystem& r, const Rational& k, const Point& base,
                                         const TransportOptions& opt = {});

struct BallSample {
  Point z;
  double value = 0.0;  // <ev, ev>
};

struct BallReport {
  InvariantForm form;
  double base_value = 0.0;
  std::vector<BallSample> samples;
  bool all_negative = false;
  bool lorentz = false;
};

/// Normalizes the invariant form so that the base evaluation vector is
/// negative and evaluates each sample transported from `base`.
BallReport ball_check(const RootSystem& r, const Rational& k, const Point& base,
                      const std::vector<Point>& samples, const TransportOptions& opt = {});

/// Seeded off-mirror points z = base * exp(x + i y), x ~ N(0, sx), y ~ N(0, sy).
std::vector<Point> sample_near(const RootSystem& r, const Point& base, int count, std::uint64_t seed,
                               double sx = 0.1, double sy = 0.3, double clearance = 1e-2);

/// Seeded off-mirror points z_j = exp(N(0, 1/2) + i U(0, 2 pi)).
std::vector<Point> sample_generic(const RootSystem& r, int count, std::uint64_t seed,
                                  double clearance = 1e-2);

/// k near 0 or near the hyperbolic exponent.
bool boundary_unreliable(const RootSystem& r, const Rational& k);

}  // namespace schwarz_atlas::torus
