#include "schwarz_atlas/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace schwarz_atlas::torus {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RootData {
  IntVector coeffs;
  Eigen::VectorXd coroot;  // (alpha_l, alpha)
};

std::vector<RootData> root_data(const RootSystem& r) {
  const auto& C = r.gram();
  const int n = r.rank();
  std::vector<RootData> out;
  for (const auto& c : r.positive_coefficients()) {
    RootData d{c, Eigen::VectorXd::Zero(n)};
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) d.coroot(l) += static_cast<double>(C[l][m] * c[m]);
    out.push_back(std::move(d));
  }
  return out;
}

Eigen::MatrixXd cartan_d(const RootSystem& r) {
  const int n = r.rank();
  Eigen::MatrixXd C(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C(i, j) = static_cast<double>(r.gram()[i][j]);
  return C;
}

Rational theorem_constant(const RootSystem& r, const std::optional<Rational>& a_override) {
  return a_override ? *a_override : roots::theorem_a(r);
}

cplx phi(cplx u) { return (1.0 + u) / (1.0 - u); }

void check_point(const Point& z) {
  for (Eigen::Index i = 0; i < z.size(); ++i)
    if (z(i) == cplx(0.0, 0.0)) throw ValidationError("torus coordinates must be nonzero");
}

numeric::State to_state(const Matrix& m) { return numeric::State(m.data(), m.data() + m.size()); }

Matrix from_state(const numeric::State& y, Eigen::Index n) {
  return Eigen::Map<const Matrix>(y.data(), n, n);
}

// Counterclockwise turns of w around 0 along a closed polygon.
double winding(const std::vector<cplx>& w) {
  double total = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) total += std::arg(w[i] / w[i - 1]);
  return total / kTwoPi;
}

Point log_point(const Point& z0, const Eigen::VectorXcd& L, double t) {
  return (z0.array() * (t * L.array()).exp()).matrix();
}

Eigen::VectorXcd log_ratio(const Point& z0, const Point& z1) {
  return (z1.array() / z0.array()).log().matrix();
}

}  // namespace

cplx char_value(const Point& z, const IntVector& coefficients) {
  cplx u(1.0, 0.0);
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    long long c = coefficients[i];
    if (c == 0) continue;
    cplx base = c > 0 ? z(i) : 1.0 / z(i);
    for (long long e = 0; e < (c > 0 ? c : -c); ++e) u *= base;
  }
  return u;
}

double mirror_distance(const RootSystem& r, const Point& z) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& c : r.positive_coefficients()) d = std::min(d, std::abs(char_value(z, c) - 1.0));
  return d;
}

Point default_base(int rank) {
  Point z(rank);
  for (int i = 0; i < rank; ++i) {
    double x = rank == 1 ? 0.5 : 0.5 + 0.2 * i / (rank - 1);
    z(i) = std::exp(-x);
  }
  return z;
}

SystemCoeffs assemble(const RootSystem& r, const Rational& k, const Point& z,
                      const std::optional<Rational>& a_override) {
  const int n = r.rank();
  if (z.size() != n) throw ValidationError("torus point has the wrong dimension");
  check_point(z);
  SystemCoeffs s;
  s.rank = n;
  s.c.assign(n, std::vector<Eigen::VectorXcd>(n, Eigen::VectorXcd::Zero(n)));
  s.s.assign(n, std::vector<Rational>(n));
  const double kd = k.to_double();
  for (const auto& d : root_data(r)) {
    cplx u = char_value(z, d.coeffs);
    if (std::abs(1.0 - u) < 1e-12) throw MirrorSingularity("point lies on a toric mirror");
    cplx f = phi(u);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double w = 0.5 * kd * static_cast<double>(d.coeffs[i] * d.coeffs[j]);
        if (w != 0.0) s.c[i][j] += (w * f) * d.coroot.cast<cplx>();
      }
  }
  Rational ak2 = theorem_constant(r, a_override) * k * k;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.s[i][j] = ak2 * r.inverse_gram()[i][j];
  return s;
}

Eigen::VectorXcd pair_coefficients(const SystemCoeffs& s, const Eigen::VectorXd& xi,
                                   const Eigen::VectorXd& eta) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.rank);
  for (int p = 0; p < s.rank; ++p)
    for (int q = 0; q < s.rank; ++q)
      if (xi(p) != 0.0 && eta(q) != 0.0) out += (xi(p) * eta(q)) * s.c[p][q];
  return out;
}

std::vector<std::vector<Rational>> phi_weights(const RootSystem& r, const Rational& k, int i, int j) {
  const int n = r.rank();
  if (i < 0 || j < 0 || i >= n || j >= n) throw ValidationError("basis index out of range");
  std::vector<std::vector<Rational>> out;
  for (const auto& c : r.positive_coefficients()) {
    Rational w = Rational(1, 2) * k * Rational(c[i] * c[j]);
    std::vector<Rational> row;
    for (int l = 0; l < n; ++l) {
      long long cor = 0;
      for (int m = 0; m < n; ++m) cor += r.gram()[l][m] * c[m];
      row.push_back(w * Rational(cor));
    }
    out.push_back(std::move(row));
  }
  return out;
}

Connection connection(const RootSystem& r, const Rational& k, const Point& z,
                      const std::optional<Rational>& a_override, bool with_derivatives) {
  const int n = r.rank();
  if (z.size() != n) throw ValidationError("torus point has the wrong dimension");
  check_point(z);
  Connection con;
  con.base = z;
  con.A.assign(n, Matrix::Zero(n + 1, n + 1));
  if (with_derivatives) con.dA.assign(n, std::vector<Matrix>(n, Matrix::Zero(n + 1, n + 1)));
  const double kd = k.to_double();
  const double ak2 = (theorem_constant(r, a_override) * k * k).to_double();
  for (int i = 0; i < n; ++i) {
    con.A[i](0, i + 1) = 1.0;
    for (int j = 0; j < n; ++j) con.A[i](j + 1, 0) = -ak2 * r.inverse_gram()[i][j].to_double();
  }
  for (const auto& d : root_data(r)) {
    cplx u = char_value(z, d.coeffs);
    if (std::abs(1.0 - u) < 1e-12) throw MirrorSingularity("point lies on a toric mirror");
    cplx f = phi(u);
    cplx df = 2.0 * u / ((1.0 - u) * (1.0 - u));  // u phi'(u)
    Eigen::RowVectorXcd cor = d.coroot.transpose().cast<cplx>();
    for (int i = 0; i < n; ++i) {
      if (d.coeffs[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (d.coeffs[j] == 0) continue;
        double w = 0.5 * kd * static_cast<double>(d.coeffs[i] * d.coeffs[j]);
        con.A[i].block(j + 1, 1, 1, n) -= (w * f) * cor;
        if (!with_derivatives) continue;
        for (int l = 0; l < n; ++l) {
          if (d.coeffs[l] == 0) continue;
          // theta_l phi(u) = -c_l u phi'(u)
          cplx dphi = -static_cast<double>(d.coeffs[l]) * df;
          con.dA[l][i].block(j + 1, 1, 1, n) -= (w * dphi) * cor;
        }
      }
    }
  }
  return con;
}

double flatness_residual(const RootSystem& r, const Rational& k, const Point& z,
                         const std::optional<Rational>& a_override) {
  Connection con = connection(r, k, z, a_override);
  const int n = r.rank();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix K = con.dA[i][j] - con.dA[j][i] + con.A[j] * con.A[i] - con.A[i] * con.A[j];
      worst = std::max(worst, K.cwiseAbs().maxCoeff());
    }
  return worst;
}

double flatness_residual_fd(const RootSystem& r, const Rational& k, const Point& z, double step) {
  const int n = r.rank();
  Connection con = connection(r, k, z, std::nullopt, false);
  std::vector<std::vector<Matrix>> dA(n, std::vector<Matrix>(n));
  for (int l = 0; l < n; ++l) {
    Point zp = z, zm = z;
    zp(l) *= std::exp(step);
    zm(l) *= std::exp(-step);
    Connection cp = connection(r, k, zp, std::nullopt, false);
    Connection cm = connection(r, k, zm, std::nullopt, false);
    for (int i = 0; i < n; ++i) dA[l][i] = -(cp.A[i] - cm.A[i]) / (2.0 * step);
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix K = dA[i][j] - dA[j][i] + con.A[j] * con.A[i] - con.A[i] * con.A[j];
      worst = std::max(worst, K.cwiseAbs().maxCoeff());
    }
  return worst;
}

Point reflect_point(const RootSystem& r, int i, const Point& z) {
  const int n = r.rank();
  if (i < 0 || i >= n) throw ValidationError("simple reflection index out of range");
  Point out = z;
  for (int j = 0; j < n; ++j) {
    long long c = r.gram()[j][i];
    out(j) = z(j) * std::pow(z(i), static_cast<double>(-c));
  }
  return out;
}

double w_invariance_residual(const RootSystem& r, const Rational& k, const Point& z, int i) {
  const int n = r.rank();
  if (i == -1) {
    SystemCoeffs a = assemble(r, k, z);
    SystemCoeffs b = assemble(r, k, z);
    double worst = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) worst = std::max(worst, (a.c[p][q] - b.c[p][q]).cwiseAbs().maxCoeff());
    return worst;
  }
  Point zi = reflect_point(r, i, z);
  SystemCoeffs at_z = assemble(r, k, z);
  SystemCoeffs at_s = assemble(r, k, zi);
  Eigen::MatrixXd C = cartan_d(r);
  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(n, n);
  S.col(i) -= C.col(i);
  Eigen::MatrixXd G(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) G(p, q) = r.inverse_gram()[p][q].to_double();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Eigen::VectorXcd lhs = pair_coefficients(at_s, S.col(a), S.col(b));
      Eigen::VectorXcd rhs = S.cast<cplx>() * at_z.c[a][b];
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      double form = S.col(a).dot(G * S.col(b)) - G(a, b);
      worst = std::max(worst, std::abs(form));
    }
  return worst;
}

Matrix transport(const RootSystem& r, const Rational& k, const TorusPath& path,
                 const TransportOptions& opt) {
  const int n = r.rank();
  const Eigen::Index N = n + 1;
  if (path.empty()) return Matrix::Identity(N, N);
  for (const auto& z : path)
    if (z.size() != n) throw ValidationError("torus point has the wrong dimension");
  auto clear = [&](const Point& z) {
    if (z.cwiseAbs().minCoeff() < opt.clearance)
      throw ValidationError("path comes within clearance of a coordinate hyperplane");
    if (mirror_distance(r, z) < opt.clearance)
      throw ValidationError("path comes within clearance of a toric mirror");
  };
  clear(path.front());
  if (opt.flatness_gate > 0 && flatness_residual(r, k, path.front()) > opt.flatness_gate)
    throw NumericError("connection is not flat at the path start");
  numeric::State y = to_state(Matrix::Identity(N, N));
  for (std::size_t s = 1; s < path.size(); ++s) {
    const Point& z0 = path[s - 1];
    Eigen::VectorXcd L = log_ratio(z0, path[s]);
    clear(log_point(z0, L, 0.5));
    clear(path[s]);
    if (L.cwiseAbs().maxCoeff() == 0.0) continue;
    auto rhs = [&](double t, const numeric::State& x, numeric::State& dx) {
      Connection con = connection(r, k, log_point(z0, L, t), std::nullopt, false);
      Matrix M = Matrix::Zero(N, N);
      for (int i = 0; i < n; ++i) M -= L(i) * con.A[i];
      Eigen::Map<const Matrix> F(x.data(), N, N);
      dx.resize(x.size());
      Eigen::Map<Matrix> dF(dx.data(), N, N);
      dF = M * F;
    };
    numeric::integrate_unit_interval(rhs, y, opt.tolerances);
  }
  return from_state(y, N);
}

Matrix continue_frame(const RootSystem& r, const Rational& k, const TorusPath& path,
                      const Matrix& frame, const TransportOptions& opt) {
  return transport(r, k, path, opt) * frame;
}

namespace {

// Loop around the mirror of alpha in log coordinates
// z = base * exp(-(s cor / 2 + i tw)), with tw orthogonal to alpha: the
// twist tw leaves h^-alpha alone and turns the other characters away from 1.
TorusPath twisted_loop(const Eigen::VectorXd& cor, const Eigen::VectorXd& tw, const Point& base, cplx u0,
                       int circle_points) {
  const cplx d = (u0 - 1.0) / std::abs(u0 - 1.0);
  const cplx c0 = 1.0 + 0.1 * d;
  auto zof = [&](cplx s, double twist) -> Point {
    return (base.array() * (-(s * cor.cast<cplx>().array() / 2.0) - cplx(0, twist) * tw.cast<cplx>().array()).exp())
        .matrix();
  };
  const cplx s0 = std::log(u0 / c0);
  constexpr int approach = 8;
  const bool twisted = tw.squaredNorm() > 0;
  TorusPath path;
  path.push_back(zof(0.0, 0.0));
  if (twisted)
    for (int j = 1; j < approach; ++j) path.push_back(zof(0.0, double(j) / (approach - 1)));
  const double tw_end = twisted ? 1.0 : 0.0;
  for (int j = 1; j < approach; ++j) path.push_back(zof(s0 * (double(j) / (approach - 1)), tw_end));
  const double ph0 = std::arg(d);
  cplx s = s0, c_prev = c0;
  for (int j = 1; j <= circle_points; ++j) {
    cplx c = 1.0 + 0.1 * std::polar(1.0, ph0 + kTwoPi * j / circle_points);
    s += std::log(c_prev / c);
    c_prev = c;
    path.push_back(j == circle_points ? zof(s0, tw_end) : zof(s, tw_end));
  }
  for (int j = approach - 2; j >= 0; --j) path.push_back(zof(s0 * (double(j) / (approach - 1)), tw_end));
  if (twisted)
    for (int j = approach - 2; j >= 0; --j) path.push_back(zof(0.0, double(j) / (approach - 1)));
  return path;
}

// Characters minus one along the path, sampled densely on each log-linear segment.
std::vector<cplx> character_trace(const TorusPath& path, const IntVector& beta) {
  constexpr int sub = 16;
  std::vector<cplx> w;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    Eigen::VectorXcd L = log_ratio(path[s], path[s + 1]);
    for (int j = 0; j < sub; ++j) w.push_back(char_value(log_point(path[s], L, double(j) / sub), beta) - 1.0);
  }
  w.push_back(char_value(path.back(), beta) - 1.0);
  return w;
}

// Smallest distance to another mirror, or -1 when the winding numbers are wrong.
double loop_clearance(const RootSystem& r, const IntVector& alpha, const TorusPath& path) {
  double closest = std::numeric_limits<double>::infinity();
  for (const auto& beta : r.positive_coefficients()) {
    auto w = character_trace(path, beta);
    double turns = winding(w);
    if (beta == alpha) {
      if (std::abs(turns - 1.0) > 1e-6) return -1.0;
      continue;
    }
    if (std::abs(turns) > 1e-6) return -1.0;
    for (auto v : w) closest = std::min(closest, std::abs(v));
  }
  return closest;
}

}  // namespace

TorusPath mirror_loop(const RootSystem& r, const IntVector& alpha, const Point& base,
                      int circle_points) {
  const int n = r.rank();
  if (static_cast<int>(alpha.size()) != n) throw ValidationError("root has the wrong dimension");
  const auto& pos = r.positive_coefficients();
  if (std::find(pos.begin(), pos.end(), alpha) == pos.end())
    throw ValidationError("alpha is not a positive root");
  Eigen::VectorXd cor = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd c(n);
  for (int l = 0; l < n; ++l) {
    c(l) = static_cast<double>(alpha[l]);
    for (int m = 0; m < n; ++m) cor(l) += static_cast<double>(r.gram()[l][m] * alpha[m]);
  }
  const cplx u0 = char_value(base, alpha);
  if (std::abs(u0 - 1.0) < 0.15) throw NumericError("base point too close to the mirror");

  constexpr double wanted = 5e-2;
  TorusPath best = twisted_loop(cor, Eigen::VectorXd::Zero(n), base, u0, circle_points);
  double best_clear = loop_clearance(r, alpha, best);
  if (best_clear >= wanted) return best;
  for (int j = 0; j < n && best_clear < wanted; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(n, j);
    e -= (c.dot(e) / c.squaredNorm()) * c;
    if (e.norm() < 1e-9) continue;
    e /= e.norm();
    for (double t : {0.5, -0.5, 1.0, -1.0, 1.5, -1.5, 2.0, -2.0}) {
      TorusPath cand = twisted_loop(cor, t * e, base, u0, circle_points);
      double cl = loop_clearance(r, alpha, cand);
      if (cl > best_clear) {
        best_clear = cl;
        best = std::move(cand);
      }
    }
  }
  if (best_clear < 0) throw NumericError("mirror loop encircles another mirror");
  if (best_clear < 1e-2) throw NumericError("mirror loop approaches another mirror");
  return best;
}

TorusPath coordinate_loop(const Point& base, int l, int points) {
  if (l < 0 || l >= base.size()) throw ValidationError("coordinate index out of range");
  TorusPath path;
  for (int j = 0; j <= points; ++j) {
    Point z = base;
    if (j < points) z(l) *= std::polar(1.0, -kTwoPi * j / points);
    path.push_back(z);
  }
  return path;
}

MirrorMonodromy mirror_monodromy(const RootSystem& r, const Rational& k, const Point& base,
                                 const IntVector& alpha, const TransportOptions& opt) {
  MirrorMonodromy out;
  out.alpha = alpha;
  out.M = transport(r, k, mirror_loop(r, alpha, base), opt);
  out.eigenvalues = Eigen::ComplexEigenSolver<Matrix>(out.M, false).eigenvalues();
  out.q_squared = std::polar(1.0, -2.0 * kTwoPi * k.to_double());
  const Eigen::Index N = out.M.rows();
  Matrix I = Matrix::Identity(N, N);
  Matrix rel = (out.M - I) * (out.M - out.q_squared * I);
  out.hecke_residual = rel.norm() / out.M.squaredNorm();
  return out;
}

InvariantForm invariant_form(const std::vector<Matrix>& generators, double null_tol) {
  if (generators.empty()) throw ValidationError("no generators");
  const Eigen::Index N = generators.front().rows();
  std::vector<Matrix> basis;
  for (Eigen::Index i = 0; i < N; ++i) {
    Matrix E = Matrix::Zero(N, N);
    E(i, i) = 1.0;
    basis.push_back(E);
  }
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = i + 1; j < N; ++j) {
      Matrix E = Matrix::Zero(N, N);
      E(i, j) = E(j, i) = 1.0;
      basis.push_back(E);
      Matrix F = Matrix::Zero(N, N);
      F(i, j) = cplx(0.0, 1.0);
      F(j, i) = cplx(0.0, -1.0);
      basis.push_back(F);
    }
  const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index block = 2 * N * N;
  Eigen::MatrixXd sys(block * static_cast<Eigen::Index>(generators.size()), dim);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const Matrix& M = generators[g];
    if (M.rows() != N || M.cols() != N) throw ValidationError("generators differ in size");
    for (Eigen::Index b = 0; b < dim; ++b) {
      Matrix D = M.adjoint() * basis[b] * M - basis[b];
      Eigen::Map<const Eigen::VectorXcd> v(D.data(), N * N);
      sys.block(g * block, b, N * N, 1) = v.real();
      sys.block(g * block + N * N, b, N * N, 1) = v.imag();
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  InvariantForm out;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= null_tol * top || top == 0.0) ++out.null_dimension;
  out.null_dimension += static_cast<int>(dim - sv.size());
  for (Eigen::Index i = std::max<Eigen::Index>(0, sv.size() - 3); i < sv.size(); ++i)
    out.singular_tail.push_back(sv(i));
  if (out.null_dimension != 1)
    throw FormDegenerate("invariant Hermitian forms span a space of dimension " +
                             std::to_string(out.null_dimension),
                         out.null_dimension);
  Eigen::VectorXd coef = svd.matrixV().col(dim - 1);
  Matrix H = Matrix::Zero(N, N);
  for (Eigen::Index b = 0; b < dim; ++b) H += coef(b) * basis[b];
  H = (H + H.adjoint()) / 2.0;
  H /= H.norm();
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  for (Eigen::Index i = 0; i < N; ++i) {
    double ev = es.eigenvalues()(i);
    if (ev > 1e-8) ++out.positive;
    if (ev < -1e-8) ++out.negative;
  }
  if (out.negative > out.positive) {
    H = -H;
    std::swap(out.positive, out.negative);
  }
  out.H = H;
  for (const auto& M : generators)
    out.residual = std::max(out.residual, (M.adjoint() * H * M - H).norm());
  return out;
}

std::vector<Matrix> monodromy_generators(const RootSystem& r, const Rational& k, const Point& base,
                                         const TransportOptions& opt) {
  const int n = r.rank();
  std::vector<Matrix> gens;
  for (int i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    gens.push_back(transport(r, k, mirror_loop(r, e, base), opt));
  }
  for (int l = 0; l < n; ++l) gens.push_back(transport(r, k, coordinate_loop(base, l), opt));
  return gens;
}

BallReport ball_check(const RootSystem& r, const Rational& k, const Point& base,
                      const std::vector<Point>& samples, const TransportOptions& opt) {
  const int n = r.rank();
  BallReport rep;
  rep.form = invariant_form(monodromy_generators(r, k, base, opt));
  Matrix Hi = rep.form.H.inverse();
  rep.base_value = Hi(0, 0).real();
  if (std::abs(rep.base_value) < 1e-10 * Hi.norm())
    throw NumericError("base evaluation vector is isotropic for the invariant form");
  if (rep.base_value > 0) {
    rep.form.H = -rep.form.H;
    Hi = -Hi;
    rep.base_value = -rep.base_value;
    std::swap(rep.form.positive, rep.form.negative);
  }
  rep.lorentz = rep.form.positive == n && rep.form.negative == 1;
  rep.all_negative = true;
  for (const auto& z : samples) {
    Matrix Phi = transport(r, k, {base, z}, opt);
    Eigen::RowVectorXcd w = Phi.row(0);
    double v = (w * Hi * w.adjoint())(0, 0).real();
    rep.samples.push_back({z, v});
    if (!(v < 0)) rep.all_negative = false;
  }
  return rep;
}

std::vector<Point> sample_near(const RootSystem& r, const Point& base, int count, std::uint64_t seed,
                               double sx, double sy, double clearance) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nx(0.0, sx), ny(0.0, sy);
  const int n = r.rank();
  std::vector<Point> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * std::max(count, 1)) throw NumericError("could not sample off-mirror points");
    Eigen::VectorXcd L(n);
    for (int i = 0; i < n; ++i) {
      double x = nx(rng);
      double y = ny(rng);
      L(i) = cplx(x, y);
    }
    bool ok = true;
    for (int j = 1; j <= 8 && ok; ++j)
      ok = mirror_distance(r, log_point(base, L, j / 8.0)) >= clearance;
    if (ok) out.push_back(log_point(base, L, 1.0));
  }
  return out;
}

std::vector<Point> sample_generic(const RootSystem& r, int count, std::uint64_t seed, double clearance) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> radial(0.0, 0.5);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const int n = r.rank();
  std::vector<Point> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * std::max(count, 1)) throw NumericError("could not sample off-mirror points");
    Point z(n);
    for (int i = 0; i < n; ++i) {
      double x = radial(rng);
      double t = angle(rng);
      z(i) = std::exp(cplx(x, t));
    }
    if (mirror_distance(r, z) >= clearance) out.push_back(z);
  }
  return out;
}

bool boundary_unreliable(const RootSystem& r, const Rational& k) {
  Rational m = roots::hyperbolic_exponent(r);
  return k <= m / Rational(50) || k >= m * Rational(49, 50);
}

}  // namespace schwarz_atlas::torus
