#include "stableforms/flows.hpp"

#include <cmath>

#include <boost/math/tools/toms748_solve.hpp>

namespace sf {

namespace {

void require_s7_domain(const Vec4& y) {
  if (!(y[3] > 0.0)) throw DomainError("S7 state left the domain: y4 <= 0");
  if (y[0] == 0.0 || y[1] == 0.0 || y[2] == 0.0) throw DomainError("S7 state is singular: some y_i = 0");
}

Vec3 s7_k(const Vec4& x) {
  return {2 * (x[3] + x[0] - x[1] - x[2]), 2 * (x[3] + x[1] - x[2] - x[0]), 2 * (x[3] + x[2] - x[0] - x[1])};
}

// ∂k_i/∂x_j
Eigen::Matrix<double, 3, 4> s7_dk() {
  Eigen::Matrix<double, 3, 4> D;
  D << 2, -2, -2, 2, -2, 2, -2, 2, -2, -2, 2, 2;
  return D;
}

}  // namespace

Eigen::Matrix4d gram_q() {
  Eigen::Matrix4d Q;
  Q << 2, -2, -2, 1, -2, 2, -2, 1, -2, -2, 2, 1, 1, 1, 1, 0;
  return Q;
}

double s7_volume(const S7State& s) { return s.y[0] * s.y[1] * s.y[2] * std::pow(s.y[3], 4); }

Vec4 s7_rhs_y(const S7State& s) {
  const Vec4& y = s.y;
  require_s7_domain(y);
  Vec4 r;
  for (int i = 0; i < 3; ++i) {
    const double a = y[i], b = y[(i + 1) % 3], c = y[(i + 2) % 3];
    r[i] = -1.0 + (b * b + c * c - a * a) / (2 * b * c) + a * a / (2 * y[3] * y[3]);
  }
  r[3] = -(y[0] + y[1] + y[2]) / (4 * y[3]);
  return r;
}

S7State coord_map(const S7XState& xs, int y1_sign) {
  const Vec4& x = xs.x;
  const double S = x[0] + x[1] + x[2];
  if (!(S < 0.0)) throw DomainError("coord_map: need x1 + x2 + x3 < 0");
  const Vec3 k = s7_k(x);
  if (k[0] == 0.0 || k[1] == 0.0 || k[2] == 0.0) throw DomainError("coord_map: some k_i = 0 (orbit boundary)");
  const double y4 = std::pow(-2.0 * S, 0.25);
  const double y4sq = y4 * y4;
  const double y1sq = k[1] * k[2] / (k[0] * y4sq);
  if (!(y1sq > 0.0)) throw DomainError("coord_map: k1 k2 k3 <= 0, no real y");
  const double y1 = (y1_sign < 0 ? -1.0 : 1.0) * std::sqrt(y1sq);
  return {Vec4(y1, k[2] / (y1 * y4sq), k[1] / (y1 * y4sq), y4)};
}

S7XState coord_map_inverse(const S7State& s) {
  const Vec4& y = s.y;
  require_s7_domain(y);
  const double y4sq = y[3] * y[3];
  const Vec3 k(y[1] * y[2] * y4sq, y[2] * y[0] * y4sq, y[0] * y[1] * y4sq);
  const double S = -0.5 * y4sq * y4sq;
  const double x4 = (k.sum() + 2 * S) / 6.0;
  Vec4 x;
  for (int i = 0; i < 3; ++i) x[i] = (k[i] - 2 * x4 + 2 * S) / 4.0;
  x[3] = x4;
  return {x};
}

double s7_volume_x(const S7XState& x, int y1_sign) { return s7_volume(coord_map(x, y1_sign)); }

Vec4 s7_volume_gradient_x(const S7XState& xs, int y1_sign) {
  const double V = s7_volume_x(xs, y1_sign);
  const Vec3 k = s7_k(xs.x);
  const double S = xs.x[0] + xs.x[1] + xs.x[2];
  const auto D = s7_dk();
  Vec4 g;
  for (int j = 0; j < 4; ++j) {
    double t = 0.0;
    for (int i = 0; i < 3; ++i) t += 0.5 * D(i, j) / k[i];
    if (j < 3) t += 0.25 / S;
    g[j] = V * t;
  }
  return g;
}

Vec4 s7_rhs_x(const S7XState& x, int y1_sign) {
  const Vec4 g = s7_volume_gradient_x(x, y1_sign);
  const Vec4 grad_c(g[0], g[1], g[2], 0.5 * g[3]);
  const Vec4 cdot = gram_q().fullPivLu().solve(grad_c);
  return {cdot[0], cdot[1], cdot[2], 0.5 * cdot[3]};
}

Vec2 s7_symmetric_rhs(const Vec2& v) {
  const double y = v[0], y4 = v[1];
  if (!(y4 > 0.0)) throw DomainError("symmetric S7 state left the domain: y4 <= 0");
  return {-0.5 + y * y / (2 * y4 * y4), -0.75 * y / y4};
}

double s7_symmetric_closed_form(double c, double s) {
  if (!(s > 0.0)) throw DomainError("closed form needs s > 0");
  const double y2 = 0.4 * s + c * std::pow(s, -2.0 / 3.0);
  if (!(y2 > 0.0)) throw DomainError("closed form gives y^2 <= 0");
  return y2;
}

double s7_symmetric_fit_c(const Vec2& v) {
  const double s = v[1] * v[1];
  return (v[0] * v[0] - 0.4 * s) * std::pow(s, 2.0 / 3.0);
}

SquashedS7 squashed_s7(double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw InputError("squashed_s7: lambda must be nonzero");
  const double y = -3.0 / (10.0 * lambda);
  const double y4sq = 9.0 / (40.0 * lambda * lambda);
  return {{Vec4(y, y, y, std::sqrt(y4sq))}, y, y4sq};
}

Form reconstruct_s7(const S7State& s) {
  const Vec4& y = s.y;
  require_s7_domain(y);
  const double y4sq = y[3] * y[3];
  const Vec3 k(y[1] * y[2] * y4sq, y[2] * y[0] * y4sq, y[0] * y[1] * y4sq);
  const double S = -0.5 * y4sq * y4sq;
  auto v = [](int i, int j) { return Form::e(7, {i, j}); };
  auto a = [](int i, int j) { return Form::e(7, {4 + i, 4 + j}); };
  const Form w1 = v(4, 3) + v(1, 2);
  const Form w2 = v(1, 3) + v(2, 4);
  const Form w3 = v(2, 3) + v(4, 1);
  return wedge(w1, w1) * S + wedge(a(2, 3), w1) * k[0] + wedge(a(3, 1), w2) * k[1] + wedge(a(1, 2), w3) * k[2];
}

Trajectory<Vec4> integrate_s7(const S7State& s0, const IntegratorConfig& cfg) {
  return integrate([](double, const Vec4& y) { return s7_rhs_y({y}); }, s0.y, cfg);
}

Trajectory<Vec4> integrate_s7_x(const S7XState& x0, int y1_sign, const IntegratorConfig& cfg) {
  return integrate([y1_sign](double, const Vec4& x) { return s7_rhs_x({x}, y1_sign); }, x0.x, cfg);
}

Trajectory<Vec2> integrate_s7_symmetric(const Vec2& yy4, const IntegratorConfig& cfg) {
  return integrate([](double, const Vec2& v) { return s7_symmetric_rhs(v); }, yy4, cfg);
}

double s3s3_rho_volume_sq(const Vec3& x) {
  return (1 + x[0] + x[1] + x[2]) * (x[1] + x[2] - x[0] - 1) * (x[2] + x[0] - x[1] - 1) *
         (x[0] + x[1] - x[2] - 1);
}

double s3s3_sigma_volume_sq(const Vec3& y) { return y[0] * y[1] * y[2]; }

double s3s3_hamiltonian(const S3S3State& s) { return 4 * s3s3_sigma_volume_sq(s.y) - s3s3_rho_volume_sq(s.x); }

std::pair<Vec3, Vec3> s3s3_rhs(const S3S3State& s) {
  const Vec3& x = s.x;
  const Vec3& y = s.y;
  const double f[4] = {1 + x[0] + x[1] + x[2], x[1] + x[2] - x[0] - 1, x[2] + x[0] - x[1] - 1,
                       x[0] + x[1] - x[2] - 1};
  const double df[4][3] = {{1, 1, 1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
  Vec3 xd, yd;
  for (int i = 0; i < 3; ++i) {
    xd[i] = 4 * y[(i + 1) % 3] * y[(i + 2) % 3];
    double dP = 0.0;
    for (int a = 0; a < 4; ++a) {
      double prod = df[a][i];
      for (int b = 0; b < 4; ++b)
        if (b != a) prod *= f[b];
      dP += prod;
    }
    yd[i] = dP;
  }
  return {xd, yd};
}

std::pair<Form, Form> reconstruct_s3s3(const S3S3State& s) {
  auto e = [](std::initializer_list<int> idx) { return Form::e(6, idx); };
  // σ_i -> e_i, Σ_i -> e_{i+3}
  Form rho = e({1, 2, 3}) - e({4, 5, 6});
  const int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  Form sigma(6, 4);
  for (const auto& c : cyc) {
    const int i = c[0], j = c[1], k = c[2];
    rho += (e({i, j + 3, k + 3}) - e({j, k, i + 3})) * s.x[i - 1];
    sigma += e({j, j + 3, k, k + 3}) * s.y[i - 1];
  }
  return {rho, sigma};
}

S3S3State bryant_salamon_state(double x) {
  const double r = (1 + 3 * x) * std::pow(x - 1, 3);
  if (!(r > 0.0)) throw DomainError("symmetric H = 0 locus needs x < -1/3 or x > 1");
  const double y = std::cbrt(r / 4.0);
  return {Vec3::Constant(x), Vec3::Constant(y)};
}

S3S3Vec pack(const S3S3State& s) {
  S3S3Vec v;
  v << s.x, s.y;
  return v;
}

S3S3State unpack(const S3S3Vec& v) { return {v.head<3>(), v.tail<3>()}; }

Trajectory<S3S3Vec> integrate_s3s3(const S3S3State& s0, const IntegratorConfig& cfg) {
  return integrate(
      [](double, const S3S3Vec& v) {
        const auto [xd, yd] = s3s3_rhs(unpack(v));
        S3S3Vec r;
        r << xd, yd;
        return r;
      },
      pack(s0), cfg);
}

S3S3State from_frame_coefficients(const Vec3& A, const Vec3& B) {
  S3S3State s;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    s.x[i] = A[i] * A[j] * A[k] + A[i] * A[j] * B[k] + A[k] * B[i] * B[j] - A[i] * B[j] * B[k];
    s.y[i] = 4 * A[j] * B[j] * A[k] * B[k];
  }
  return s;
}

WeakSU3Point weak_su3_critical(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("weak_su3_critical: need c > 0");
  const double r3 = std::sqrt(3.0);
  // 12 y^{1/2} = μ x and 6√3 x = μ y with x = c/y reduce to this.
  auto f = [&](double y) { return 2 * std::pow(y, 1.5) - r3 * c * c / (y * y); };
  double lo = 1.0, hi = 1.0;
  while (f(lo) >= 0) lo /= 2;
  while (f(hi) <= 0) hi *= 2;
  std::uintmax_t iters = 200;
  const auto br = boost::math::tools::toms748_solve(f, lo, hi, f(lo), f(hi),
                                                    boost::math::tools::eps_tolerance<double>(52), iters);
  const double y = 0.5 * (br.first + br.second);
  const double x = c / y;
  return {x, y, 6 * r3 * x / y};
}

}  // namespace sf
