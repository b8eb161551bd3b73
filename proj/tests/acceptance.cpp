// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "stableforms/flows.hpp"
#include "stableforms/structures.hpp"

using namespace sf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double stddev(const std::vector<double>& v) {
  double m = 0, s = 0;
  for (double x : v) m += x;
  m /= v.size();
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / v.size());
}

double rel_err(const Form& a, const Form& b) { return max_abs_diff(a, b) / b.max_abs(); }

// top coefficient of a∧b via the slow oracle wedge
double oracle_pair(const Form& a, const Form& b) { return oracle::wedge(a, b)[0]; }

IntegratorConfig rkf(double t1) {
  IntegratorConfig c;
  c.t1 = t1;
  return c;
}

// 1. Euler identity ρ̂∧ρ = (n/p)φ(ρ)
Outcome ac1() {
  const std::vector<std::pair<int, int>> cases = {{4, 2}, {6, 2}, {8, 2}, {6, 4}, {8, 6},
                                                  {6, 3}, {7, 3}, {7, 4}, {8, 3}, {8, 5}};
  std::mt19937_64 rng(101);
  double worst_num = 0, worst_closed = 0;
  for (auto [n, p] : cases)
    for (int t = 0; t < 20; ++t) {
      const Form rho = random_stable_form(n, p, rng);
      const double target = static_cast<double>(n) / p * volume(rho).phi;
      worst_num = std::max(worst_num, std::abs(oracle_pair(dual_form_numeric(rho), rho) - target) / target);
      worst_closed = std::max(worst_closed, std::abs(oracle_pair(dual_form_closed(rho), rho) - target) / target);
    }
  return {worst_num < 1e-6 && worst_closed < 1e-10,
          "max rel residual numeric " + fmt("%.2e", worst_num) + " (tol 1e-6), closed " +
              fmt("%.2e", worst_closed) + " (tol 1e-10)"};
}

// 2. normal-form chain and the normal G2 metric
Outcome ac2() {
  const SU3Pair p = su3_normal_pair();
  const Orientation o = p.orient;
  const double phi_sigma = volume(p.sigma).phi;
  const double w3 = oracle_pair(oracle::wedge(p.omega, p.omega), p.omega) * o.sign / 6.0;
  const double rr = oracle_pair(dual_form_closed(p.rho, o), p.rho) * o.sign / 4.0;
  const double half = volume(p.rho).phi / 2.0;
  const double chain = std::max({std::abs(w3 - phi_sigma), std::abs(rr - phi_sigma), std::abs(half - phi_sigma)});
  const double g = (metric_from_form(g2_normal_forms().phi).g - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff();
  return {chain < 1e-12 && g < 1e-10 && phi_sigma > 0,
          "chain residual " + fmt("%.2e", chain) + " (tol 1e-12), metric error " + fmt("%.2e", g) + " (tol 1e-10)"};
}

// 3. closed vs numeric duals; Ω = ρ + iρ̂ killed by X + iIX
Outcome ac3() {
  std::mt19937_64 rng(103);
  double worst = 0;
  for (auto [n, p] : std::vector<std::pair<int, int>>{{7, 3}, {7, 4}, {8, 3}})
    for (int t = 0; t < 20; ++t) {
      const Form rho = random_stable_form(n, p, rng);
      worst = std::max(worst, rel_err(dual_form_numeric(rho), dual_form_closed(rho)));
    }
  double ann = 0;
  for (int t = 0; t < 20; ++t) {
    const Form rho = random_stable_form(6, 3, rng);
    const Form rh = dual_form_numeric(rho);
    const Eigen::MatrixXd I = acs_from_rho(rho);
    for (int k = 0; k < 6; ++k) {
      const Eigen::VectorXd X = Eigen::MatrixXd::Identity(6, 6).col(k), IX = I * X;
      // real and imaginary parts of ι(X + iIX)(ρ + iρ̂)
      ann = std::max(ann, (contract(X, rho) - contract(IX, rh)).max_abs() / rho.max_abs());
      ann = std::max(ann, (contract(X, rh) + contract(IX, rho)).max_abs() / rho.max_abs());
    }
  }
  return {worst < 1e-6 && ann < 1e-8, "max rel dual error " + fmt("%.2e", worst) +
                                          " (tol 1e-6), 6d annihilation " + fmt("%.2e", ann) + " (tol 1e-8)"};
}

// 4. symmetric S⁷ flow lies on y² = (2/5)s + c s^{−2/3}
Outcome ac4() {
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> U(0.3, 1.5);
  double worst = 0;
  bool complete = true;
  for (int t = 0; t < 10; ++t) {
    const auto tr = integrate_s7_symmetric(Vec2(-U(rng), U(rng)), rkf(1.0));
    complete = complete && tr.complete;
    std::vector<double> cs;
    for (const Vec2& v : tr.y) cs.push_back(s7_symmetric_fit_c(v));
    worst = std::max(worst, stddev(cs));
  }
  return {complete && worst < 1e-6, "max stddev of fitted c " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

// 5. squashed S⁷
Outcome ac5() {
  double eq = 0, angle = 0;
  for (double l : {-3.0, -1.0, -0.1, 0.5, 2.0}) {
    const SquashedS7 p = squashed_s7(l);
    eq = std::max(eq, std::abs(l * p.y - (-0.5 + p.y * p.y / (2 * p.y4sq))));
    eq = std::max(eq, std::abs(4 * l * p.y4sq + 3 * p.y));
    const Vec4 r = s7_rhs_y(p.state);
    const Vec4 pos = p.state.y;
    // angle between the lines, by the well-conditioned half-angle formula
    const Vec4 u = r.normalized();
    const Vec4 v = (r.dot(pos) < 0 ? -1.0 : 1.0) * pos.normalized();
    angle = std::max(angle, 2 * std::atan2((u - v).norm(), (u + v).norm()));
  }
  return {eq < 1e-12 && angle < 1e-8,
          "equation residual " + fmt("%.2e", eq) + " (tol 1e-12), angle " + fmt("%.2e", angle) + " rad (tol 1e-8)"};
}

// 6. S³×S³ Hamiltonian flow
Outcome ac6() {
  std::mt19937_64 rng(106);
  std::normal_distribution<double> N(0.0, 0.3);
  double dH = 0;
  bool complete = true;
  for (int t = 0; t < 20; ++t) {
    const S3S3State s{Vec3(N(rng), N(rng), N(rng)), Vec3(N(rng), N(rng), N(rng))};
    const auto tr = integrate_s3s3(s, rkf(1.0));
    complete = complete && tr.complete;
    const double H0 = s3s3_hamiltonian(s);
    for (const auto& v : tr.y) dH = std::max(dH, std::abs(s3s3_hamiltonian(unpack(v)) - H0));
  }
  double bs = 0;
  for (double x0 : {-1.0, 1.2, 1.5}) {
    const auto tr = integrate_s3s3(bryant_salamon_state(x0), rkf(0.1));
    complete = complete && tr.complete;
    for (const auto& v : tr.y) bs = std::max(bs, std::abs(4 * std::pow(v[3], 3) - (1 + 3 * v[0]) * std::pow(v[0] - 1, 3)));
  }
  double sub = 0;
  for (int t = 0; t < 5; ++t) {
    const double a = N(rng), b = N(rng);
    const auto tr = integrate_s3s3({Vec3(N(rng), a, a), Vec3(N(rng), b, b)}, rkf(1.0));
    complete = complete && tr.complete;
    for (const auto& v : tr.y) sub = std::max({sub, std::abs(v[1] - v[2]), std::abs(v[4] - v[5])});
  }
  return {complete && dH < 1e-8 && bs < 1e-7 && sub < 1e-10,
          "|dH| " + fmt("%.2e", dH) + " (tol 1e-8), locus " + fmt("%.2e", bs) + " (tol 1e-7), subspace " +
              fmt("%.2e", sub) + " (tol 1e-10)"};
}

// 7. φ² of reconstructed forms against the coordinate polynomials
Outcome ac7() {
  std::mt19937_64 rng(107);
  std::normal_distribution<double> N(0.0, 0.3);
  std::uniform_real_distribution<double> U(0.3, 2.0);
  std::vector<double> rr, rs, r7;
  for (int t = 0; t < 20; ++t) {
    const S3S3State s{Vec3(3 + N(rng), 3 + N(rng), 3 + N(rng)), Vec3(U(rng), U(rng), U(rng))};
    const auto [rho, sigma] = reconstruct_s3s3(s);
    rr.push_back(std::pow(volume(rho).phi, 2) / s3s3_rho_volume_sq(s.x));
    rs.push_back(std::pow(volume(sigma).phi, 2) / s3s3_sigma_volume_sq(s.y));
    std::bernoulli_distribution B(0.5);
    Vec4 y;
    for (int i = 0; i < 3; ++i) y[i] = (B(rng) ? 1 : -1) * U(rng);
    y[3] = U(rng);
    r7.push_back(volume(reconstruct_s7({y})).phi / std::abs(s7_volume({y})));
  }
  const double a = stddev(rr), b = stddev(rs), c = stddev(r7);
  return {a < 1e-8 && b < 1e-8 && c < 1e-8, "ratio stddev rho " + fmt("%.2e", a) + ", sigma " + fmt("%.2e", b) +
                                                ", S7 " + fmt("%.2e", c) + " (tol 1e-8)"};
}

// 8. x and y flows commute with the coordinate map
Outcome ac8() {
  std::mt19937_64 rng(108);
  std::uniform_real_distribution<double> U(0.5, 1.5);
  std::bernoulli_distribution B(0.5);
  IntegratorConfig cfg;
  cfg.method = Method::RK4;
  cfg.t1 = 0.1;
  cfg.h = 1e-3;
  double worst = 0;
  bool complete = true;
  for (int t = 0; t < 20; ++t) {
    Vec4 y;
    for (int i = 0; i < 3; ++i) y[i] = (B(rng) ? 1 : -1) * U(rng);
    y[3] = U(rng);
    const int br = y[0] > 0 ? 1 : -1;
    const auto ty = integrate_s7({y}, cfg);
    const auto tx = integrate_s7_x(coord_map_inverse({y}), br, cfg);
    complete = complete && ty.complete && tx.complete && ty.t.size() == tx.t.size();
    if (!complete) break;
    for (std::size_t k = 0; k < ty.t.size(); ++k)
      worst = std::max(worst, (coord_map({tx.y[k]}, br).y - ty.y[k]).cwiseAbs().maxCoeff());
  }
  return {complete && worst < 1e-6, "max trajectory difference " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

// 9. weak SU(3) critical point
Outcome ac9() {
  double worst = 0;
  for (double c : {0.1, 1.0, 10.0}) {
    const WeakSU3Point p = weak_su3_critical(c);
    const double y = std::pow(std::sqrt(3.0) * c * c / 2, 2.0 / 7.0);
    worst = std::max({worst, std::abs(p.y - y) / y, std::abs(p.x - c / y) / (c / y)});
  }
  return {worst < 1e-10, "max rel error " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

// 10. su(3) cross product
Outcome ac10() {
  std::mt19937_64 rng(110);
  std::normal_distribution<double> N(0.0, 1.0);
  auto rnd = [&] {
    Eigen::VectorXd c(8);
    for (int a = 0; a < 8; ++a) c[a] = N(rng);
    return su3_from_coords(c);
  };
  std::vector<double> ratios;
  double closure = 0;
  for (int t = 0; t < 1000; ++t) {
    const SU3Matrix A = rnd(), B = rnd();
    const SU3Matrix C = su3_cross(A, B);
    closure = std::max({closure, (C + C.adjoint()).cwiseAbs().maxCoeff(), std::abs(C.trace())});
    ratios.push_back(su3_norm(C) / (su3_norm(A) * su3_norm(B)));
  }
  const double sd = stddev(ratios);
  return {sd < 1e-10 && closure < 1e-12,
          "ratio stddev " + fmt("%.2e", sd) + " (tol 1e-10), closure " + fmt("%.2e", closure) + " (tol 1e-12)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 euler identity", ac1},        {"AC2 normal-form chain", ac2},
      {"AC3 hodge consistency", ac3},     {"AC4 S7 closed form", ac4},
      {"AC5 squashed S7", ac5},           {"AC6 S3xS3 hamiltonian", ac6},
      {"AC7 coordinate volumes", ac7},    {"AC8 x-y flow commutation", ac8},
      {"AC9 weak SU(3) critical point", ac9}, {"AC10 su(3) cross product", ac10}};
  int failed = 0;
  for (const auto& [name, f] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
