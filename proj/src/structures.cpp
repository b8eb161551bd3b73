#include "stableforms/structures.hpp"

#include <cmath>

namespace sf {

namespace {

using cd = std::complex<double>;

Form omega6() { return Form::e(6, {5, 6}) + Form::e(6, {1, 4}) + Form::e(6, {3, 2}); }

Form rho6() {
  return Form::e(6, {1, 2, 5}) - Form::e(6, {3, 4, 5}) + Form::e(6, {1, 3, 6}) - Form::e(6, {4, 2, 6});
}

Form e7() { return Form::e(7, {7}); }

}  // namespace

Orientation normal_orientation() { return Orientation::reversed(); }

Form lift(const Form& a, int n) {
  if (n < a.dim()) throw InputError("lift: target dimension is smaller");
  Form out(n, a.degree());
  const auto& B = basis(a.dim(), a.degree());
  for (std::size_t k = 0; k < B.size(); ++k) out.at(B[k]) = a[k];
  return out;
}

Form restrict_to(const Form& a, int n) {
  if (n > a.dim()) throw InputError("restrict_to: target dimension is larger");
  Form out(n, a.degree());
  const auto& B = basis(n, a.degree());
  for (std::size_t k = 0; k < B.size(); ++k) out[k] = a.at(B[k]);
  return out;
}

Form su3_normal_rho_hat() {
  return Form::e(6, {3, 4, 6}) - Form::e(6, {1, 2, 6}) + Form::e(6, {1, 3, 5}) - Form::e(6, {4, 2, 5});
}

G2NormalForms g2_normal_forms() {
  const Form w = omega6();
  const Form sigma = wedge(w, w) * 0.5;
  return {wedge(e7(), lift(w, 7)) + lift(rho6(), 7),
          wedge(e7(), lift(su3_normal_rho_hat(), 7)) + lift(sigma, 7)};
}

SU3Pair make_su3_pair(const Form& rho, const Form& sigma, Orientation o) {
  if (rho.dim() != 6 || rho.degree() != 3 || sigma.dim() != 6 || sigma.degree() != 4)
    throw InputError("an SU(3) pair is a 3-form and a 4-form on R^6");
  return {rho, sigma, dual_form_closed(sigma, o) * 2.0, o};
}

SU3Pair su3_normal_pair() {
  const Form w = omega6();
  return make_su3_pair(rho6(), wedge(w, w) * 0.5, normal_orientation());
}

Eigen::MatrixXd su3_metric(const SU3Pair& pair) {
  const Eigen::MatrixXd I = acs_from_rho(pair.rho, pair.orient);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(6, 6);
  const auto& B = basis(6, 2);
  for (std::size_t k = 0; k < B.size(); ++k) {
    const auto ij = B[k].indices();
    W(ij[0], ij[1]) = pair.omega[k];
    W(ij[1], ij[0]) = -pair.omega[k];
  }
  const Eigen::MatrixXd g = I.transpose() * W;
  return 0.5 * (g + g.transpose());
}

CompatReport check_compat(const SU3Pair& pair) {
  const VolumeResult vr = volume(pair.rho);
  const VolumeResult vs = volume(pair.sigma);
  if (vr.cls == StabilityClass::NotStable || vs.cls == StabilityClass::NotStable)
    throw DomainError("check_compat: both forms must be stable");
  CompatReport r;
  r.primitive_residual = wedge(pair.omega, pair.rho).max_abs();
  r.primitive = r.primitive_residual <= 1e-10 * (1.0 + pair.omega.max_abs() * pair.rho.max_abs());
  r.c = vr.phi / vs.phi;
  if (vr.cls == StabilityClass::SL3C) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(su3_metric(pair));
    r.positive_type = es.eigenvalues().minCoeff() > 0;
  }
  return r;
}

std::array<double, 4> volume_chain(const SU3Pair& pair) {
  const Orientation o = pair.orient;
  const Form w3 = wedge(wedge(pair.omega, pair.omega), pair.omega);
  const Form rho_hat = dual_form_closed(pair.rho, o);
  return {top_coeff(w3, o) / 6.0, top_pair(rho_hat, pair.rho, o) / 4.0, volume(pair.rho).phi / 2.0,
          volume(pair.sigma).phi};
}

Form assemble_7d(const SU3Pair& pair, double dt_scale) {
  const CompatReport c = check_compat(pair);
  if (!c.primitive || std::abs(*c.c - 2.0) > 1e-8 * 2.0)
    throw DomainError("assemble_7d: pair is not compatible (need ω∧ρ = 0 and φ(ρ) = 2φ(σ))");
  return wedge(e7(), lift(pair.omega, 7)) * dt_scale + lift(pair.rho, 7);
}

Form assemble_7d_star(const SU3Pair& pair, double dt_scale) {
  const Form rho_hat = dual_form_closed(pair.rho, pair.orient);
  return wedge(e7(), lift(rho_hat, 7)) * dt_scale + lift(pair.sigma, 7);
}

SU3Pair decompose_7d(const Form& phi) {
  if (phi.dim() != 7 || phi.degree() != 3) throw InputError("decompose_7d needs a 3-form on R^7");
  const Form w = restrict_to(contract_basis(6, phi), 6);
  const Form rho = restrict_to(phi, 6);
  const double top = wedge(wedge(w, w), w)[0];
  if (top == 0.0) throw DomainError("decompose_7d: ω is degenerate");
  const Orientation o{top > 0 ? 1 : -1};
  return make_su3_pair(rho, wedge(w, w) * 0.5, o);
}

bool is_su3(const SU3Matrix& A, double tol) {
  const double scale = 1.0 + A.cwiseAbs().maxCoeff();
  return (A + A.adjoint()).cwiseAbs().maxCoeff() <= tol * scale && std::abs(A.trace()) <= tol * scale;
}

double su3_inner(const SU3Matrix& A, const SU3Matrix& B) { return -(A * B).trace().real(); }

double su3_norm(const SU3Matrix& A) { return std::sqrt(su3_inner(A, A)); }

const std::array<SU3Matrix, 8>& su3_basis() {
  static const std::array<SU3Matrix, 8> X = [] {
    const cd i(0, 1);
    std::array<SU3Matrix, 8> lam;
    for (auto& m : lam) m.setZero();
    lam[0](0, 1) = lam[0](1, 0) = 1;
    lam[1](0, 1) = -i;
    lam[1](1, 0) = i;
    lam[2](0, 0) = 1;
    lam[2](1, 1) = -1;
    lam[3](0, 2) = lam[3](2, 0) = 1;
    lam[4](0, 2) = -i;
    lam[4](2, 0) = i;
    lam[5](1, 2) = lam[5](2, 1) = 1;
    lam[6](1, 2) = -i;
    lam[6](2, 1) = i;
    lam[7](0, 0) = lam[7](1, 1) = 1.0 / std::sqrt(3.0);
    lam[7](2, 2) = -2.0 / std::sqrt(3.0);
    for (auto& m : lam) m *= i / std::sqrt(2.0);
    return lam;
  }();
  return X;
}

SU3Matrix su3_from_coords(const Eigen::VectorXd& c) {
  if (c.size() != 8) throw InputError("su(3) coordinates have 8 entries");
  SU3Matrix A = SU3Matrix::Zero();
  for (int a = 0; a < 8; ++a) A += c[a] * su3_basis()[a];
  return A;
}

Eigen::VectorXd su3_coords(const SU3Matrix& A) {
  Eigen::VectorXd c(8);
  for (int a = 0; a < 8; ++a) c[a] = su3_inner(su3_basis()[a], A);
  return c;
}

SU3Matrix su3_cross(const SU3Matrix& A, const SU3Matrix& B) {
  if (!is_su3(A) || !is_su3(B)) throw InputError("su3_cross: inputs must be traceless skew-hermitian");
  const cd w(0.5, std::sqrt(3.0) / 2.0);
  const cd i(0, 1);
  return w * A * B - std::conj(w) * B * A - (i / std::sqrt(3.0)) * (A * B).trace() * SU3Matrix::Identity();
}

Form su3_structure_3form() {
  const auto& X = su3_basis();
  Form rho(8, 3);
  const auto& B = basis(8, 3);
  for (std::size_t k = 0; k < B.size(); ++k) {
    const auto t = B[k].indices();
    const double v = su3_inner(X[t[0]] * X[t[1]] - X[t[1]] * X[t[0]], X[t[2]]);
    rho[k] = std::abs(v) < 1e-14 ? 0.0 : v;
  }
  return rho;
}

Form reference_form(int n, int p) {
  if (!volume_supported(n, p)) throw InputError("no reference form for this (n, p)");
  if (p == 2) {
    Form w(n, 2);
    for (int i = 0; i < n / 2; ++i) w += Form::e(n, {2 * i + 1, 2 * i + 2});
    return w;
  }
  if (n % 2 == 0 && p == n - 2) {
    const Form w = reference_form(n, 2);
    Form r = Form::scalar(n, 1.0);
    double f = 1.0;
    for (int k = 1; k <= n / 2 - 1; ++k) {
      r = wedge(r, w);
      f *= k;
    }
    return r * (1.0 / f);
  }
  if (n == 6) return rho6();
  if (n == 7) return p == 3 ? g2_normal_forms().phi : g2_normal_forms().star_phi;
  const Form r = su3_structure_3form();
  return p == 3 ? r : hodge_star(r);
}

Eigen::MatrixXd random_gl_plus(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  Eigen::MatrixXd A(n, n);
  // resample until reasonably conditioned
  for (;;) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = (i == j ? 1.0 : 0.0) + 0.35 * N(rng);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
    if (sv.minCoeff() >= 0.25 && sv.maxCoeff() / sv.minCoeff() <= 10.0) break;
  }
  if (A.determinant() < 0) A.col(0) *= -1.0;
  return A;
}

Form random_stable_form(int n, int p, std::mt19937_64& rng) {
  return pullback(random_gl_plus(n, rng), reference_form(n, p));
}

}  // namespace sf
