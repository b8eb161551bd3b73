#pragma once

#include <array>
#include <complex>
#include <optional>
#include <random>

#include "stableforms/stability.hpp"

namespace sf {

// The normal forms below are positively oriented for −e1∧…∧en.
Orientation normal_orientation();

struct G2NormalForms {
  Form phi;       // e7∧ω + ρ
  Form star_phi;  // e7∧ρ̂ + σ = ∗φ in the normal orientation
};
G2NormalForms g2_normal_forms();

struct SU3Pair {
  Form rho;    // 3-form on R^6
  Form sigma;  // 4-form on R^6
  Form omega;  // 2σ̂
  Orientation orient;
};

SU3Pair make_su3_pair(const Form& rho, const Form& sigma, Orientation o);
// ω = e5e6 + e1e4 + e3e2, ρ = e1e2e5 − e3e4e5 + e1e3e6 − e4e2e6, σ = ω²/2.
SU3Pair su3_normal_pair();
Form su3_normal_rho_hat();  // e3e4e6 − e1e2e6 + e1e3e5 − e4e2e5

struct CompatReport {
  bool primitive = false;
  double primitive_residual = 0.0;  // max |ω∧ρ|
  std::optional<double> c;          // φ(ρ)/φ(σ)
  bool positive_type = false;
};

CompatReport check_compat(const SU3Pair& pair);

// Hermitian metric g(X, Y) = ω(IX, Y) with I from ρ.
Eigen::MatrixXd su3_metric(const SU3Pair& pair);

// (⅙ω³, ¼ρ̂∧ρ, ½φ(ρ), φ(σ)), top coefficients read in the pair's orientation.
std::array<double, 4> volume_chain(const SU3Pair& pair);

// φ = dt_scale·e7∧ω + ρ on R^7 = R^6 ⊕ R e7.
Form assemble_7d(const SU3Pair& pair, double dt_scale);
// dt_scale·e7∧ρ̂ + σ, the Hodge dual of assemble_7d in the pair's orientation.
Form assemble_7d_star(const SU3Pair& pair, double dt_scale);
// Splits along e7: φ = e7∧ω + ρ, σ = ω²/2, orientation chosen so ω³ > 0.
SU3Pair decompose_7d(const Form& phi);

Form lift(const Form& a, int n);      // same coefficients, larger ambient dimension
Form restrict_to(const Form& a, int n);  // drops every term touching e_{n+1}..

using SU3Matrix = Eigen::Matrix3cd;

bool is_su3(const SU3Matrix& A, double tol = 1e-10);
double su3_inner(const SU3Matrix& A, const SU3Matrix& B);  // −tr(AB)
double su3_norm(const SU3Matrix& A);
// i·λ_a/√2 with the Gell-Mann matrices λ_a; orthonormal for −tr(AB).
const std::array<SU3Matrix, 8>& su3_basis();
SU3Matrix su3_from_coords(const Eigen::VectorXd& c);
Eigen::VectorXd su3_coords(const SU3Matrix& A);
SU3Matrix su3_cross(const SU3Matrix& A, const SU3Matrix& B);
// ρ(X, Y, Z) = ⟨[X, Y], Z⟩ on su3_basis().
Form su3_structure_3form();

// Representative of the open orbit for each supported (n, p).
Form reference_form(int n, int p);
// Pullback of reference_form by a random matrix with positive determinant.
Form random_stable_form(int n, int p, std::mt19937_64& rng);
Eigen::MatrixXd random_gl_plus(int n, std::mt19937_64& rng);

}  // namespace sf
