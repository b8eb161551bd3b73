#pragma once

#include <utility>

#include "stableforms/exterior.hpp"
#include "stableforms/integrate.hpp"

namespace sf {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

// ---- S^7 (Spin(7)) --------------------------------------------------------

struct S7State {
  Vec4 y;  // y1, y2, y3, y4 with y1 y2 y3 != 0, y4 > 0
};

// Coefficients of ρ = Σ x_i d(α_i ω_i) + 2 x4 d(α1 α2 α3).
struct S7XState {
  Vec4 x;
};

// Inner products (u_i, u_j) in the coordinates c = (x1, x2, x3, 2 x4).
Eigen::Matrix4d gram_q();

double s7_volume(const S7State& s);  // y1 y2 y3 y4^4
Vec4 s7_rhs_y(const S7State& s);

// k_i = y_j y_k y4^2 = 2(x4 + x_i − x_j − x_k), y4^4 = −2(x1 + x2 + x3).
// y1_sign picks the branch: x only fixes (y1, y2, y3) up to an overall sign.
S7State coord_map(const S7XState& x, int y1_sign = 1);
S7XState coord_map_inverse(const S7State& s);

double s7_volume_x(const S7XState& x, int y1_sign = 1);
Vec4 s7_volume_gradient_x(const S7XState& x, int y1_sign = 1);  // ∂V/∂x
// Q ċ = ∇_c V with c = (x1, x2, x3, 2 x4).
Vec4 s7_rhs_x(const S7XState& x, int y1_sign = 1);

// y1 = y2 = y3 = y: ẏ = −1/2 + y²/(2 y4²), 2 y4 ẏ4 = −(3/2) y.
Vec2 s7_symmetric_rhs(const Vec2& yy4);
// With s = y4², y² = (2/5) s + c s^{−2/3}.
double s7_symmetric_closed_form(double c, double s);
double s7_symmetric_fit_c(const Vec2& yy4);

struct SquashedS7 {
  S7State state;
  double y = 0.0;
  double y4sq = 0.0;
};
// Critical point of V on Q(ρ, ρ) = const with multiplier λ: y = −3/(10λ), y4² = 9/(40λ²).
SquashedS7 squashed_s7(double lambda);

// The invariant 4-form on R^7 = span(v1..v4, α1..α3) at the given coordinates.
Form reconstruct_s7(const S7State& s);

Trajectory<Vec4> integrate_s7(const S7State& s0, const IntegratorConfig& cfg);
Trajectory<Vec4> integrate_s7_x(const S7XState& x0, int y1_sign, const IntegratorConfig& cfg);
Trajectory<Vec2> integrate_s7_symmetric(const Vec2& yy4, const IntegratorConfig& cfg);

// ---- S^3 x S^3 (G2) -------------------------------------------------------

struct S3S3State {
  Vec3 x;
  Vec3 y;
};

// (1+x1+x2+x3)(x2+x3−x1−1)(x3+x1−x2−1)(x1+x2−x3−1)
double s3s3_rho_volume_sq(const Vec3& x);
double s3s3_sigma_volume_sq(const Vec3& y);  // y1 y2 y3
double s3s3_hamiltonian(const S3S3State& s);  // 4 y1 y2 y3 − V(ρ)²
std::pair<Vec3, Vec3> s3s3_rhs(const S3S3State& s);

// Basis (σ1, σ2, σ3, Σ1, Σ2, Σ3) -> (e1..e6).
std::pair<Form, Form> reconstruct_s3s3(const S3S3State& s);

// Symmetric locus point with H = 0: 4y³ = (1 + 3x)(x − 1)³.
S3S3State bryant_salamon_state(double x);

using S3S3Vec = Eigen::Matrix<double, 6, 1>;
S3S3Vec pack(const S3S3State& s);
S3S3State unpack(const S3S3Vec& v);
Trajectory<S3S3Vec> integrate_s3s3(const S3S3State& s0, const IntegratorConfig& cfg);

// Coordinates of the orthonormal-frame ansatz A_j(σ_j − Σ_j), B_j(σ_j + Σ_j).
// Transcribed as printed; not cross-checked.
S3S3State from_frame_coefficients(const Vec3& A, const Vec3& B);

// ---- weak holonomy SU(3) --------------------------------------------------

struct WeakSU3Point {
  double x = 0.0;
  double y = 0.0;
  double mu = 0.0;  // Lagrange multiplier for the constraint x y = c
};
// Critical point of 8 y^{3/2} + 3√3 x² on x y = c.
WeakSU3Point weak_su3_critical(double c);

}  // namespace sf
