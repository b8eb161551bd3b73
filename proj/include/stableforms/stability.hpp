#pragma once

#include <string>

#include "stableforms/exterior.hpp"

namespace sf {

enum class StabilityClass { Symplectic, SL3C, G2, PSU3, NotStable, StableOtherRealForm };

std::string to_string(StabilityClass c);

struct VolumeResult {
  double phi = 0.0;  // coefficient of φ(ρ) on the positively oriented unit n-vector
  StabilityClass cls = StabilityClass::NotStable;
};

struct MetricResult {
  Eigen::MatrixXd g;
  double vol = 0.0;  // sqrt(det g)
  StabilityClass cls = StabilityClass::NotStable;
};

// (n, p) pairs with an open orbit handled here: (2m, 2), (2m, 2m-2), (6, 3),
// (7, 3), (7, 4), (8, 3), (8, 5).
bool volume_supported(int n, int p);

// K(v) = ι(v)ρ∧ρ read as a vector; the matrix picks up the sign of `o`.
DensityMap k_map(const Form& rho, Orientation o = {});

// Symmetric maps behind the 7d and 8d functionals (B: weight 1 for (7,3),
// H: weight 2 for (7,4), G: weight 2 for (8,3), H: weight 4 for (8,5)).
DensityMap g2_bilinear(const Form& rho);
DensityMap su3_bilinear(const Form& rho);

// Volume functional. Normalization: φ(ω) = ω^m/m! for symplectic ω,
// φ = sqrt(-tr K²/6) in 6d, and φ = p·vol_g for the 7d/8d cases, so that
// ρ̂ = ∗ρ (n = 7) and ρ̂ = −∗ρ (n = 8) exactly.
VolumeResult volume(const Form& rho);

// Dφ(ρ̇) = ρ̂∧ρ̇ with the top coefficient read in orientation `o`.
Form dual_form_numeric(const Form& rho, Orientation o = {});
Form dual_form_closed(const Form& rho, Orientation o = {});

MetricResult metric_from_form(const Form& rho);

// I = K / sqrt(-tr K²/6); Ω = ρ + iρ̂ is then of type (3,0).
Eigen::MatrixXd acs_from_rho(const Form& rho, Orientation o = {});

}  // namespace sf
