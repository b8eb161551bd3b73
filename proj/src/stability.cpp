#include "stableforms/stability.hpp"

#include <cmath>

namespace sf {

namespace {

constexpr double kG2Kappa = 6.0;
constexpr double kSU3Kappa = 90.0;

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

Form power(const Form& a, int k) {
  Form r = Form::scalar(a.dim(), 1.0);
  for (int i = 0; i < k; ++i) r = wedge(r, a);
  return r;
}

enum class Case { Symplectic2, Symplectic2m2, SL3, G2_3, G2_4, SU3_3, SU3_5 };

Case classify_case(int n, int p) {
  if (n % 2 == 0 && n >= 4 && p == 2) return Case::Symplectic2;
  if (n % 2 == 0 && n >= 6 && p == n - 2) return Case::Symplectic2m2;
  if (n == 6 && p == 3) return Case::SL3;
  if (n == 7 && p == 3) return Case::G2_3;
  if (n == 7 && p == 4) return Case::G2_4;
  if (n == 8 && p == 3) return Case::SU3_3;
  if (n == 8 && p == 5) return Case::SU3_5;
  throw InputError("no volume functional for (n, p) = (" + std::to_string(n) + ", " + std::to_string(p) + ")");
}

double stability_threshold(const Form& rho) {
  return 1e-12 * std::pow(rho.max_abs(), static_cast<double>(rho.dim()) / rho.degree());
}

// ι_aτ∧ι_bτ∧τ for every pair, with τ a 3-form (or a 3-vector read formally).
template <class F>
void for_each_triple(const Form& tau, F&& f) {
  const int n = tau.dim();
  std::vector<Form> c, ct;
  for (int i = 0; i < n; ++i) {
    c.push_back(contract_basis(i, tau));
    ct.push_back(wedge(c.back(), tau));
  }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) f(a, b, wedge(c[a], ct[b]));
}

Eigen::MatrixXd g2_matrix(const Form& tau) {
  const int n = tau.dim();
  Eigen::MatrixXd B(n, n);
  for_each_triple(tau, [&](int a, int b, const Form& t) { B(a, b) = B(b, a) = t[0]; });
  return B;
}

Eigen::MatrixXd su3_matrix(const Form& tau) {
  const int n = tau.dim();
  std::vector<Eigen::MatrixXd> D(n, Eigen::MatrixXd(n, n));
  for_each_triple(tau, [&](int a, int b, const Form& t) {
    const Eigen::VectorXd u = to_vector(t);
    D[a].col(b) = u;
    D[b].col(a) = u;
  });
  Eigen::MatrixXd G(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) G(a, b) = G(b, a) = (D[a] * D[b]).trace();
  return G;
}

struct DetVolume {
  Eigen::MatrixXd M;
  double vol;  // Riemannian volume of the induced metric
  double kappa;
  int det_weight;
};

DetVolume det_volume(const Form& rho, Case c) {
  const DensityMap m = (c == Case::G2_3 || c == Case::G2_4) ? g2_bilinear(rho) : su3_bilinear(rho);
  const double kappa = (c == Case::G2_3 || c == Case::G2_4) ? kG2Kappa : kSU3Kappa;
  const int n = rho.dim();
  const double d = std::abs(m.matrix.determinant()) / std::pow(kappa, n);
  return {m.matrix, std::pow(d, 1.0 / m.det_weight()), kappa, m.det_weight()};
}

double phi_value(const Form& rho, Case c) {
  const int n = rho.dim();
  switch (c) {
    case Case::Symplectic2: {
      const int m = n / 2;
      return std::abs(power(rho, m)[0] / factorial(m));
    }
    case Case::Symplectic2m2: {
      const int m = n / 2;
      const double s = power(to_multivector(rho), m)[0];
      return std::pow(std::abs(s / factorial(m)), 1.0 / (m - 1));
    }
    case Case::SL3: {
      const Eigen::MatrixXd K = k_map(rho).matrix;
      return std::sqrt(std::abs((K * K).trace()) / 6.0);
    }
    default:
      return rho.degree() * det_volume(rho, c).vol;
  }
}

// +1 / -1 if the symmetric matrix is definite, 0 otherwise.
int definite_sign(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() > 0) return 1;
  if (ev.maxCoeff() < 0) return -1;
  return 0;
}

}  // namespace

std::string to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::Symplectic: return "Symplectic";
    case StabilityClass::SL3C: return "SL3C";
    case StabilityClass::G2: return "G2";
    case StabilityClass::PSU3: return "PSU3";
    case StabilityClass::NotStable: return "NotStable";
    case StabilityClass::StableOtherRealForm: return "StableOtherRealForm";
  }
  return "?";
}

bool volume_supported(int n, int p) {
  try {
    classify_case(n, p);
    return true;
  } catch (const InputError&) {
    return false;
  }
}

DensityMap k_map(const Form& rho, Orientation o) {
  if (rho.dim() != 6 || rho.degree() != 3) throw InputError("k_map needs a 3-form on R^6");
  Eigen::MatrixXd K(6, 6);
  for (int j = 0; j < 6; ++j) K.col(j) = o.sign * to_vector(wedge(contract_basis(j, rho), rho));
  return {K, 1, Variance::VToVLambda};
}

DensityMap g2_bilinear(const Form& rho) {
  if (rho.dim() != 7 || (rho.degree() != 3 && rho.degree() != 4))
    throw InputError("g2_bilinear needs a 3- or 4-form on R^7");
  if (rho.degree() == 3) return {g2_matrix(rho), 1, Variance::VToDualLambda};
  return {g2_matrix(to_multivector(rho)), 2, Variance::DualToVLambda};
}

DensityMap su3_bilinear(const Form& rho) {
  if (rho.dim() != 8 || (rho.degree() != 3 && rho.degree() != 5))
    throw InputError("su3_bilinear needs a 3- or 5-form on R^8");
  if (rho.degree() == 3) return {su3_matrix(rho), 2, Variance::VToDualLambda};
  return {su3_matrix(to_multivector(rho)), 4, Variance::DualToVLambda};
}

VolumeResult volume(const Form& rho) {
  const Case c = classify_case(rho.dim(), rho.degree());
  VolumeResult r;
  if (rho.max_abs() == 0.0) return r;
  const double thresh = stability_threshold(rho);
  switch (c) {
    case Case::Symplectic2:
    case Case::Symplectic2m2:
      r.phi = phi_value(rho, c);
      r.cls = StabilityClass::Symplectic;
      break;
    case Case::SL3: {
      const Eigen::MatrixXd K = k_map(rho).matrix;
      const double t = (K * K).trace();
      r.phi = std::sqrt(std::abs(t) / 6.0);
      r.cls = t < 0 ? StabilityClass::SL3C : StabilityClass::StableOtherRealForm;
      break;
    }
    default: {
      const DetVolume dv = det_volume(rho, c);
      r.phi = rho.degree() * dv.vol;
      const bool compact = definite_sign(dv.M) != 0;
      const bool g2 = c == Case::G2_3 || c == Case::G2_4;
      r.cls = !compact ? StabilityClass::StableOtherRealForm : g2 ? StabilityClass::G2 : StabilityClass::PSU3;
    }
  }
  if (r.phi <= thresh) r = {0.0, StabilityClass::NotStable};
  return r;
}

Form dual_form_numeric(const Form& rho, Orientation o) {
  const Case c = classify_case(rho.dim(), rho.degree());
  if (volume(rho).cls == StabilityClass::NotStable) throw DomainError("dual form of a non-stable form");
  const int n = rho.dim();
  const int p = rho.degree();
  const double h = 1e-5 * (1.0 + rho.max_abs());
  Form out(n, n - p);
  const auto& B = basis(n, p);
  for (std::size_t k = 0; k < B.size(); ++k) {
    auto at = [&](double t) {
      Form r = rho;
      r[k] += t;
      return phi_value(r, c);
    };
    const double d = (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
    const MultiIndex J = B[k];
    const MultiIndex Jc = complement(n, J);
    out.at(Jc) = o.sign * shuffle_sign(Jc, J) * d;
  }
  return out;
}

Form dual_form_closed(const Form& rho, Orientation o) {
  const Case c = classify_case(rho.dim(), rho.degree());
  const VolumeResult v = volume(rho);
  if (v.cls == StabilityClass::NotStable) throw DomainError("dual form of a non-stable form");
  const int n = rho.dim();
  switch (c) {
    case Case::Symplectic2: {
      const int m = n / 2;
      const double eps = (power(rho, m)[0] > 0 ? 1.0 : -1.0) * o.sign;
      return power(rho, m - 1) * (eps / factorial(m - 1));
    }
    case Case::Symplectic2m2: {
      const int m = n / 2;
      const Form sigma = to_multivector(rho);
      const double s = power(sigma, m)[0];
      const double coef = o.sign * m * v.phi / ((m - 1) * s);
      return from_multivector(power(sigma, m - 1)) * coef;
    }
    case Case::SL3: {
      const Eigen::MatrixXd I = acs_from_rho(rho, o);
      Form out(6, 3);
      const auto& B = basis(6, 3);
      const Eigen::MatrixXd E = Eigen::MatrixXd::Identity(6, 6);
      for (std::size_t k = 0; k < B.size(); ++k) {
        const auto idx = B[k].indices();
        out[k] = -evaluate(rho, {I * E.col(idx[0]), E.col(idx[1]), E.col(idx[2])});
      }
      return out;
    }
    default: {
      if (v.cls == StabilityClass::StableOtherRealForm)
        throw DomainError("closed-form dual needs a compact stabilizer");
      const Form s = hodge_star(rho, metric_from_form(rho).g, o);
      return n == 7 ? s : -s;
    }
  }
}

MetricResult metric_from_form(const Form& rho) {
  const Case c = classify_case(rho.dim(), rho.degree());
  if (c != Case::G2_3 && c != Case::G2_4 && c != Case::SU3_3 && c != Case::SU3_5)
    throw InputError("metric_from_form supports (7,3), (7,4), (8,3), (8,5)");
  const VolumeResult v = volume(rho);
  if (v.cls == StabilityClass::NotStable) throw DomainError("metric of a non-stable form");
  if (v.cls == StabilityClass::StableOtherRealForm)
    throw DomainError("induced bilinear form is indefinite (class StableOtherRealForm)");
  const DetVolume dv = det_volume(rho, c);
  const double s = definite_sign(dv.M);
  Eigen::MatrixXd g;
  switch (c) {
    case Case::G2_3: g = s * dv.M / (dv.kappa * dv.vol); break;
    case Case::G2_4: g = s * dv.kappa * dv.vol * dv.vol * dv.M.inverse(); break;
    case Case::SU3_3: g = s * dv.M / (dv.kappa * dv.vol * dv.vol); break;
    default: g = s * dv.kappa * std::pow(dv.vol, 4) * dv.M.inverse(); break;
  }
  g = 0.5 * (g + g.transpose());
  return {g, dv.vol, v.cls};
}

Eigen::MatrixXd acs_from_rho(const Form& rho, Orientation o) {
  const Eigen::MatrixXd K = k_map(rho, o).matrix;
  const double t = (K * K).trace();
  if (!(t < 0) || std::sqrt(-t / 6.0) <= stability_threshold(rho))
    throw DomainError("almost complex structure needs tr(K^2) < 0");
  return K / std::sqrt(-t / 6.0);
}

}  // namespace sf
