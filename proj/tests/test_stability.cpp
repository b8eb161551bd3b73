#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "stableforms/structures.hpp"

using namespace sf;

namespace {

const std::vector<std::pair<int, int>> kCases = {{4, 2}, {6, 2}, {8, 2}, {6, 4}, {8, 6},
                                                 {6, 3}, {7, 3}, {7, 4}, {8, 3}, {8, 5}};

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

Form normal_rho() {
  return Form::e(6, {1, 2, 5}) - Form::e(6, {3, 4, 5}) + Form::e(6, {1, 3, 6}) - Form::e(6, {4, 2, 6});
}

Eigen::MatrixXd I6() { return Eigen::MatrixXd::Identity(6, 6); }

}  // namespace

TEST_CASE("K map of the normal 3-form") {
  const Eigen::MatrixXd K = k_map(normal_rho()).matrix;
  const Eigen::MatrixXd Ko = oracle::k_matrix(normal_rho());
  CHECK((K - Ko).cwiseAbs().maxCoeff() == 0.0);
  CHECK((K * K).trace() == -24.0);
  CHECK((K * K - (K * K).trace() / 6.0 * I6()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(k_map(normal_rho()).det_weight() == 6);
  CHECK(max_abs_diff(Form(6, 3), Form(6, 3)) == 0.0);
}

TEST_CASE("K map on random forms matches the oracle and is scalar") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    const Form rho = random_stable_form(6, 3, rng);
    const Eigen::MatrixXd K = k_map(rho).matrix;
    CHECK((K - oracle::k_matrix(rho)).cwiseAbs().maxCoeff() < 1e-10 * K.cwiseAbs().maxCoeff());
    const Eigen::MatrixXd K2 = K * K;
    CHECK((K2 - K2.trace() / 6.0 * I6()).cwiseAbs().maxCoeff() < 1e-8 * std::abs(K2.trace()));
  }
}

TEST_CASE("six-dimensional 3-form orbits") {
  // The literal e1e2e3 − e3e4e5 + e1e3e6 − e4e2e6 is degenerate; e1e2e5 is the stable normal form.
  const Form literal = Form::e(6, {1, 2, 3}) - Form::e(6, {3, 4, 5}) + Form::e(6, {1, 3, 6}) - Form::e(6, {4, 2, 6});
  const Eigen::MatrixXd Kl = k_map(literal).matrix;
  CHECK((Kl * Kl).trace() == 0.0);
  CHECK(volume(literal).cls == StabilityClass::NotStable);

  CHECK(volume(normal_rho()).cls == StabilityClass::SL3C);
  CHECK(volume(normal_rho()).phi == 2.0);

  const Form dec = Form::e(6, {1, 2, 3});
  const Eigen::MatrixXd Kd = k_map(dec).matrix;
  CHECK((Kd * Kd).trace() == 0.0);
  CHECK(volume(dec).cls == StabilityClass::NotStable);
  CHECK(volume(dec).phi == 0.0);

  const Form split = Form::e(6, {1, 2, 3}) + Form::e(6, {4, 5, 6});
  const Eigen::MatrixXd Ks = k_map(split).matrix;
  CHECK((Ks * Ks).trace() > 0.0);
  CHECK(volume(split).cls == StabilityClass::StableOtherRealForm);
  CHECK(volume(split).phi > 0.0);
}

TEST_CASE("volume normalizations on normal forms") {
  const Form w = Form::e(6, {1, 2}) + Form::e(6, {3, 4}) + Form::e(6, {5, 6});
  CHECK(volume(w).phi == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(volume(w).cls == StabilityClass::Symplectic);
  const Form sigma = wedge(w, w) * 0.5;
  CHECK(volume(sigma).phi == doctest::Approx(1.0).epsilon(1e-15));
  // φ(ρ) = 2 φ(σ) for the normal SU(3) pair
  const SU3Pair p = su3_normal_pair();
  CHECK(volume(p.rho).phi == doctest::Approx(2.0 * volume(p.sigma).phi).epsilon(1e-15));

  const auto nf = g2_normal_forms();
  // φ = 3 vol for a 3-form and 4 vol for a 4-form in 7d, 3 vol and 5 vol in 8d
  CHECK(volume(nf.phi).phi == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(volume(nf.phi).cls == StabilityClass::G2);
  CHECK(volume(nf.star_phi).phi == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(volume(nf.star_phi).cls == StabilityClass::G2);
  const Form su3 = su3_structure_3form();
  CHECK(volume(su3).cls == StabilityClass::PSU3);
  CHECK(volume(su3).phi == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(volume(hodge_star(su3)).cls == StabilityClass::PSU3);
  CHECK(volume(hodge_star(su3)).phi == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("unsupported and degenerate inputs") {
  CHECK_THROWS_AS(volume(Form::e(5, {1, 2})), InputError);
  CHECK_THROWS_AS(volume(Form(8, 4)), InputError);
  CHECK_THROWS_AS(volume(Form::e(7, {1, 2})), InputError);
  CHECK(volume(Form(7, 3)).cls == StabilityClass::NotStable);
  CHECK(volume(Form::e(7, {1, 2, 3})).cls == StabilityClass::NotStable);
  CHECK(volume(Form::e(6, {1, 2})).cls == StabilityClass::NotStable);
  CHECK_THROWS_AS(dual_form_numeric(Form::e(7, {1, 2, 3})), DomainError);
  CHECK_THROWS_AS(dual_form_closed(Form::e(6, {1, 2, 3})), DomainError);
  CHECK_THROWS_AS(metric_from_form(Form::e(7, {1, 2, 3})), DomainError);
  CHECK_THROWS_AS(metric_from_form(normal_rho()), InputError);
  CHECK_THROWS_AS(acs_from_rho(Form::e(6, {1, 2, 3}) + Form::e(6, {4, 5, 6})), DomainError);
}

TEST_CASE("homogeneity of every functional") {
  std::mt19937_64 rng(12);
  for (auto [n, p] : kCases)
    for (int t = 0; t < 20; ++t) {
      const Form rho = random_stable_form(n, p, rng);
      const double phi = volume(rho).phi;
      for (double l : {0.5, 2.0, 3.0})
        CHECK_MESSAGE(rel(volume(rho * l).phi, std::pow(l, static_cast<double>(n) / p) * phi) < 1e-10, n, p);
    }
}

TEST_CASE("GL equivariance") {
  std::mt19937_64 rng(13);
  for (auto [n, p] : kCases)
    for (int t = 0; t < 5; ++t) {
      const Form rho = random_stable_form(n, p, rng);
      const Eigen::MatrixXd A = random_gl_plus(n, rng);
      CHECK_MESSAGE(rel(volume(pullback(A, rho)).phi, A.determinant() * volume(rho).phi) < 1e-9, n, p);
    }
  for (int t = 0; t < 5; ++t) {
    const Form phi = random_stable_form(7, 3, rng);
    const Eigen::MatrixXd A = random_gl_plus(7, rng);
    const Eigen::MatrixXd g = metric_from_form(phi).g;
    const Eigen::MatrixXd gA = metric_from_form(pullback(A, phi)).g;
    CHECK((gA - A.transpose() * g * A).cwiseAbs().maxCoeff() < 1e-9 * gA.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("density weights of the determinant constructions") {
  std::mt19937_64 rng(14);
  for (auto [n, p] : std::vector<std::pair<int, int>>{{7, 3}, {7, 4}, {8, 3}, {8, 5}}) {
    const Form rho = random_stable_form(n, p, rng);
    const Eigen::MatrixXd A = random_gl_plus(n, rng);
    const DensityMap m = n == 7 ? g2_bilinear(rho) : su3_bilinear(rho);
    const DensityMap mA = n == 7 ? g2_bilinear(pullback(A, rho)) : su3_bilinear(pullback(A, rho));
    const double ratio = std::abs(mA.matrix.determinant() / m.matrix.determinant());
    CHECK(rel(ratio, std::pow(A.determinant(), m.det_weight())) < 1e-8);
  }
  CHECK(g2_bilinear(g2_normal_forms().phi).det_weight() == 9);
  CHECK(g2_bilinear(g2_normal_forms().star_phi).det_weight() == 12);
  CHECK(su3_bilinear(su3_structure_3form()).det_weight() == 18);
  CHECK(su3_bilinear(hodge_star(su3_structure_3form())).det_weight() == 30);
}

TEST_CASE("Euler identity with numeric and closed duals") {
  std::mt19937_64 rng(15);
  for (auto [n, p] : kCases)
    for (int t = 0; t < 3; ++t) {
      const Form rho = random_stable_form(n, p, rng);
      const double target = static_cast<double>(n) / p * volume(rho).phi;
      for (Orientation o : {Orientation::standard(), Orientation::reversed()}) {
        CHECK(rel(top_pair(dual_form_numeric(rho, o), rho, o), target) < 1e-6);
        CHECK(rel(top_pair(dual_form_closed(rho, o), rho, o), target) < 1e-10);
      }
    }
}

TEST_CASE("closed and numeric duals agree") {
  std::mt19937_64 rng(16);
  for (auto [n, p] : kCases)
    for (int t = 0; t < 3; ++t) {
      const Form rho = random_stable_form(n, p, rng);
      const Form a = dual_form_closed(rho), b = dual_form_numeric(rho);
      CHECK(max_abs_diff(a, b) < 1e-6 * a.max_abs());
    }
}

TEST_CASE("symplectic duals") {
  for (int m : {2, 3, 4}) {
    const int n = 2 * m;
    const Form w = reference_form(n, 2);
    Form expect = Form::scalar(n, 1.0);
    double f = 1.0;
    for (int k = 1; k < m; ++k) {
      expect = wedge(expect, w);
      f *= k;
    }
    expect *= 1.0 / f;
    CHECK(max_abs_diff(dual_form_numeric(w), expect) < 1e-8);
    CHECK(max_abs_diff(dual_form_closed(w), expect) < 1e-14);
    if (m >= 3) {
      // the dual of ω^{m−1}/(m−1)! is ω/(m−1)
      CHECK(max_abs_diff(dual_form_closed(expect), w * (1.0 / (m - 1))) < 1e-14);
      CHECK(max_abs_diff(dual_form_numeric(expect), w * (1.0 / (m - 1))) < 1e-8);
    }
  }
}

TEST_CASE("six-dimensional dual of the normal form") {
  const Orientation o = normal_orientation();
  const Form expect = su3_normal_rho_hat();
  CHECK(max_abs_diff(dual_form_closed(normal_rho(), o), expect) < 1e-14);
  CHECK(max_abs_diff(dual_form_numeric(normal_rho(), o), expect) < 1e-8);
}

TEST_CASE("hat of hat is minus identity in 6d") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const Form rho = random_stable_form(6, 3, rng);
    const Form hh = dual_form_closed(dual_form_closed(rho));
    CHECK(max_abs_diff(hh, -rho) < 1e-10 * rho.max_abs());
    const Form hn = dual_form_numeric(dual_form_numeric(rho));
    CHECK(max_abs_diff(hn, -rho) < 1e-6 * rho.max_abs());
  }
}

TEST_CASE("induced metrics") {
  const auto nf = g2_normal_forms();
  const MetricResult m3 = metric_from_form(nf.phi);
  CHECK((m3.g - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(m3.vol == doctest::Approx(1.0));
  const MetricResult m4 = metric_from_form(nf.star_phi);
  CHECK((m4.g - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-14);
  for (double l : {0.5, 1.5, 2.0}) {
    const Eigen::MatrixXd g = metric_from_form(nf.phi * (l * l * l)).g;
    CHECK((g - l * l * Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
  }
  // the 4-form and its 3-form partner induce the same metric
  std::mt19937_64 rng(18);
  for (int t = 0; t < 5; ++t) {
    const Eigen::MatrixXd A = random_gl_plus(7, rng);
    const Eigen::MatrixXd g3 = metric_from_form(pullback(A, nf.phi)).g;
    const Eigen::MatrixXd g4 = metric_from_form(pullback(A, nf.star_phi)).g;
    CHECK((g3 - g4).cwiseAbs().maxCoeff() < 1e-10 * g3.cwiseAbs().maxCoeff());
    CHECK((g3 - A.transpose() * A).cwiseAbs().maxCoeff() < 1e-10 * g3.cwiseAbs().maxCoeff());
  }
  const Form su3 = su3_structure_3form();
  const Eigen::MatrixXd g8 = metric_from_form(su3).g;
  CHECK((g8 - g8(0, 0) * Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(g8(0, 0) > 0);
  const Eigen::MatrixXd g85 = metric_from_form(hodge_star(su3)).g;
  CHECK((g85 - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("closed duals are Hodge duals") {
  std::mt19937_64 rng(19);
  for (auto [n, p] : std::vector<std::pair<int, int>>{{7, 3}, {7, 4}, {8, 3}, {8, 5}}) {
    const Form rho = random_stable_form(n, p, rng);
    const Eigen::MatrixXd g = metric_from_form(rho).g;
    const double s = n == 7 ? 1.0 : -1.0;
    CHECK(max_abs_diff(dual_form_closed(rho), hodge_star(rho, g) * s) < 1e-12 * rho.max_abs());
  }
  const Form su3 = su3_structure_3form();
  CHECK(max_abs_diff(dual_form_numeric(su3), -hodge_star(su3)) < 1e-8);
}

TEST_CASE("almost complex structure") {
  std::mt19937_64 rng(20);
  for (int t = 0; t < 100; ++t) {
    const Form rho = random_stable_form(6, 3, rng);
    const Eigen::MatrixXd I = acs_from_rho(rho);
    CHECK((I * I + I6()).cwiseAbs().maxCoeff() < 1e-8);
    if (t < 10) {
      for (double l : {0.5, 3.0}) CHECK((acs_from_rho(rho * l) - I).cwiseAbs().maxCoeff() < 1e-10);
      // Ω = ρ + iρ̂ is killed by X + iIX
      const Form rh = dual_form_numeric(rho);
      for (int k = 0; k < 6; ++k) {
        const Eigen::VectorXd X = I6().col(k), IX = I * X;
        CHECK((contract(X, rho) - contract(IX, rh)).max_abs() < 1e-8 * (1 + rho.max_abs()));
        CHECK((contract(X, rh) + contract(IX, rho)).max_abs() < 1e-8 * (1 + rho.max_abs()));
      }
    }
  }
  // normal form: I e1 = e4 up to the orientation sign, i.e. Ω has the factor e1 + i e4
  const Eigen::MatrixXd I = acs_from_rho(normal_rho(), normal_orientation());
  CHECK(std::abs(std::abs(I(3, 0)) - 1.0) < 1e-14);
  CHECK((I * I + I6()).cwiseAbs().maxCoeff() < 1e-14);
}
