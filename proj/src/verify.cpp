#include "stableforms/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "stableforms/structures.hpp"

namespace sf {

namespace {

struct Case {
  int n, p;
};

const std::vector<Case>& all_cases() {
  static const std::vector<Case> c = {{4, 2}, {6, 2}, {8, 2}, {6, 4}, {8, 6}, {6, 3},
                                      {7, 3}, {7, 4}, {8, 3}, {8, 5}};
  return c;
}

std::string case_name(const Case& c) { return "(" + std::to_string(c.n) + "," + std::to_string(c.p) + ")"; }

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

Check make(std::string name, double residual, double tol) {
  return {std::move(name), residual, tol, residual < tol};
}

void euler(std::vector<Check>& out, std::mt19937_64& rng, int samples) {
  for (const Case& c : all_cases()) {
    double rn = 0.0, rc = 0.0;
    for (int s = 0; s < samples; ++s) {
      const Form rho = random_stable_form(c.n, c.p, rng);
      const double target = static_cast<double>(c.n) / c.p * volume(rho).phi;
      rn = std::max(rn, rel(top_pair(dual_form_numeric(rho), rho), target));
      rc = std::max(rc, rel(top_pair(dual_form_closed(rho), rho), target));
    }
    out.push_back(make("euler" + case_name(c) + ".closed", rc, 1e-10));
    out.push_back(make("euler" + case_name(c) + ".numeric", rn, 1e-6));
  }
}

void volumes(std::vector<Check>& out) {
  const SU3Pair pair = su3_normal_pair();
  const auto v = volume_chain(pair);
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x - v[3]));
  out.push_back(make("volumes.chain", r, 1e-12));
  out.push_back(make("volumes.phi_sigma_is_1", std::abs(v[3] - 1.0), 1e-12));
  const Eigen::MatrixXd g = metric_from_form(g2_normal_forms().phi).g;
  out.push_back(make("volumes.g2_metric_identity", (g - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff(), 1e-10));
}

void ast(std::vector<Check>& out) {
  const auto nf = g2_normal_forms();
  const Orientation o = normal_orientation();
  out.push_back(make("ast.normal", max_abs_diff(hodge_star(nf.phi, o), nf.star_phi), 1e-12));
  out.push_back(make("ast.decomposition",
                     max_abs_diff(assemble_7d(su3_normal_pair(), 1.0), nf.phi), 1e-12));
  out.push_back(make("ast.rho_hat_printed",
                     max_abs_diff(dual_form_closed(su3_normal_pair().rho, o), su3_normal_rho_hat()), 1e-12));
}

void hodge(std::vector<Check>& out, std::mt19937_64& rng, int samples) {
  for (const Case& c : std::vector<Case>{{7, 3}, {7, 4}, {8, 3}, {8, 5}}) {
    double r = 0.0;
    for (int s = 0; s < samples; ++s) {
      const Form rho = random_stable_form(c.n, c.p, rng);
      const Form a = dual_form_closed(rho), b = dual_form_numeric(rho);
      r = std::max(r, max_abs_diff(a, b) / std::max(1.0, a.max_abs()));
    }
    out.push_back(make("hodge" + case_name(c), r, 1e-6));
  }
  double r = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Form rho = random_stable_form(6, 3, rng);
    const Eigen::MatrixXd I = acs_from_rho(rho);
    const Form rh = dual_form_closed(rho);
    for (int k = 0; k < 6; ++k) {
      const Eigen::VectorXd X = Eigen::VectorXd::Unit(6, k), IX = I * X;
      // ι(X + iIX)(ρ + iρ̂)
      r = std::max(r, (contract(X, rho) - contract(IX, rh)).max_abs());
      r = std::max(r, (contract(X, rh) + contract(IX, rho)).max_abs());
    }
  }
  out.push_back(make("hodge(6,3).type30", r, 1e-8));
}

void kscalar(std::vector<Check>& out, std::mt19937_64& rng, int samples) {
  double r = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::MatrixXd K = k_map(random_stable_form(6, 3, rng)).matrix;
    const Eigen::MatrixXd K2 = K * K;
    const double l = K2.trace() / 6.0;
    r = std::max(r, (K2 - l * Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() / std::abs(l));
  }
  out.push_back(make("k-scalar", r, 1e-8));
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s = {"euler", "volumes", "ast", "hodge", "k-scalar", "all"};
  return s;
}

VerifyReport run_verify(const std::string& suite, std::uint64_t seed, int samples) {
  const auto& names = verify_suites();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw InputError("unknown suite '" + suite + "'");
  VerifyReport rep{suite, seed, {}};
  std::mt19937_64 rng(seed);
  const bool all = suite == "all";
  if (all || suite == "euler") euler(rep.checks, rng, samples);
  if (all || suite == "volumes") volumes(rep.checks);
  if (all || suite == "ast") ast(rep.checks);
  if (all || suite == "hodge") hodge(rep.checks, rng, samples);
  if (all || suite == "k-scalar") kscalar(rep.checks, rng, samples);
  std::sort(rep.checks.begin(), rep.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  return rep;
}

}  // namespace sf
