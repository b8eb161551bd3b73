#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stableforms/flows.hpp"
#include "stableforms/form_json.hpp"
#include "stableforms/structures.hpp"
#include "stableforms/verify.hpp"

namespace sf::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 42;

json with_schema(json j) {
  j["schema"] = "1";
  return j;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j) + 0.0);
    rows.push_back(r);
  }
  return rows;
}

Form read_form(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open form file '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_form(text);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Method parse_method(const std::string& m) { return m == "rk4" ? Method::RK4 : Method::RKF45; }

struct FlowOptions {
  double t = 1.0;
  std::string out;
  std::string method = "rkf45";
  double h = 1e-3;
  double atol = 1e-10;
  double rtol = 1e-10;

  void add_to(CLI::App* app) {
    app->add_option("--t", t, "Integration end time")->check(CLI::PositiveNumber);
    app->add_option("--out", out, "Write the trajectory CSV here (default: stdout)");
    app->add_option("--method", method, "rk4 or rkf45")->check(CLI::IsMember({"rk4", "rkf45"}));
    app->add_option("--h", h, "Fixed step (rk4) or initial step (rkf45)")->check(CLI::PositiveNumber);
    app->add_option("--atol", atol, "Absolute tolerance (rkf45)")->check(CLI::PositiveNumber);
    app->add_option("--rtol", rtol, "Relative tolerance (rkf45)")->check(CLI::PositiveNumber);
  }

  IntegratorConfig config() const {
    IntegratorConfig c;
    c.method = parse_method(method);
    c.t1 = t;
    c.h = h;
    c.atol = atol;
    c.rtol = rtol;
    return c;
  }
};

// Writes CSV either to --out or `out`; the summary goes to `out` when the CSV
// went to a file and to `err` otherwise.
template <class V, class Row>
int emit_trajectory(const Trajectory<V>& tr, const std::string& header, Row&& row, const FlowOptions& fo,
                    json summary, std::ostream& out, std::ostream& err) {
  std::ostringstream csv;
  csv << header << '\n';
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    csv << fmt17(tr.t[k]);
    for (double v : row(tr.y[k])) csv << ',' << fmt17(v);
    csv << '\n';
  }
  if (!tr.complete) csv << "# INCOMPLETE: " << tr.reason << '\n';
  summary["rows"] = tr.t.size();
  summary["complete"] = tr.complete;
  summary["t_end"] = tr.t.back();
  if (!tr.complete) summary["reason"] = tr.reason;
  summary = with_schema(summary);
  if (fo.out.empty()) {
    out << csv.str();
    err << summary.dump() << '\n';
  } else {
    std::ofstream f(fo.out);
    if (!f) throw InputError("cannot write '" + fo.out + "'");
    f << csv.str();
    out << summary.dump() << '\n';
  }
  if (!tr.complete) {
    err << "integration stopped early: " << tr.reason << '\n';
    return 2;
  }
  return 0;
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= v.size();
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return {m, std::sqrt(s / v.size())};
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("STABLEFORMS_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw InputError("STABLEFORMS_SEED is not an unsigned integer");
    }
  }
  return kDefaultSeed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable forms in dimensions 6, 7, 8: volumes, duals, metrics and reduced flows", "stableforms"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  std::string form_path;
  auto add_form = [&](CLI::App* c) {
    c->add_option("--form", form_path, "Form literal JSON file ('-' for stdin)")->required();
  };

  auto* classify = app.add_subcommand("classify", "Stability class and volume of a form");
  add_form(classify);
  auto* volume_cmd = app.add_subcommand("volume", "Volume functional φ(ρ)");
  add_form(volume_cmd);

  auto* dual = app.add_subcommand("dual", "Dual form ρ̂ with Dφ(ρ̇) = ρ̂∧ρ̇");
  add_form(dual);
  std::string dual_method = "closed";
  int orientation = 1;
  dual->add_option("--method", dual_method, "closed or numeric")->check(CLI::IsMember({"closed", "numeric"}));
  dual->add_option("--orientation", orientation, "+1 or -1 relative to e1..en")->check(CLI::IsMember({1, -1}));

  auto* metric = app.add_subcommand("metric", "Induced metric of a (7,3), (7,4), (8,3) or (8,5) form");
  add_form(metric);

  auto* verify = app.add_subcommand("verify", "Run an identity suite");
  std::string suite;
  std::optional<std::uint64_t> seed;
  int samples = 5;
  verify->add_option("suite", suite, "euler | volumes | ast | hodge | k-scalar | all")->required();
  verify->add_option("--seed", seed, "RNG seed (default 42 or $STABLEFORMS_SEED)");
  verify->add_option("--samples", samples, "Random forms per case")->check(CLI::Range(1, 1000));

  auto* flow_s7 = app.add_subcommand("flow-s7", "Integrate the S^7 gradient flow");
  FlowOptions fo_s7;
  fo_s7.add_to(flow_s7);
  bool symmetric = false;
  std::optional<double> y_sym, y1, y2, y3, y4;
  flow_s7->add_flag("--symmetric", symmetric, "Use the y1 = y2 = y3 reduction");
  flow_s7->add_option("--y", y_sym, "Common value of y1 = y2 = y3 (with --symmetric)");
  flow_s7->add_option("--y1", y1);
  flow_s7->add_option("--y2", y2);
  flow_s7->add_option("--y3", y3);
  flow_s7->add_option("--y4", y4)->required();

  auto* flow_s3 = app.add_subcommand("flow-s3s3", "Integrate the S^3 x S^3 Hamiltonian flow");
  FlowOptions fo_s3;
  fo_s3.add_to(flow_s3);
  std::array<double, 6> xy{0, 0, 0, 1, 1, 1};
  std::optional<double> bs;
  const char* names[6] = {"--x1", "--x2", "--x3", "--y1", "--y2", "--y3"};
  std::vector<CLI::Option*> coord_opts;
  for (int i = 0; i < 6; ++i) coord_opts.push_back(flow_s3->add_option(names[i], xy[i]));
  auto* bs_opt = flow_s3->add_option("--bryant-salamon", bs, "Start on the symmetric H = 0 locus at x");
  for (auto* o : coord_opts) bs_opt->excludes(o);

  auto* sq = app.add_subcommand("critical-squashed-s7", "Squashed S^7 critical point");
  double lambda = 0.0;
  sq->add_option("--lambda", lambda)->required();

  auto* wk = app.add_subcommand("critical-weak-su3", "Weak holonomy SU(3) critical point");
  double c_val = 0.0;
  wk->add_option("--c", c_val)->required();

  auto* nf = app.add_subcommand("normal-form", "Print a normal form as a form literal");
  std::string nf_name;
  nf->add_option("--name", nf_name)
      ->required()
      ->check(CLI::IsMember({"g2-phi", "g2-star-phi", "su3-rho", "su3-rho-hat", "su3-sigma", "su3-omega",
                             "psu3-rho", "psu3-star-rho"}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (classify->parsed() || volume_cmd->parsed()) {
      const Form rho = read_form(form_path);
      const VolumeResult v = volume(rho);
      json j = {{"class", to_string(v.cls)}, {"phi", v.phi}};
      if (volume_cmd->parsed()) {
        j["dim"] = rho.dim();
        j["degree"] = rho.degree();
        j["homogeneity"] = static_cast<double>(rho.dim()) / rho.degree();
      }
      out << with_schema(j).dump() << '\n';
      return 0;
    }
    if (dual->parsed()) {
      const Form rho = read_form(form_path);
      const Orientation o{orientation};
      const Form d = dual_method == "numeric" ? dual_form_numeric(rho, o) : dual_form_closed(rho, o);
      const double phi = volume(rho).phi;
      const double euler = top_pair(d, rho, o) - static_cast<double>(rho.dim()) / rho.degree() * phi;
      out << with_schema({{"method", dual_method}, {"dual", form_to_json(d, 1e-13)}, {"phi", phi},
                          {"euler_residual", euler}})
                 .dump()
          << '\n';
      return 0;
    }
    if (metric->parsed()) {
      const Form rho = read_form(form_path);
      const MetricResult m = metric_from_form(rho);
      out << with_schema({{"class", to_string(m.cls)}, {"phi", volume(rho).phi}, {"vol", m.vol},
                          {"metric", matrix_json(m.g)}})
                 .dump()
          << '\n';
      return 0;
    }
    if (verify->parsed()) {
      const std::uint64_t s = seed ? *seed : default_seed();
      const VerifyReport rep = run_verify(suite, s, samples);
      json checks = json::array();
      for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}, {"tolerance", c.tolerance}});
      out << with_schema({{"suite", rep.suite}, {"seed", rep.seed}, {"pass", rep.all_pass()}, {"checks", checks}})
                 .dump(2)
          << '\n';
      return rep.all_pass() ? 0 : 1;
    }
    if (flow_s7->parsed()) {
      const IntegratorConfig cfg = fo_s7.config();
      if (symmetric) {
        if (!y_sym || y1 || y2 || y3) throw InputError("--symmetric takes --y and --y4 only");
        const auto tr = integrate_s7_symmetric(Vec2(*y_sym, *y4), cfg);
        std::vector<double> cs;
        for (const auto& v : tr.y) cs.push_back(s7_symmetric_fit_c(v));
        const auto [m, sd] = mean_std(cs);
        return emit_trajectory(
            tr, "t,y1,y2,y3,y4", [](const Vec2& v) { return std::vector<double>{v[0], v[0], v[0], v[1]}; }, fo_s7,
            {{"flow", "s7-symmetric"}, {"fitted_c", m}, {"fitted_c_stddev", sd}}, out, err);
      }
      if (y_sym || !y1 || !y2 || !y3) throw InputError("flow-s7 needs --y1 --y2 --y3 --y4 (or --symmetric --y --y4)");
      const S7State s0{Vec4(*y1, *y2, *y3, *y4)};
      const auto tr = integrate_s7(s0, cfg);
      return emit_trajectory(
          tr, "t,y1,y2,y3,y4", [](const Vec4& v) { return std::vector<double>{v[0], v[1], v[2], v[3]}; }, fo_s7,
          {{"flow", "s7"}, {"V_start", s7_volume(s0)}, {"V_end", s7_volume({tr.y.back()})}}, out, err);
    }
    if (flow_s3->parsed()) {
      const S3S3State s0 = bs ? bryant_salamon_state(*bs)
                              : S3S3State{Vec3(xy[0], xy[1], xy[2]), Vec3(xy[3], xy[4], xy[5])};
      const auto tr = integrate_s3s3(s0, fo_s3.config());
      const double h0 = s3s3_hamiltonian(s0);
      double drift = 0.0;
      for (const auto& v : tr.y) drift = std::max(drift, std::abs(s3s3_hamiltonian(unpack(v)) - h0));
      return emit_trajectory(
          tr, "t,x1,x2,x3,y1,y2,y3,H",
          [](const S3S3Vec& v) {
            std::vector<double> r(v.data(), v.data() + 6);
            r.push_back(s3s3_hamiltonian(unpack(v)));
            return r;
          },
          fo_s3, {{"flow", "s3s3"}, {"H_start", h0}, {"H_max_drift", drift}}, out, err);
    }
    if (sq->parsed()) {
      const SquashedS7 p = squashed_s7(lambda);
      const Vec4 r = s7_rhs_y(p.state);
      out << with_schema({{"lambda", lambda},
                          {"y", p.y},
                          {"y4sq", p.y4sq},
                          {"y4", p.state.y[3]},
                          {"rhs", {r[0], r[1], r[2], r[3]}}})
                 .dump()
          << '\n';
      return 0;
    }
    if (wk->parsed()) {
      const WeakSU3Point p = weak_su3_critical(c_val);
      out << with_schema({{"c", c_val}, {"x", p.x}, {"y", p.y}, {"mu", p.mu}}).dump() << '\n';
      return 0;
    }
    if (nf->parsed()) {
      const auto g2 = g2_normal_forms();
      const SU3Pair pair = su3_normal_pair();
      Form f;
      if (nf_name == "g2-phi") f = g2.phi;
      else if (nf_name == "g2-star-phi") f = g2.star_phi;
      else if (nf_name == "su3-rho") f = pair.rho;
      else if (nf_name == "su3-rho-hat") f = su3_normal_rho_hat();
      else if (nf_name == "su3-sigma") f = pair.sigma;
      else if (nf_name == "su3-omega") f = pair.omega;
      else if (nf_name == "psu3-rho") f = su3_structure_3form();
      else f = hodge_star(su3_structure_3form());
      out << with_schema({{"name", nf_name}, {"orientation", nf_name.rfind("psu3", 0) == 0 ? 1 : -1},
                          {"form", form_to_json(f, 1e-14)}})
                 .dump()
          << '\n';
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace sf::cli
