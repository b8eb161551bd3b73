#include "stableforms/exterior.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sf {

namespace {

struct Tables {
  std::array<std::array<std::vector<MultiIndex>, kMaxDim + 1>, kMaxDim + 1> bases;
  std::array<std::array<int, 1u << kMaxDim>, kMaxDim + 1> rank{};

  Tables() {
    for (int n = 0; n <= kMaxDim; ++n) {
      // Lexicographic order on sorted tuples, generated by recursion.
      for (int p = 0; p <= n; ++p) {
        std::vector<int> cur;
        auto rec = [&](auto&& self, int start) -> void {
          if (static_cast<int>(cur.size()) == p) {
            bases[n][p].push_back(MultiIndex::from_indices(cur));
            return;
          }
          for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
          }
        };
        rec(rec, 0);
        for (std::size_t k = 0; k < bases[n][p].size(); ++k)
          rank[n][bases[n][p][k].bits] = static_cast<int>(k);
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) throw InputError("dimension must be in 1..8, got " + std::to_string(n));
}

double minor_det(const Eigen::MatrixXd& M, MultiIndex rows, MultiIndex cols) {
  auto r = rows.indices();
  auto c = cols.indices();
  const int k = static_cast<int>(r.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXd S(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) S(i, j) = M(r[i], c[j]);
  return S.determinant();
}

}  // namespace

int MultiIndex::degree() const { return std::popcount(bits); }

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

MultiIndex MultiIndex::from_indices(const std::vector<int>& idx) {
  MultiIndex m;
  for (int i : idx) m.bits |= 1u << i;
  return m;
}

int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

const std::vector<MultiIndex>& basis(int n, int p) {
  check_dim(n);
  if (p < 0 || p > n) throw InputError("degree out of range");
  return tables().bases[n][p];
}

int rank_of(int n, MultiIndex I) { return tables().rank[n][I.bits]; }

MultiIndex complement(int n, MultiIndex I) { return {((1u << n) - 1u) & ~I.bits}; }

int shuffle_sign(MultiIndex I, MultiIndex J) {
  if (I.bits & J.bits) return 0;
  int crossings = 0;
  for (std::uint32_t rest = J.bits; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    crossings += std::popcount(I.bits >> (j + 1));
  }
  return (crossings & 1) ? -1 : 1;
}

Form::Form(int n, int p) : n_(n), p_(p) {
  check_dim(n);
  if (p < 0 || p > n) throw InputError("degree " + std::to_string(p) + " exceeds dimension " + std::to_string(n));
  c_.assign(binom(n, p), 0.0);
}

Form::Form(int n, int p, std::vector<double> coeffs) : Form(n, p) {
  if (coeffs.size() != c_.size()) throw InputError("coefficient count does not match C(n,p)");
  c_ = std::move(coeffs);
}

Form Form::e(int n, std::initializer_list<int> idx) {
  std::vector<int> v;
  for (int i : idx) {
    if (i < 1 || i > n) throw InputError("basis index out of range");
    v.push_back(i - 1);
  }
  Form f(n, static_cast<int>(v.size()));
  int sign = 1;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      if (v[a] == v[b]) return f;
      if (v[a] > v[b]) sign = -sign;
    }
  f.at(MultiIndex::from_indices(v)) = sign;
  return f;
}

Form Form::scalar(int n, double c) {
  Form f(n, 0);
  f[0] = c;
  return f;
}

double Form::max_abs() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

bool Form::is_zero(double tol) const { return max_abs() <= tol; }

Form& Form::operator+=(const Form& o) {
  if (o.n_ != n_ || o.p_ != p_) throw InputError("adding forms of different type");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (o.n_ != n_ || o.p_ != p_) throw InputError("subtracting forms of different type");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Form& Form::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

double max_abs_diff(const Form& a, const Form& b) { return (a - b).max_abs(); }

WeightedForm wedge(const WeightedForm& a, const WeightedForm& b) {
  if (a.contravariant != b.contravariant) throw InputError("cannot wedge a form with a multivector");
  return {wedge(a.base, b.base), a.contravariant, a.weight + b.weight};
}

int DensityMap::det_weight() const {
  const int n = dim();
  switch (variance) {
    case Variance::VToVLambda: return n * weight;
    case Variance::VToDualLambda: return n * weight + 2;
    case Variance::DualToVLambda: return n * weight - 2;
  }
  return 0;
}

Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw InputError("wedge: dimension mismatch");
  const int n = a.dim();
  if (a.degree() + b.degree() > n) throw InputError("wedge: degree exceeds dimension");
  Form out(n, a.degree() + b.degree());
  const auto& ba = basis(n, a.degree());
  const auto& bb = basis(n, b.degree());
  for (std::size_t i = 0; i < ba.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < bb.size(); ++j) {
      if (b[j] == 0.0) continue;
      const int s = shuffle_sign(ba[i], bb[j]);
      if (s == 0) continue;
      out.at({ba[i].bits | bb[j].bits}) += s * a[i] * b[j];
    }
  }
  return out;
}

Form contract(const Eigen::VectorXd& v, const Form& a) {
  if (v.size() != a.dim()) throw InputError("contract: dimension mismatch");
  if (a.degree() == 0) throw InputError("contract: cannot contract a 0-form");
  const int n = a.dim();
  Form out(n, a.degree() - 1);
  const auto& B = basis(n, a.degree());
  for (std::size_t k = 0; k < B.size(); ++k) {
    if (a[k] == 0.0) continue;
    int pos = 0;
    for (int i : B[k].indices()) {
      if (v[i] != 0.0) out.at({B[k].bits & ~(1u << i)}) += ((pos & 1) ? -1.0 : 1.0) * v[i] * a[k];
      ++pos;
    }
  }
  return out;
}

Form contract_basis(int i, const Form& a) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(a.dim());
  v[i] = 1.0;
  return contract(v, a);
}

double top_coeff(const Form& top, Orientation o) {
  if (top.degree() != top.dim()) throw InputError("top_coeff: not a top-degree form");
  return o.sign * top[0];
}

double top_pair(const Form& a, const Form& b, Orientation o) {
  if (a.dim() != b.dim() || a.degree() + b.degree() != a.dim())
    throw InputError("top_pair: degrees are not complementary");
  const int n = a.dim();
  const auto& B = basis(n, a.degree());
  double s = 0.0;
  for (std::size_t k = 0; k < B.size(); ++k) {
    if (a[k] == 0.0) continue;
    const MultiIndex c = complement(n, B[k]);
    s += shuffle_sign(B[k], c) * a[k] * b.at(c);
  }
  return o.sign * s;
}

Form hodge_star(const Form& a, const Eigen::MatrixXd& g, Orientation o) {
  const int n = a.dim();
  if (g.rows() != n || g.cols() != n) throw InputError("hodge_star: metric has wrong size");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + g.cwiseAbs().maxCoeff()))
    throw InputError("hodge_star: metric is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw InputError("hodge_star: metric is not positive definite");
  const Eigen::MatrixXd gi = llt.solve(Eigen::MatrixXd::Identity(n, n));
  const double sq = std::sqrt(g.determinant());
  const auto& B = basis(n, a.degree());
  Form out(n, n - a.degree());
  for (std::size_t i = 0; i < B.size(); ++i) {
    double ip = 0.0;
    for (std::size_t j = 0; j < B.size(); ++j)
      if (a[j] != 0.0) ip += minor_det(gi, B[i], B[j]) * a[j];
    const MultiIndex c = complement(n, B[i]);
    out.at(c) += o.sign * shuffle_sign(B[i], c) * sq * ip;
  }
  return out;
}

Form hodge_star(const Form& a, Orientation o) {
  return hodge_star(a, Eigen::MatrixXd::Identity(a.dim(), a.dim()), o);
}

Form pullback(const Eigen::MatrixXd& A, const Form& rho) {
  const int n = rho.dim();
  if (A.rows() != n || A.cols() != n) throw InputError("pullback: matrix has wrong size");
  const auto& B = basis(n, rho.degree());
  Form out(n, rho.degree());
  for (std::size_t i = 0; i < B.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < B.size(); ++j)
      if (rho[j] != 0.0) s += rho[j] * minor_det(A, B[j], B[i]);
    out[i] = s;
  }
  return out;
}

double evaluate(const Form& rho, const std::vector<Eigen::VectorXd>& vs) {
  const int n = rho.dim();
  const int p = rho.degree();
  if (static_cast<int>(vs.size()) != p) throw InputError("evaluate: wrong number of vectors");
  Eigen::MatrixXd M(n, p);
  for (int k = 0; k < p; ++k) {
    if (vs[k].size() != n) throw InputError("evaluate: vector has wrong size");
    M.col(k) = vs[k];
  }
  const auto& B = basis(n, p);
  const MultiIndex all{(1u << p) - 1u};
  double s = 0.0;
  for (std::size_t k = 0; k < B.size(); ++k)
    if (rho[k] != 0.0) s += rho[k] * minor_det(M, B[k], all);
  return s;
}

Form to_multivector(const Form& a) {
  const int n = a.dim();
  Form s(n, n - a.degree());
  const auto& B = basis(n, a.degree());
  for (std::size_t k = 0; k < B.size(); ++k) {
    const MultiIndex c = complement(n, B[k]);
    s.at(c) = shuffle_sign(c, B[k]) * a[k];
  }
  return s;
}

Form from_multivector(const Form& s) {
  const int n = s.dim();
  Form a(n, n - s.degree());
  const auto& B = basis(n, s.degree());
  for (std::size_t k = 0; k < B.size(); ++k) {
    const MultiIndex c = complement(n, B[k]);
    a.at(c) = shuffle_sign(B[k], c) * s[k];
  }
  return a;
}

Eigen::VectorXd to_vector(const Form& a) {
  if (a.degree() != a.dim() - 1) throw InputError("to_vector: need an (n-1)-form");
  const Form s = to_multivector(a);
  Eigen::VectorXd u(a.dim());
  for (int i = 0; i < a.dim(); ++i) u[i] = s[i];
  return u;
}

std::string to_string(const Form& a, double tol) {
  std::ostringstream os;
  const auto& B = basis(a.dim(), a.degree());
  bool first = true;
  for (std::size_t k = 0; k < B.size(); ++k) {
    if (std::abs(a[k]) <= tol) continue;
    if (!first) os << " + ";
    first = false;
    os << a[k];
    if (a.degree() > 0) {
      os << "*e";
      for (int i : B[k].indices()) os << (i + 1);
    }
  }
  return first ? "0" : os.str();
}

}  // namespace sf
