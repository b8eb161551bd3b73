#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sf {

constexpr int kMaxDim = 8;

// Input that violates a documented precondition (bad degree, bad literal...).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input outside the domain where a construction makes sense
// (non-stable form, singular flow state, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct MultiIndex {
  std::uint32_t bits = 0;

  int degree() const;
  bool contains(int i) const { return (bits >> i) & 1u; }
  std::vector<int> indices() const;  // 0-based, increasing

  static MultiIndex from_indices(const std::vector<int>& idx);  // 0-based
  friend bool operator==(MultiIndex a, MultiIndex b) { return a.bits == b.bits; }
};

int binom(int n, int k);

// Degree-p multi-indices of {0..n-1} in lexicographic order of the sorted tuple.
const std::vector<MultiIndex>& basis(int n, int p);
int rank_of(int n, MultiIndex I);

MultiIndex complement(int n, MultiIndex I);
// Sign of the permutation that sorts the concatenation (I, J); 0 if they overlap.
int shuffle_sign(MultiIndex I, MultiIndex J);

class Form {
 public:
  Form() = default;
  Form(int n, int p);
  Form(int n, int p, std::vector<double> coeffs);

  // Basis monomial e_{i1}...e_{ik} with 1-based, not necessarily sorted, indices.
  static Form e(int n, std::initializer_list<int> idx);
  static Form scalar(int n, double c);

  int dim() const { return n_; }
  int degree() const { return p_; }
  std::size_t size() const { return c_.size(); }

  double& operator[](std::size_t k) { return c_[k]; }
  double operator[](std::size_t k) const { return c_[k]; }
  double& at(MultiIndex I) { return c_[rank_of(n_, I)]; }
  double at(MultiIndex I) const { return c_[rank_of(n_, I)]; }
  const std::vector<double>& coeffs() const { return c_; }

  double max_abs() const;
  bool is_zero(double tol = 0.0) const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(double s);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, double s) { return a *= s; }
  friend Form operator*(double s, Form a) { return a *= s; }
  friend Form operator-(Form a) { return a *= -1.0; }

 private:
  int n_ = 0;
  int p_ = 0;
  std::vector<double> c_;
};

double max_abs_diff(const Form& a, const Form& b);

struct Orientation {
  int sign = 1;
  static Orientation standard() { return {1}; }
  static Orientation reversed() { return {-1}; }
  Orientation flipped() const { return {-sign}; }
};

// A form, or a multivector when `contravariant`, tensored with (Λ^n V*)^weight.
struct WeightedForm {
  Form base;
  bool contravariant = false;
  int weight = 0;
};

WeightedForm wedge(const WeightedForm& a, const WeightedForm& b);

enum class Variance {
  VToVLambda,     // V -> V ⊗ Λ^n V*
  VToDualLambda,  // V -> V* ⊗ (Λ^n V*)^w
  DualToVLambda,  // V* -> V ⊗ (Λ^n V*)^w
};

struct DensityMap {
  Eigen::MatrixXd matrix;
  int weight = 0;
  Variance variance = Variance::VToVLambda;

  int dim() const { return static_cast<int>(matrix.rows()); }
  // Power of Λ^n V* carried by det(matrix).
  int det_weight() const;
};

Form wedge(const Form& a, const Form& b);
Form contract(const Eigen::VectorXd& v, const Form& a);
Form contract_basis(int i, const Form& a);  // ι(e_{i+1}) a

// Coefficient of a∧b on the positively oriented unit n-vector.
double top_pair(const Form& a, const Form& b, Orientation o = {});
double top_coeff(const Form& top, Orientation o = {});

Form hodge_star(const Form& a, const Eigen::MatrixXd& g, Orientation o = {});
Form hodge_star(const Form& a, Orientation o = {});  // g = Id

// (A^*ρ)(X1..Xp) = ρ(AX1, .., AXp)
Form pullback(const Eigen::MatrixXd& A, const Form& rho);
double evaluate(const Form& rho, const std::vector<Eigen::VectorXd>& vs);

// Λ^p V* ≅ Λ^{n-p} V ⊗ Λ^n V*: the unique (n-p)-vector s with
// ι(s) vol = a; also used for (n-1)-forms as vectors.
Form to_multivector(const Form& a);
Form from_multivector(const Form& s);
Eigen::VectorXd to_vector(const Form& a);  // degree n-1 only

std::string to_string(const Form& a, double tol = 0.0);

}  // namespace sf
