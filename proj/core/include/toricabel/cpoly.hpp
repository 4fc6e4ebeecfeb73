#pragma once

// Complex polynomials: dense univariate and sparse multivariate.

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace toricabel {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using Exponent = std::vector<int>;

/// Dense univariate polynomial; coeffs[i] multiplies x^i.
struct CPoly1 {
  CVec coeffs;

  CPoly1() = default;
  explicit CPoly1(CVec c) : coeffs(std::move(c)) {}

  /// -1 for the zero polynomial.
  int degree() const;
  Complex eval(Complex x) const;
  CPoly1 derivative() const;
  /// Drops leading coefficients below rel * max|c|.
  CPoly1 trimmed(double rel) const;
  double norm1() const;
};

CPoly1 operator*(const CPoly1& a, const CPoly1& b);

/// Sparse polynomial in nvars variables with nonnegative exponents.
class CPoly {
 public:
  explicit CPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Accumulates; exact zero sums are removed.
  void add_term(const Exponent& e, Complex c);
  Complex coeff(const Exponent& e) const;

  Complex eval(const CVec& x) const;
  CPoly derivative(std::size_t var) const;
  /// -1 for the zero polynomial.
  int degree_in(std::size_t var) const;
  int total_degree() const;
  double norm1() const;
  double max_abs_coeff() const;

  CPoly& operator+=(const CPoly& o);
  CPoly& operator-=(const CPoly& o);
  CPoly& operator*=(Complex s);

  std::vector<Exponent> support() const;
  /// Coefficients of x_var^j as polynomials in the remaining variables,
  /// which keep their positions (the var exponent is set to 0).
  std::vector<CPoly> coefficients_in(std::size_t var) const;

 private:
  std::size_t nvars_;
  std::map<Exponent, Complex> terms_;
};

CPoly operator+(CPoly a, const CPoly& b);
CPoly operator-(CPoly a, const CPoly& b);
CPoly operator*(const CPoly& a, const CPoly& b);
CPoly operator*(Complex s, CPoly a);
CPoly pow(const CPoly& a, int e);

/// Human-readable rendering, e.g. "(1+0i)*x1^2 + (-1+0i)*x2".
std::string to_string(const CPoly& p);

}  // namespace toricabel
