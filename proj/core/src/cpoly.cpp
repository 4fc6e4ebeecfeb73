#include "toricabel/cpoly.hpp"

#include "toricabel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace toricabel {

int CPoly1::degree() const {
  for (std::size_t i = coeffs.size(); i-- > 0;)
    if (coeffs[i] != Complex(0)) return static_cast<int>(i);
  return -1;
}

Complex CPoly1::eval(Complex x) const {
  Complex r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
  return r;
}

CPoly1 CPoly1::derivative() const {
  CPoly1 d;
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    d.coeffs.push_back(coeffs[i] * static_cast<double>(i));
  return d;
}

CPoly1 CPoly1::trimmed(double rel) const {
  double mx = 0;
  for (const auto& c : coeffs) mx = std::max(mx, std::abs(c));
  CPoly1 out = *this;
  while (!out.coeffs.empty() && std::abs(out.coeffs.back()) <= rel * mx) out.coeffs.pop_back();
  return out;
}

double CPoly1::norm1() const {
  double s = 0;
  for (const auto& c : coeffs) s += std::abs(c);
  return s;
}

CPoly1 operator*(const CPoly1& a, const CPoly1& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  CVec c(a.coeffs.size() + b.coeffs.size() - 1, Complex(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return CPoly1(std::move(c));
}

void CPoly::add_term(const Exponent& e, Complex c) {
  if (e.size() != nvars_) throw InputError("monomial has wrong number of variables");
  for (int x : e)
    if (x < 0) throw InputError("negative exponent in polynomial");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
  if (it->second == Complex(0)) terms_.erase(it);
}

Complex CPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex(0) : it->second;
}

Complex CPoly::eval(const CVec& x) const {
  Complex s = 0;
  for (const auto& [e, c] : terms_) {
    Complex t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) t *= std::pow(x[i], e[i]);
    s += t;
  }
  return s;
}

CPoly CPoly::derivative(std::size_t var) const {
  CPoly d(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    --f[var];
    d.add_term(f, c * static_cast<double>(e[var]));
  }
  return d;
}

int CPoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int CPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

double CPoly::norm1() const {
  double s = 0;
  for (const auto& [e, c] : terms_) s += std::abs(c);
  return s;
}

double CPoly::max_abs_coeff() const {
  double s = 0;
  for (const auto& [e, c] : terms_) s = std::max(s, std::abs(c));
  return s;
}

CPoly& CPoly::operator+=(const CPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

CPoly& CPoly::operator-=(const CPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

CPoly& CPoly::operator*=(Complex s) {
  if (s == Complex(0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

std::vector<Exponent> CPoly::support() const {
  std::vector<Exponent> out;
  for (const auto& [e, c] : terms_) out.push_back(e);
  return out;
}

std::vector<CPoly> CPoly::coefficients_in(std::size_t var) const {
  std::vector<CPoly> out(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1, CPoly(nvars_));
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f[var] = 0;
    out[static_cast<std::size_t>(e[var])].add_term(f, c);
  }
  return out;
}

CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }

CPoly operator*(const CPoly& a, const CPoly& b) {
  CPoly out(a.nvars());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

CPoly operator*(Complex s, CPoly a) { return a *= s; }

CPoly pow(const CPoly& a, int e) {
  CPoly r(a.nvars());
  r.add_term(Exponent(a.nvars(), 0), 1.0);
  for (int i = 0; i < e; ++i) r = r * a;
  return r;
}

std::string to_string(const CPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*x" << (i + 1);
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

}  // namespace toricabel
