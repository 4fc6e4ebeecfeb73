#include "toricabel/exact.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace toricabel {

IntVec make_int_vec(std::initializer_list<long long> values) {
  IntVec out;
  out.reserve(values.size());
  for (long long v : values) out.emplace_back(v);
  return out;
}

RatVec to_rational(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

bool is_integral(const RatVec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rational& q) { return denominator(q) == 1; });
}

IntVec to_integer(const RatVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& q : v) {
    if (denominator(q) != 1) throw std::domain_error("non-integral entry " + to_string(q));
    out.push_back(numerator(q));
  }
  return out;
}

Integer dot(const IntVec& a, const IntVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVec& a, const IntVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec scale(const RatVec& a, const Rational& s) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

Integer gcd_of(const IntVec& v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, abs(x));
  return g;
}

IntVec primitive(const IntVec& v) {
  Integer g = gcd_of(v);
  if (g == 0 || g == 1) return v;
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

Integer common_denominator(const RatVec& v) {
  Integer l = 1;
  for (const auto& q : v) l = boost::multiprecision::lcm(l, Integer(denominator(q)));
  return l;
}

IntVec clear_denominators(const RatVec& v) {
  Integer l = common_denominator(v);
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = numerator(v[i] * l);
  return primitive(out);
}

Integer floor_of(const Rational& q) {
  Integer n = numerator(q), d = denominator(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

Integer ceil_of(const Rational& q) { return -floor_of(-q); }

namespace {

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Extended gcd: returns g = s*a + t*b with g >= 0.
Integer ext_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

}  // namespace

std::size_t rank(RatMatrix rows) { return rref(rows).size(); }

std::vector<std::size_t> pivot_columns(RatMatrix rows) { return rref(rows); }

std::optional<RatVec> solve_square(RatMatrix a, RatVec b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto piv = rref(a);
  if (piv.size() != n || (!piv.empty() && piv.back() >= n)) return std::nullopt;
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

RatMatrix nullspace(const RatMatrix& a, std::size_t cols) {
  RatMatrix m = a;
  auto piv = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  RatMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Integer determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] >= n) return std::nullopt;
  RatMatrix inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols) {
  IntMatrix m = a;
  // u holds the accumulated unimodular column transform, stored as columns.
  IntMatrix u(cols, IntVec(cols, Integer(0)));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;

  auto combine = [&](IntMatrix& mat, std::size_t p, std::size_t c, const Integer& s,
                     const Integer& t, const Integer& x, const Integer& y) {
    // col_p <- s col_p + t col_c ; col_c <- x col_p + y col_c
    for (auto& row : mat) {
      Integer vp = row[p], vc = row[c];
      row[p] = s * vp + t * vc;
      row[c] = x * vp + y * vc;
    }
  };

  std::size_t pivot = 0;
  for (std::size_t i = 0; i < m.size() && pivot < cols; ++i) {
    for (std::size_t c = pivot + 1; c < cols; ++c) {
      if (m[i][c] == 0) continue;
      Integer s, t;
      const Integer a_p = m[i][pivot], b_c = m[i][c];
      Integer g = ext_gcd(a_p, b_c, s, t);
      Integer x = -b_c / g, y = a_p / g;
      combine(m, pivot, c, s, t, x, y);
      combine(u, pivot, c, s, t, x, y);
    }
    if (m[i][pivot] != 0) ++pivot;
  }
  IntMatrix basis;
  for (std::size_t c = pivot; c < cols; ++c) {
    IntVec v(cols);
    for (std::size_t r = 0; r < cols; ++r) v[r] = u[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

IntMatrix lattice_basis_of_span(const RatMatrix& vectors, std::size_t n) {
  if (vectors.empty() || rank(vectors) == 0) return {};
  RatMatrix normals = nullspace(vectors, n);
  if (normals.empty()) {
    IntMatrix id(n, IntVec(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
  }
  IntMatrix constraints;
  for (const auto& v : normals) constraints.push_back(clear_denominators(v));
  return integer_kernel(constraints, n);
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

std::string to_string(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash)), den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

long long to_int64(const Integer& z) {
  if (z > std::numeric_limits<long long>::max() || z < std::numeric_limits<long long>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + z.str());
  return z.convert_to<long long>();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace toricabel
