#include "toricabel/numeric_solve.hpp"

#include "toricabel/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace toricabel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = 3.14159265358979323846;

double rel_residual(const CVec& c, Complex z, Complex pz) {
  double bound = 0, zi = 1;
  const double az = std::abs(z);
  for (const auto& ci : c) {
    bound += std::abs(ci) * zi;
    zi *= az;
  }
  return bound > 0 ? std::abs(pz) / bound : std::abs(pz);
}

// Aberth-Ehrlich iteration on a monic polynomial with nonzero constant term.
CVec aberth(const CVec& c, int max_iter) {
  const std::size_t n = c.size() - 1;
  double radius = 0;
  for (std::size_t i = 0; i < n; ++i)
    radius = std::max(radius, std::pow(std::abs(c[i]), 1.0 / static_cast<double>(n - i)));
  radius = std::max(radius, 1e-3);
  CVec z(n);
  for (std::size_t k = 0; k < n; ++k)
    z[k] = std::polar(radius, 2 * kPi * static_cast<double>(k) / static_cast<double>(n) + 0.7);

  std::vector<bool> done(n, false);
  for (int it = 0; it < max_iter; ++it) {
    bool all = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex p = c[n], dp = 0;
      double bound = std::abs(c[n]);
      const double az = std::abs(z[k]);
      for (std::size_t i = n; i-- > 0;) {
        dp = dp * z[k] + p;
        p = p * z[k] + c[i];
        bound = bound * az + std::abs(c[i]);
      }
      if (std::abs(p) <= 8.0 * static_cast<double>(n) * kEps * bound) {
        done[k] = true;
        continue;
      }
      all = false;
      Complex s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k && z[j] != z[k]) s += 1.0 / (z[k] - z[j]);
      Complex w;
      if (dp == Complex(0)) {
        w = Complex(1e-8 * std::max(1.0, az), 1e-8);
      } else {
        const Complex ratio = p / dp;
        w = ratio / (1.0 - ratio * s);
      }
      z[k] -= w;
      if (std::abs(w) <= kEps * std::abs(z[k])) done[k] = true;
    }
    if (all) break;
  }
  return z;
}

void polish(const CPoly1& p, Complex& z) {
  const CPoly1 dp = p.derivative();
  for (int i = 0; i < 4; ++i) {
    const Complex d = dp.eval(z);
    if (std::abs(d) == 0) return;
    const Complex cand = z - p.eval(z) / d;
    if (std::abs(p.eval(cand)) < std::abs(p.eval(z)))
      z = cand;
    else
      return;
  }
}

}  // namespace

std::vector<Root> univariate_roots(const CPoly1& p, const SolveConfig& cfg) {
  const int deg = p.degree();
  if (deg < 0) throw InputError("zero polynomial has no finite root set");
  if (deg == 0) throw InputError("constant polynomial has no roots");
  CVec c(p.coeffs.begin(), p.coeffs.begin() + deg + 1);
  std::size_t zeros = 0;
  while (c[zeros] == Complex(0)) ++zeros;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  const std::size_t n = c.size() - 1;

  CVec z;
  if (n == 1) {
    z.push_back(-c[0] / c[1]);
  } else if (n > 1) {
    CVec monic = c;
    for (auto& x : monic) x /= c[n];
    z = aberth(monic, cfg.max_iter);
    const CPoly1 q(monic);
    for (auto& r : z) polish(q, r);
    for (const auto& r : z) {
      const double res = rel_residual(monic, r, q.eval(r));
      if (!(res <= cfg.tol)) {
        throw NumericError("root finder did not converge (degree " + std::to_string(n) +
                           ", relative residual " + std::to_string(res) + ")");
      }
    }
  }

  // Cluster nearby roots; members are replaced by the cluster mean.
  std::vector<std::size_t> parent(z.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (std::abs(z[i] - z[j]) <= cfg.cluster * std::max(1.0, std::abs(z[i])))
        parent[find(i)] = find(j);
  std::vector<Root> out;
  for (std::size_t i = 0; i < zeros; ++i) out.push_back({Complex(0), static_cast<int>(zeros)});
  std::vector<bool> used(z.size(), false);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = i; j < z.size(); ++j)
      if (!used[j] && find(j) == find(i)) members.push_back(j);
    Complex mean = 0;
    for (auto j : members) {
      used[j] = true;
      mean += z[j];
    }
    mean /= static_cast<double>(members.size());
    const Complex value = members.size() == 1 ? z[i] : mean;
    for (std::size_t r = 0; r < members.size(); ++r)
      out.push_back({value, static_cast<int>(members.size())});
  }
  return out;
}

Complex jacobian_det(const std::vector<CPoly>& system, const CVec& p) {
  const std::size_t n = system.size();
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = system[i].derivative(j).eval(p);
  return m.determinant();
}

namespace {

struct Bivariate {
  const CPoly& f;
  const CPoly& g;
  CPoly fx, fy, gx, gy;

  Bivariate(const CPoly& f_, const CPoly& g_)
      : f(f_), g(g_), fx(f_.derivative(0)), fy(f_.derivative(1)), gx(g_.derivative(0)),
        gy(g_.derivative(1)) {}

  double scaled_residual(const CVec& p) const {
    const double m = std::max({1.0, std::abs(p[0]), std::abs(p[1])});
    const double sf = f.norm1() * std::pow(m, std::max(f.total_degree(), 0));
    const double sg = g.norm1() * std::pow(m, std::max(g.total_degree(), 0));
    return std::max(std::abs(f.eval(p)) / sf, std::abs(g.eval(p)) / sg);
  }

  void newton(CVec& p) const {
    double r = scaled_residual(p);
    for (int it = 0; it < 30 && r > 0; ++it) {
      const Complex a = fx.eval(p), b = fy.eval(p), c = gx.eval(p), d = gy.eval(p);
      const Complex det = a * d - b * c;
      if (std::abs(det) == 0) return;
      const Complex F = f.eval(p), G = g.eval(p);
      const CVec q{p[0] - (d * F - b * G) / det, p[1] - (-c * F + a * G) / det};
      const double rq = scaled_residual(q);
      if (!(rq < r)) return;
      const double step = std::abs(q[0] - p[0]) + std::abs(q[1] - p[1]);
      p = q;
      r = rq;
      if (step <= 4 * kEps * std::max({1.0, std::abs(p[0]), std::abs(p[1])})) return;
    }
  }
};

// Dense coefficients of p in variable v at x_u = u.
CPoly1 restrict_to(const CPoly& p, std::size_t v, Complex u) {
  const std::size_t uvar = 1 - v;
  CVec c(static_cast<std::size_t>(std::max(p.degree_in(v), 0)) + 1, Complex(0));
  for (const auto& [e, coef] : p.terms())
    c[static_cast<std::size_t>(e[v])] += coef * std::pow(u, e[uvar]);
  return CPoly1(std::move(c));
}

Complex sylvester_det(const CPoly1& a, const CPoly1& b, double& hadamard) {
  const std::size_t m = a.coeffs.size() - 1, l = b.coeffs.size() - 1;
  const std::size_t size = m + l;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(size),
                                              static_cast<Eigen::Index>(size));
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t i = 0; i <= m; ++i)
      s(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r + i)) = a.coeffs[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= l; ++j)
      s(static_cast<Eigen::Index>(l + r), static_cast<Eigen::Index>(r + j)) = b.coeffs[l - j];
  hadamard = 1;
  for (Eigen::Index r = 0; r < s.rows(); ++r) hadamard *= s.row(r).norm();
  return s.partialPivLu().determinant();
}

std::vector<std::pair<Complex, int>> grouped(const std::vector<Root>& roots) {
  std::vector<std::pair<Complex, int>> out;
  for (const auto& r : roots) {
    bool merged = false;
    for (auto& [v, mult] : out)
      if (v == r.value) {
        merged = true;
        break;
      }
    if (!merged) out.emplace_back(r.value, r.multiplicity);
  }
  return out;
}

}  // namespace

SolutionSet solve_bivariate(const CPoly& f, const CPoly& g, const SolveConfig& cfg) {
  if (f.nvars() != 2 || g.nvars() != 2) throw InputError("solve_bivariate needs two variables");
  if (f.is_zero() || g.is_zero())
    throw DegenerateSystemError("a polynomial of the system is identically zero");

  const int tf = f.total_degree(), tg = g.total_degree();
  auto bound = [&](std::size_t v) {
    const std::size_t u = 1 - v;
    return std::min(f.degree_in(v) * g.degree_in(u) + g.degree_in(v) * f.degree_in(u), tf * tg);
  };
  auto usable = [&](std::size_t v) { return f.degree_in(v) + g.degree_in(v) >= 1; };
  std::size_t v = 1;
  if (!usable(1) || (usable(0) && bound(0) < bound(1))) v = 0;
  if (!usable(v)) throw DegenerateSystemError("both polynomials are constant");
  const std::size_t u = 1 - v;

  SolutionSet sols;
  sols.eliminated = v;
  const Bivariate sys(f, g);

  // Candidate projections (u value, expected number of solutions above it).
  std::vector<std::pair<Complex, int>> u_roots;
  const bool f_flat = f.degree_in(v) == 0, g_flat = g.degree_in(v) == 0;
  if (f_flat || g_flat) {
    const CPoly& flat = f_flat ? f : g;
    const CPoly& other = f_flat ? g : f;
    CVec c(static_cast<std::size_t>(flat.degree_in(u)) + 1, Complex(0));
    for (const auto& [e, coef] : flat.terms()) c[static_cast<std::size_t>(e[u])] += coef;
    const CPoly1 pu = CPoly1(c).trimmed(1e-14);
    sols.resultant_degree = pu.degree();
    if (pu.degree() <= 0) return sols;
    for (auto [ur, mult] : grouped(univariate_roots(pu, cfg))) {
      const CPoly1 ov = restrict_to(other, v, ur).trimmed(1e-12);
      if (ov.degree() < 0)
        throw DegenerateSystemError("common component over a root of a one-variable equation");
      u_roots.emplace_back(ur, mult * std::max(ov.degree(), 0));
    }
  } else {
    const int d = bound(v);
    const std::size_t samples = static_cast<std::size_t>(d) + 1;
    CVec values(samples);
    double worst = 0;
    for (std::size_t k = 0; k < samples; ++k) {
      const Complex uk = std::polar(1.0, 2 * kPi * static_cast<double>(k) / static_cast<double>(samples));
      double had = 1;
      values[k] = sylvester_det(restrict_to(f, v, uk), restrict_to(g, v, uk), had);
      worst = std::max(worst, had > 0 ? std::abs(values[k]) / had : 0.0);
    }
    if (worst < 1e-11)
      throw DegenerateSystemError("resultant vanishes identically (common component)");
    CVec coeffs(samples, Complex(0));
    for (std::size_t j = 0; j < samples; ++j) {
      for (std::size_t k = 0; k < samples; ++k)
        coeffs[j] += values[k] * std::polar(1.0, -2 * kPi * static_cast<double>(j * k % samples) /
                                                     static_cast<double>(samples));
      coeffs[j] /= static_cast<double>(samples);
    }
    const CPoly1 res = CPoly1(coeffs).trimmed(1e-12);
    sols.resultant_degree = res.degree();
    if (res.degree() <= 0) return sols;
    u_roots = grouped(univariate_roots(res, cfg));
  }

  constexpr double kAccept = 1e-6;
  for (const auto& [ur, mult] : u_roots) {
    std::vector<CVec> cands;
    for (const CPoly* p : {&f, &g}) {
      const CPoly1 pv = restrict_to(*p, v, ur).trimmed(1e-12);
      if (pv.degree() < 1) continue;
      for (const auto& r : univariate_roots(pv, cfg)) {
        CVec pt(2);
        pt[u] = ur;
        pt[v] = r.value;
        sys.newton(pt);
        // Newton may wander onto the fibre of another projection root.
        bool own = std::abs(pt[u] - ur) <= 1e-4 * std::max(1.0, std::abs(ur));
        for (const auto& [other, m2] : u_roots)
          if (other != ur && std::abs(pt[u] - other) < std::abs(pt[u] - ur)) own = false;
        if (own) cands.push_back(pt);
      }
    }
    std::sort(cands.begin(), cands.end(), [&](const CVec& a, const CVec& b) {
      return sys.scaled_residual(a) < sys.scaled_residual(b);
    });
    std::vector<CVec> chosen;
    for (const auto& c : cands) {
      if (static_cast<int>(chosen.size()) >= mult) break;
      if (sys.scaled_residual(c) > kAccept) break;
      const bool dup = std::any_of(chosen.begin(), chosen.end(), [&](const CVec& o) {
        return std::abs(o[0] - c[0]) + std::abs(o[1] - c[1]) <=
               cfg.cluster * std::max({1.0, std::abs(c[0]), std::abs(c[1])});
      });
      if (!dup) chosen.push_back(c);
    }
    for (const auto& c : chosen) {
      const bool dup = std::any_of(sols.points.begin(), sols.points.end(), [&](const CVec& o) {
        return std::abs(o[0] - c[0]) + std::abs(o[1] - c[1]) <=
               cfg.cluster * std::max({1.0, std::abs(c[0]), std::abs(c[1])});
      });
      if (dup) continue;
      sols.points.push_back(c);
      const double raw = std::max(std::abs(f.eval(c)), std::abs(g.eval(c)));
      sols.residuals.push_back(raw);
      sols.jacobians.push_back(jacobian_det({f, g}, c));
      sols.flagged.push_back(mult > 1 || sys.scaled_residual(c) > cfg.tol);
    }
  }
  return sols;
}

Complex residue_sum(const CPoly& h, const std::vector<CPoly>& system, const SolutionSet& sols,
                    const SolveConfig& cfg) {
  const std::size_t n = system.size();
  Complex total = 0;
  for (const auto& p : sols.points) {
    if (p.size() != n) throw InputError("solution point dimension does not match the system");
    double scale = 1;
    for (const auto& fi : system) {
      double g2 = 0;
      for (std::size_t j = 0; j < n; ++j) g2 += std::norm(fi.derivative(j).eval(p));
      scale *= std::sqrt(g2);
    }
    const Complex jac = jacobian_det(system, p);
    if (std::abs(jac) < cfg.singular * scale || jac == Complex(0))
      throw NonTransversalError("|J| = " + std::to_string(std::abs(jac)) + " at a common zero");
    total += h.eval(p) / jac;
  }
  return total;
}

}  // namespace toricabel
