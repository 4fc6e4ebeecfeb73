#include "toricabel/abel_trace.hpp"

#include "toricabel/decomposition.hpp"
#include "toricabel/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace toricabel {

namespace {

constexpr double kPi = 3.14159265358979323846;

Exponent to_exponent(const IntVec& e) {
  Exponent out;
  for (const auto& x : e) out.push_back(static_cast<int>(to_int64(x)));
  return out;
}

CPoly constant(std::size_t nvars, Complex c) {
  CPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

CPoly linear_form(const CVec& c) {
  CPoly y(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    Exponent e(c.size(), 0);
    e[i] = 1;
    y.add_term(e, c[i]);
  }
  return y;
}

Complex monomial(const CVec& p, const Exponent& e) {
  Complex r = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) r *= std::pow(p[i], e[i]);
  return r;
}

CPoly horner(const CVec& coeffs, const CPoly& u) {
  CPoly r(u.nvars());
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    r = r * u;
    r += constant(u.nvars(), coeffs[i]);
  }
  return r;
}

// Geometric growth rate of |seq_k|: exp of the least-squares slope of log|seq_k|.
// Entries at roundoff level relative to the largest (vanishing traces) are skipped.
double growth_rate(const CVec& seq, std::size_t len) {
  double top = 0;
  for (std::size_t k = 0; k < len; ++k) top = std::max(top, std::abs(seq[k]));
  double sk = 0, sl = 0, skk = 0, skl = 0, cnt = 0;
  for (std::size_t k = 0; k < len; ++k) {
    const double a = std::abs(seq[k]);
    if (!(a > 1e-11 * top) || !(a > 1e-300)) continue;
    const double l = std::log(a), x = static_cast<double>(k);
    sk += x;
    sl += l;
    skk += x * x;
    skl += x * l;
    cnt += 1;
  }
  if (cnt < 2) return 1.0;
  const double den = cnt * skk - sk * sk;
  if (!(den > 0)) return 1.0;
  return std::clamp(std::exp((cnt * skl - sk * sl) / den), 1e-8, 1e8);
}

// Solves sum_j seq[i + j] x_j = rhs_i (i, j < n), where rhs_i sits at index
// offset + i of the same geometric sequence.  Rows and columns are equilibrated
// by the growth rate s of seq; rcond refers to the equilibrated matrix.
CVec hankel_solve(const CVec& seq, const CVec& rhs, std::size_t n, std::size_t offset,
                  double& rcond) {
  const double s = growth_rate(seq, 2 * n - 1);
  Eigen::MatrixXcd h(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::VectorXcd b(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    b(static_cast<Eigen::Index>(i)) = rhs[i] / std::pow(s, static_cast<double>(offset + i));
    for (std::size_t j = 0; j < n; ++j)
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          seq[i + j] / std::pow(s, static_cast<double>(i + j));
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  rcond = sv(0) > 0 ? sv(sv.size() - 1) / sv(0) : 0.0;
  const Eigen::VectorXcd x = svd.solve(b);
  CVec out(n);
  for (std::size_t j = 0; j < n; ++j)
    out[j] = x(static_cast<Eigen::Index>(j)) *
             std::pow(s, static_cast<double>(offset) - static_cast<double>(j));
  return out;
}

double grad_norm(const CPoly& p, const CVec& x) {
  double s = 0;
  for (std::size_t j = 0; j < p.nvars(); ++j) s += std::norm(p.derivative(j).eval(x));
  return std::sqrt(s);
}

// Denominators equal up to roundoff are shared; constant ones are folded away.
struct Assembled {
  CPoly num;
  CPoly den;
  /// max|num coeff| over the largest coefficient among the summed terms.
  double cancellation = 1;
};

Assembled assemble(const FitSet& fs, bool monic_top, const LineFamily& fam, const Section& a_prime,
                   const CVec& c) {
  const std::size_t nv = fam.exponents.front().size();
  const CPoly y = linear_form(c);
  const CPoly lp = fam.l_prime(a_prime);
  const std::size_t n = fs.fits.size();

  std::vector<CVec> dens;
  std::vector<int> which(n, -1);
  std::vector<Complex> folded(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    CVec d = fs.fits[j].den;
    double mx = 0;
    for (const auto& x : d) mx = std::max(mx, std::abs(x));
    while (d.size() > 1 && std::abs(d.back()) <= 1e-9 * mx) d.pop_back();
    if (d.size() == 1) {
      folded[j] = 1.0 / d[0];
      continue;
    }
    for (auto& x : d) x /= d.back();
    for (std::size_t r = 0; r < dens.size() && which[j] < 0; ++r) {
      if (dens[r].size() != d.size()) continue;
      double diff = 0, size = 1;
      for (std::size_t i = 0; i < d.size(); ++i) {
        diff = std::max(diff, std::abs(dens[r][i] - d[i]));
        size = std::max(size, std::abs(d[i]));
      }
      if (diff <= 1e-9 * size) which[j] = static_cast<int>(r);
    }
    if (which[j] < 0) {
      which[j] = static_cast<int>(dens.size());
      dens.push_back(d);
    }
    // The numerator absorbs the leading coefficient of the denominator.
    CVec orig = fs.fits[j].den;
    while (orig.size() > d.size()) orig.pop_back();
    folded[j] = 1.0 / orig.back();
  }

  const RationalFit& f0 = fs.fits.front();
  CPoly u = (1.0 / f0.scale) * lp;
  u += constant(nv, -f0.center / f0.scale);

  std::vector<CPoly> den_polys;
  for (const auto& d : dens) den_polys.push_back(horner(d, u));
  auto product_except = [&](int skip) {
    CPoly p = constant(nv, 1.0);
    for (std::size_t r = 0; r < den_polys.size(); ++r)
      if (static_cast<int>(r) != skip) p = p * den_polys[r];
    return p;
  };

  Assembled out{CPoly(nv), product_except(-1)};
  double gross = 0;
  if (monic_top) {
    out.num = out.den * pow(y, static_cast<int>(n));
    gross = out.num.max_abs_coeff();
  }
  for (std::size_t j = 0; j < n; ++j) {
    CPoly term = folded[j] * horner(fs.fits[j].num, u);
    term = term * product_except(which[j]) * pow(y, static_cast<int>(j));
    gross = std::max(gross, term.max_abs_coeff());
    out.num += term;
  }
  out.cancellation = gross > 0 ? out.num.max_abs_coeff() / gross : 1.0;
  return out;
}

CVec monic_den(const RationalFit& f) {
  CVec d = f.den;
  for (auto& x : d) x /= d.back();
  return d;
}

// Fits whose monic denominators agree to 1e-5 are refit with one shared
// denominator; the group keeps it when no held-out residual leaves tol or
// grows past 100 times the separate fits.
void share_denominators(const CVec& nodes, const std::vector<CVec>& values, std::vector<RationalFit>& fits,
                        double tol) {
  std::vector<bool> done(fits.size(), false);
  for (std::size_t i = 0; i < fits.size(); ++i) {
    if (done[i] || fits[i].den_degree() < 1) continue;
    const CVec di = monic_den(fits[i]);
    std::vector<std::size_t> group{i};
    for (std::size_t j = i + 1; j < fits.size(); ++j) {
      if (done[j] || fits[j].den_degree() != fits[i].den_degree()) continue;
      const CVec dj = monic_den(fits[j]);
      double diff = 0, size = 1;
      for (std::size_t k = 0; k < di.size(); ++k) {
        diff = std::max(diff, std::abs(di[k] - dj[k]));
        size = std::max(size, std::abs(di[k]));
      }
      if (diff <= 1e-5 * size) group.push_back(j);
    }
    for (std::size_t j : group) done[j] = true;
    if (group.size() < 2) continue;
    std::vector<CVec> vals;
    std::vector<int> dnums;
    double before = 1e-14;
    for (std::size_t j : group) {
      vals.push_back(values[j]);
      dnums.push_back(fits[j].num_degree());
      before = std::max(before, fits[j].heldout);
    }
    std::vector<RationalFit> joint;
    try {
      joint = fit_shared_denominator(nodes, vals, dnums, fits[i].den_degree());
    } catch (const InputError&) {
      continue;
    }
    double after = 0;
    for (const auto& f : joint) after = std::max(after, f.heldout);
    if (!(after <= tol && after <= 100 * before)) continue;
    for (std::size_t k = 0; k < group.size(); ++k) fits[group[k]] = std::move(joint[k]);
  }
}

// Components below 1e-10 of the largest one are roundoff and are fitted as 0.
FitSet fit_components(const CVec& nodes, const std::vector<CVec>& values, int cap, double tol) {
  double overall = 0;
  for (const auto& v : values)
    for (const auto& x : v) overall = std::max(overall, std::abs(x));
  FitSet fs;
  // One shared denominator first; separate fits are the fallback.
  std::vector<CVec> live;
  for (const auto& v : values) {
    double mx = 0;
    for (const auto& x : v) mx = std::max(mx, std::abs(x));
    if (mx > 1e-10 * overall) live.push_back(v);
  }
  std::vector<RationalFit> joint;
  if (!live.empty()) joint = fit_minimal_shared(nodes, live, cap, cap, tol);
  if (!joint.empty()) {
    std::size_t next = 0;
    for (const auto& v : values) {
      double mx = 0;
      for (const auto& x : v) mx = std::max(mx, std::abs(x));
      RationalFit fit;
      if (mx > 1e-10 * overall) {
        fit = std::move(joint[next++]);
      } else {
        fit.num = {Complex(0)};
        fit.den = {Complex(1)};
      }
      fs.max_heldout = std::max(fs.max_heldout, fit.heldout);
      fs.max_residual = std::max(fs.max_residual, fit.residual);
      fs.fits.push_back(std::move(fit));
    }
    return fs;
  }
  for (const auto& v : values) {
    RationalFit fit = fit_minimal_rational(nodes, v, cap, cap, tol);
    double mx = 0;
    for (const auto& x : v) mx = std::max(mx, std::abs(x));
    if (mx <= 1e-10 * overall) {
      fit.num = {Complex(0)};
      fit.den = {Complex(1)};
      fit.residual = fit.heldout = 0;
    }
    fs.fits.push_back(std::move(fit));
  }
  share_denominators(nodes, values, fs.fits, tol);
  for (const auto& fit : fs.fits) {
    fs.max_heldout = std::max(fs.max_heldout, fit.heldout);
    fs.max_residual = std::max(fs.max_residual, fit.residual);
  }
  return fs;
}

CVec dft_restrict(const CPoly& q, const CVec& p0, const CVec& d, std::size_t deg) {
  const std::size_t k = deg + 1;
  CVec vals(k), coeffs(k, Complex(0));
  for (std::size_t i = 0; i < k; ++i) {
    const Complex t = std::polar(1.0, 2 * kPi * static_cast<double>(i) / static_cast<double>(k));
    vals[i] = q.eval({p0[0] + t * d[0], p0[1] + t * d[1]});
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i)
      coeffs[j] += vals[i] * std::polar(1.0, -2 * kPi * static_cast<double>(i * j % k) /
                                                 static_cast<double>(k));
    coeffs[j] /= static_cast<double>(k);
  }
  return coeffs;
}

// |q(x)| relative to the sum of the absolute values of its terms at x.
double normalized_value(const CPoly& q, const CVec& x) {
  double gross = 0;
  for (const auto& [e, c] : q.terms()) gross += std::abs(c * monomial(x, e));
  return gross > 0 ? std::abs(q.eval(x)) / gross : 0.0;
}

}  // namespace

LineFamily::LineFamily(const LineBundle& l, const Cone& s) : sigma(s) {
  const ChartData& cd = l.chart(sigma);
  bool found = false;
  for (const auto& m : l.polytope().lattice_points()) {
    exponents.push_back(to_exponent(cd.frame.apply(sub(m, cd.s))));
    if (std::all_of(exponents.back().begin(), exponents.back().end(), [](int e) { return e == 0; })) {
      zero_index = exponents.size() - 1;
      found = true;
    }
  }
  if (!found)
    throw DegeneracyError("sections have no constant term in chart " + to_string(sigma));
}

CPoly LineFamily::line(const Section& a) const {
  if (a.size() != exponents.size()) throw InputError("section size does not match the bundle");
  CPoly p(exponents.front().size());
  for (std::size_t i = 0; i < a.size(); ++i) p.add_term(exponents[i], a[i]);
  return p;
}

CPoly LineFamily::l_prime(const Section& a) const {
  if (a.size() != exponents.size()) throw InputError("section size does not match the bundle");
  CPoly p(exponents.front().size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (i != zero_index) p.add_term(exponents[i], -a[i]);
  return p;
}

SolutionSet intersection_points(const CurveData& curve, const LineFamily& fam, const Section& a,
                                const TraceConfig& cfg) {
  const CPoly l = fam.line(a);
  SolutionSet sols = solve_bivariate(curve.f, l, cfg.solve);
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const double scale = grad_norm(curve.f, sols.points[i]) * grad_norm(l, sols.points[i]);
    if (std::abs(sols.jacobians[i]) < cfg.solve.singular * scale)
      throw NonTransversalError("|J| = " + std::to_string(std::abs(sols.jacobians[i])));
  }
  return sols;
}

PowerTraces power_traces(const CurveData& curve, const FormData& form, const LineFamily& fam,
                         const SolutionSet& sols, const Section& a, const CVec& c, std::size_t K) {
  const CPoly l = fam.line(a);
  PowerTraces pt{CVec(K + 1, Complex(0)), CVec(K + 1, Complex(0))};
  for (const auto& p : sols.points) {
    const Complex jac = jacobian_det({curve.f, l}, p);
    const Complex y = c[0] * p[0] + c[1] * p[1];
    const Complex wh = form.h.eval(p) / jac, w1 = 1.0 / jac;
    Complex yk = 1;
    for (std::size_t k = 0; k <= K; ++k, yk *= y) {
      pt.w[k] += yk * wh;
      pt.t[k] += yk * w1;
    }
  }
  return pt;
}

PowerTraces power_traces(const CurveData& curve, const FormData& form, const LineFamily& fam,
                         const Section& a, const CVec& c, std::size_t K, const TraceConfig& cfg) {
  return power_traces(curve, form, fam, intersection_points(curve, fam, a, cfg), a, c, K);
}

CVec trace_form_coefficients(const CurveData& curve, const FormData& form, const LineFamily& fam,
                             const Section& a, const std::vector<Exponent>& ms,
                             const TraceConfig& cfg) {
  const SolutionSet sols = intersection_points(curve, fam, a, cfg);
  const CPoly l = fam.line(a);
  CVec v(ms.size(), Complex(0));
  for (const auto& p : sols.points) {
    const Complex wh = form.h.eval(p) / jacobian_det({curve.f, l}, p);
    for (std::size_t i = 0; i < ms.size(); ++i) v[i] += monomial(p, ms[i]) * wh;
  }
  return v;
}

Section TraceDataset::section_at(Complex a0) const {
  Section a = a_prime;
  a[family.zero_index] = a0;
  return a;
}

std::size_t TraceDataset::kept_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TraceNode& n) { return n.kept; }));
}

std::size_t TraceDataset::singular_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [](const TraceNode& n) { return n.kept && n.singular; }));
}

CVec radial_grid(Complex center, double radius, std::size_t count) {
  CVec g;
  for (std::size_t k = 0; k < count; ++k) {
    const double r = (k % 2 == 0) ? radius : 0.6 * radius;
    g.push_back(center +
                std::polar(r, 2 * kPi * static_cast<double>(k) / static_cast<double>(count) + 0.3));
  }
  return g;
}

TraceDataset build_dataset(const CurveData& curve, const FormData& form, const LineFamily& fam,
                           const Section& a_prime, const CVec& c, const CVec& grid, std::size_t N,
                           const TraceConfig& cfg) {
  TraceDataset ds;
  ds.family = fam;
  ds.a_prime = a_prime;
  ds.c = c;
  ds.N = N;
  for (const auto& a0 : grid) {
    TraceNode node;
    node.a0 = a0;
    const Section a = ds.section_at(a0);
    try {
      const SolutionSet sols = intersection_points(curve, fam, a, cfg);
      node.count = sols.size();
      if (sols.size() != N) {
        node.note = "count " + std::to_string(sols.size()) + " != " + std::to_string(N);
      } else if (std::any_of(sols.flagged.begin(), sols.flagged.end(), [](bool b) { return b; })) {
        node.note = "ambiguous root pairing";
      } else {
        for (const auto& p : sols.points) node.y.push_back(c[0] * p[0] + c[1] * p[1]);
        bool separated = true;
        for (std::size_t i = 0; i < node.y.size(); ++i)
          for (std::size_t j = i + 1; j < node.y.size(); ++j)
            if (std::abs(node.y[i] - node.y[j]) < cfg.separation) separated = false;
        if (!separated) {
          node.note = "y = c.x does not separate the points";
        } else {
          const PowerTraces pt = power_traces(curve, form, fam, sols, a, c, 2 * N - 1);
          node.w = pt.w;
          CVec rhs(N);
          for (std::size_t i = 0; i < N; ++i) rhs[i] = -pt.w[N + i];
          node.sigma = hankel_solve(pt.w, rhs, N, N, node.rcond);
          node.singular = !(node.rcond >= cfg.hankel_rcond);
          node.kept = true;
        }
      }
    } catch (const DegeneracyError& e) {
      node.note = e.what();
    }
    if (!node.kept) ds.log.push_back("dropped node a0 = (" + std::to_string(a0.real()) + "," +
                                     std::to_string(a0.imag()) + "): " + node.note);
    ds.nodes.push_back(std::move(node));
  }
  return ds;
}

double propagation_check(const CurveData& curve, const FormData& form, const TraceDataset& ds,
                         const Exponent& m, const Exponent& m_prime, double step,
                         std::size_t probes, const TraceConfig& cfg) {
  const LineFamily& fam = ds.family;
  std::size_t im = fam.size();
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (i != fam.zero_index && fam.exponents[i] == m) im = i;
  if (im == fam.size()) throw InputError("exponent is not a non-constant monomial of the sections");
  Exponent sum(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) sum[i] = m[i] + m_prime[i];

  // Probes are the best-conditioned nodes: far from tangency.
  std::vector<const TraceNode*> kept;
  for (const auto& n : ds.nodes)
    if (n.kept && !n.singular) kept.push_back(&n);
  if (kept.empty()) throw InputError("grid too coarse: no usable nodes for central differences");
  std::stable_sort(kept.begin(), kept.end(),
                   [](const TraceNode* x, const TraceNode* y) { return x->rcond > y->rcond; });
  probes = std::min(probes, kept.size());

  double worst = 0;
  for (std::size_t p = 0; p < probes; ++p) {
    const TraceNode& node = *kept[p];
    const Section a = ds.section_at(node.a0);
    auto shifted = [&](std::size_t idx, double h) {
      Section b = a;
      b[idx] += h;
      return b;
    };
    const std::vector<Exponent> want{m_prime, sum};
    const CVec vp_m = trace_form_coefficients(curve, form, fam, shifted(im, step), want, cfg);
    const CVec vm_m = trace_form_coefficients(curve, form, fam, shifted(im, -step), want, cfg);
    const CVec vp_0 = trace_form_coefficients(curve, form, fam, shifted(fam.zero_index, step), want, cfg);
    const CVec vm_0 = trace_form_coefficients(curve, form, fam, shifted(fam.zero_index, -step), want, cfg);
    const Complex d1 = (vp_m[0] - vm_m[0]) / (2 * step);
    const Complex d2 = (vp_0[1] - vm_0[1]) / (2 * step);
    worst = std::max(worst, std::abs(d1 - d2));
  }
  return worst;
}

FitSet fit_trace_matrix(const TraceDataset& ds, int cap_extra, double tol) {
  const std::size_t kept = ds.kept_count(), singular = ds.singular_count();
  if (kept == 0) throw DegenerateFormError("no usable grid nodes");
  if (5 * singular > kept)
    throw DegenerateFormError("trace matrix singular on " + std::to_string(singular) + " of " +
                              std::to_string(kept) + " nodes");
  CVec nodes;
  std::vector<CVec> values(ds.N);
  for (const auto& n : ds.nodes) {
    if (!n.kept || n.singular) continue;
    nodes.push_back(n.a0);
    for (std::size_t j = 0; j < ds.N; ++j) values[j].push_back(n.sigma[j]);
  }
  return fit_components(nodes, values, static_cast<int>(ds.N) + cap_extra, tol);
}

CPoly substitute_fits(const FitSet& fits, const LineFamily& fam, const Section& a_prime,
                      const CVec& c, double* cancellation) {
  Assembled as = assemble(fits, true, fam, a_prime, c);
  if (cancellation) *cancellation = as.cancellation;
  return std::move(as.num);
}

HypersurfaceFit extract_hypersurface(const CPoly& q_a, const CPoly& q_b, const HPolytope& target,
                                     std::mt19937_64& rng) {
  std::vector<Exponent> monos;
  for (const auto& m : target.lattice_points()) monos.push_back(to_exponent(m));
  if (monos.size() < 2) throw InputError("target Newton polytope has fewer than two monomials");
  const std::size_t want = 3 * monos.size();
  const int deg = q_a.total_degree();
  if (deg < 1) throw DegenerateFormError("reconstructed polynomial is constant");

  HypersurfaceFit out;
  SolveConfig loose;
  loose.tol = 1e-8;
  for (int line = 0; line < 80 && out.samples.size() < want; ++line) {
    const CVec p0{random_disc(rng), random_disc(rng)};
    const CVec d{random_circle(rng), random_circle(rng)};
    const CPoly1 r = CPoly1(dft_restrict(q_a, p0, d, static_cast<std::size_t>(deg))).trimmed(1e-12);
    if (r.degree() < 1) continue;
    std::vector<Root> roots;
    try {
      roots = univariate_roots(r, loose);
    } catch (const NumericError&) {
      continue;
    }
    for (const auto& t : roots) {
      if (t.multiplicity > 1 || std::abs(t.value) > 1e3) continue;
      const CVec x{p0[0] + t.value * d[0], p0[1] + t.value * d[1]};
      if (normalized_value(q_b, x) <= 1e-7) out.samples.push_back(x);
    }
  }
  if (out.samples.size() < monos.size() + 1)
    throw NumericError("only " + std::to_string(out.samples.size()) +
                       " points sampled on the reconstructed curve");

  const auto rows = static_cast<Eigen::Index>(out.samples.size());
  const auto cols = static_cast<Eigen::Index>(monos.size());
  Eigen::MatrixXcd a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j)
      a(i, j) = monomial(out.samples[static_cast<std::size_t>(i)], monos[static_cast<std::size_t>(j)]);
    a.row(i) /= a.row(i).norm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  out.null_ratio = s(cols - 1) / s(0);
  if (cols >= 2 && s(cols - 2) / s(0) < 1e-8)
    throw DegenerateSystemError("sampled points do not determine a unique curve on the target support");
  const Eigen::VectorXcd v = svd.matrixV().col(cols - 1);
  Eigen::Index big = 0;
  for (Eigen::Index j = 1; j < cols; ++j)
    if (std::abs(v(j)) > std::abs(v(big))) big = j;
  out.f_tilde = CPoly(2);
  for (Eigen::Index j = 0; j < cols; ++j)
    out.f_tilde.add_term(monos[static_cast<std::size_t>(j)], v(j) / v(big));
  return out;
}

FormFit reconstruct_form(const TraceDataset& ds, const CurveData& recovered, int cap_extra,
                         double tol, const TraceConfig& cfg) {
  const std::size_t N = ds.N;
  const FormData unit{constant(2, 1.0)};
  CVec nodes;
  std::vector<CVec> values(N);
  std::size_t singular = 0, used = 0;
  for (const auto& n : ds.nodes) {
    if (!n.kept || n.singular) continue;
    const Section a = ds.section_at(n.a0);
    SolutionSet sols;
    try {
      sols = intersection_points(recovered, ds.family, a, cfg);
    } catch (const DegeneracyError&) {
      continue;
    }
    if (sols.size() != N) continue;
    ++used;
    const PowerTraces pt = power_traces(recovered, unit, ds.family, sols, a, ds.c, 2 * N - 2);
    double rcond = 0;
    const CVec tau =
        hankel_solve(pt.t, CVec(n.w.begin(), n.w.begin() + static_cast<long>(N)), N, 0, rcond);
    if (!(rcond >= cfg.hankel_rcond)) {
      ++singular;
      continue;
    }
    nodes.push_back(n.a0);
    for (std::size_t j = 0; j < N; ++j) values[j].push_back(tau[j]);
  }
  if (used == 0 || 5 * singular > used)
    throw DegenerateFormError("t-Hankel system singular on " + std::to_string(singular) + " of " +
                              std::to_string(used) + " nodes");
  FormFit ff;
  ff.tau = fit_components(nodes, values, static_cast<int>(N) + cap_extra, tol);
  Assembled as = assemble(ff.tau, false, ds.family, ds.a_prime, ds.c);
  ff.num = std::move(as.num);
  ff.den = std::move(as.den);
  return ff;
}

double scaled_distance(const CPoly& g, const CPoly& f, Complex& lambda) {
  Complex num = 0;
  double den = 0;
  for (const auto& [e, c] : f.terms()) {
    num += std::conj(c) * g.coeff(e);
    den += std::norm(c);
  }
  lambda = den > 0 ? num / den : Complex(0);
  double err = 0, ref = 0;
  for (const auto& [e, c] : f.terms()) {
    err = std::max(err, std::abs(g.coeff(e) - lambda * c));
    ref = std::max(ref, std::abs(lambda * c));
  }
  for (const auto& [e, c] : g.terms())
    if (f.coeff(e) == Complex(0)) err = std::max(err, std::abs(c));
  return ref > 0 ? err / ref : std::numeric_limits<double>::infinity();
}

std::optional<Cone> star_chart(const SplitBundle& e) {
  for (const auto& sigma : e.fan().max_cones())
    if (satisfies_condition_star(e, sigma)) return sigma;
  return std::nullopt;
}

Complex random_disc(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::polar(std::sqrt(u), 2 * kPi * v);
}

Complex random_circle(std::mt19937_64& rng) {
  const double v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::polar(1.0, 2 * kPi * v);
}

CurveData random_curve(const HPolytope& newton, std::mt19937_64& rng) {
  CurveData cd{CPoly(newton.n()), newton};
  for (const auto& m : newton.lattice_points()) cd.f.add_term(to_exponent(m), random_disc(rng));
  return cd;
}

FormData random_form(const HPolytope& support, std::mt19937_64& rng) {
  FormData fd{CPoly(support.n())};
  for (const auto& m : support.lattice_points()) fd.h.add_term(to_exponent(m), random_disc(rng));
  return fd;
}

HPolytope chart_newton(const Fan& fan, const TDivisor& d, const Cone& sigma) {
  const HPolytope p = polytope_from_divisor(fan, d.k);
  if (p.empty()) throw NoSectionsError("curve class " + to_string(d.k));
  const ChartFrame frame = chart_frame(fan, sigma);
  const RatVec s = to_rational(local_vertex(fan, d, sigma));
  std::vector<RatVec> pts;
  for (const auto& v : p.vertices()) pts.push_back(frame.apply(sub(v, s)));
  return HPolytope::from_points(fan.n(), pts);
}

InversionReport invert(const CurveData& curve, const FormData& form, const LineBundle& l,
                       const InversionConfig& cfg) {
  const Fan& fan = l.fan();
  if (fan.n() != 2) throw InputError("inversion is implemented for surfaces (n = 2)");
  const SplitBundle e(l.fan_ptr(), {l});
  const auto sigma = star_chart(e);
  if (!sigma) throw DegeneracyError("condition (*) fails on every chart");

  InversionReport rep;
  rep.sigma = *sigma;
  const LineFamily fam(l, *sigma);
  const ChartData& cd = l.chart(*sigma);

  const Rational mv = mixed_volume(PolytopeFamily({curve.newton, cd.delta}), 2);
  rep.N = static_cast<std::size_t>(to_int64(numerator(mv)));
  std::vector<IntVec> support;
  for (const auto& ex : curve.newton.lattice_points()) {
    IntVec m(2, Integer(0));
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t c = 0; c < 2; ++c) m[c] += ex[j] * cd.frame.dual_basis[j][c];
    support.push_back(m);
  }
  rep.N_cycle = static_cast<std::size_t>(to_int64(cycle_intersection(e, hypersurface_cycle(fan, support))));
  if (rep.N != rep.N_cycle)
    rep.log.push_back("mixed volume " + std::to_string(rep.N) + " != cycle intersection " +
                      std::to_string(rep.N_cycle));
  if (rep.N == 0) throw DegeneracyError("the curve does not meet the sections");
  const std::size_t N = rep.N;

  std::mt19937_64 rng(cfg.seed);
  const std::size_t count = cfg.grid_nodes ? cfg.grid_nodes : 4 * N + 12;
  const CVec grid = radial_grid(0.0, cfg.grid_radius, count);

  struct Run {
    TraceDataset ds;
    FitSet fits;
    CPoly q;
  };
  // (a', c) is resampled when too few nodes survive, when the trace matrix is
  // singular on too many nodes, when Q loses too many digits to cancellation,
  // or when the sigma fits miss the held-out tolerance.  In the last case the
  // best attempt is kept if none meets it.
  auto run = [&](const char* label) {
    std::string last;
    bool all_singular = true;
    std::optional<Run> best;
    for (int attempt = 0; attempt < 5; ++attempt) {
      Section ap(fam.size());
      for (auto& x : ap) x = random_circle(rng);
      ap[fam.zero_index] = 0;
      const CVec c{random_circle(rng), random_circle(rng)};
      Run r{build_dataset(curve, form, fam, ap, c, grid, N, cfg.trace), {}, CPoly(2)};
      if (5 * r.ds.kept_count() < 4 * grid.size()) {
        last = "only " + std::to_string(r.ds.kept_count()) + " of " + std::to_string(grid.size()) +
               " nodes usable";
        all_singular = false;
      } else {
        try {
          r.fits = fit_trace_matrix(r.ds, cfg.cap_extra, cfg.fit_tol);
        } catch (const DegenerateFormError& e) {
          last = e.what();
          rep.log.push_back(std::string(label) + ": " + last + "; resampling a' and c");
          continue;
        }
        all_singular = false;
        double cancellation = 1;
        r.q = substitute_fits(r.fits, fam, ap, c, &cancellation);
        if (cancellation < cfg.min_cancellation) {
          last = "substitution cancels to " + std::to_string(cancellation) + " of its summands";
        } else if (r.fits.max_heldout > cfg.fit_tol) {
          last = "sigma fits held-out " + std::to_string(r.fits.max_heldout);
          if (!best || r.fits.max_heldout < best->fits.max_heldout) best = std::move(r);
        } else {
          return r;
        }
      }
      rep.log.push_back(std::string(label) + ": " + last + "; resampling a' and c");
    }
    if (best) return std::move(*best);
    if (all_singular) throw DegenerateFormError(last);
    throw DegeneracyError("could not find a generic (a', c): " + last);
  };

  Run a = run("run A");
  rep.dataset_a = std::move(a.ds);
  rep.sigma_fits = std::move(a.fits);
  rep.Q = std::move(a.q);
  Run b = run("run B");
  rep.dataset_b = std::move(b.ds);
  const CPoly& q_b = b.q;

  const HypersurfaceFit hf = extract_hypersurface(rep.Q, q_b, curve.newton, rng);
  const HypersurfaceFit hf_b = extract_hypersurface(q_b, rep.Q, curve.newton, rng);
  Complex mu;
  rep.run_agreement = scaled_distance(hf_b.f_tilde, hf.f_tilde, mu);
  rep.f_tilde = hf.f_tilde;
  rep.curve_error = scaled_distance(rep.f_tilde, curve.f, rep.lambda);

  const CurveData recovered{rep.f_tilde, curve.newton};
  // Both runs can carry the form; the one with the better tau fits is kept.
  std::optional<FormFit> form_a, form_b;
  std::string form_why;
  for (auto [ds, slot] : {std::pair{&rep.dataset_a, &form_a}, std::pair{&rep.dataset_b, &form_b}}) {
    try {
      *slot = reconstruct_form(*ds, recovered, cfg.cap_extra, cfg.fit_tol, cfg.trace);
    } catch (const DegenerateFormError& e) {
      form_why = e.what();
    }
  }
  if (!form_a && !form_b) throw DegenerateFormError(form_why);
  const bool use_b = !form_a || (form_b && form_b->tau.max_heldout < form_a->tau.max_heldout);
  rep.form = std::move(use_b ? *form_b : *form_a);
  if (use_b) rep.log.push_back("form reconstructed from run B");
  double err = 0, ref = 0;
  for (const auto& x : hf.samples) {
    const Complex ht = rep.form.num.eval(x) / rep.form.den.eval(x) / rep.lambda;
    const Complex h = form.h.eval(x);
    err = std::max(err, std::abs(ht - h));
    ref = std::max(ref, std::abs(h));
  }
  rep.form_error = ref > 0 ? err / ref : err;

  Exponent m;
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (i != fam.zero_index) {
      m = fam.exponents[i];
      break;
    }
  // m' = m: with m' = 0 the traces can be affine in a and the difference error vanishes.
  rep.prop_m = m;
  rep.prop_m_prime = m;
  rep.prop_discrepancy = propagation_check(curve, form, rep.dataset_a, m, m, cfg.prop_step, 4, cfg.trace);
  rep.prop_discrepancy_half =
      propagation_check(curve, form, rep.dataset_a, m, m, cfg.prop_step / 2, 4, cfg.trace);

  rep.rational = rep.sigma_fits.max_heldout <= cfg.fit_tol && rep.form.tau.max_heldout <= cfg.fit_tol;
  rep.pass = rep.curve_error <= cfg.accept && rep.form_error <= cfg.accept;
  for (const auto& s : rep.dataset_a.log) rep.log.push_back("run A: " + s);
  for (const auto& s : rep.dataset_b.log) rep.log.push_back("run B: " + s);
  return rep;
}

}  // namespace toricabel
