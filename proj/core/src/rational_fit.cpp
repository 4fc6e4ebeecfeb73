#include "toricabel/rational_fit.hpp"

#include "toricabel/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace toricabel {

namespace {

Complex horner(const CVec& c, Complex u) {
  Complex r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * u + c[i];
  return r;
}

double max_abs(const CVec& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

double relative_error(const RationalFit& fit, const CVec& nodes, const CVec& values) {
  double err = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double e = std::abs(fit.eval(nodes[k]) - values[k]);
    err = std::max(err, std::isfinite(e) ? e : std::numeric_limits<double>::infinity());
  }
  const double ref = max_abs(values);
  return ref > 0 ? err / ref : err;
}

void split(const CVec& nodes, const CVec& values, CVec& tn, CVec& tv, CVec& hn, CVec& hv) {
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k % 4 == 3) {
      hn.push_back(nodes[k]);
      hv.push_back(values[k]);
    } else {
      tn.push_back(nodes[k]);
      tv.push_back(values[k]);
    }
  }
}

RationalFit fit_with_frame(const CVec& nodes, const CVec& values, int dnum, int dden,
                           Complex center, double scale) {
  const auto rows = static_cast<Eigen::Index>(nodes.size());
  const Eigen::Index cols = dnum + dden + 2;
  Eigen::MatrixXcd a(rows, cols);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const Complex u = (nodes[static_cast<std::size_t>(k)] - center) / scale;
    const Complex v = values[static_cast<std::size_t>(k)];
    const double w = 1.0 / std::sqrt(1.0 + std::norm(v));
    Complex up = 1;
    for (int i = 0; i <= dnum; ++i, up *= u) a(k, i) = w * up;
    up = 1;
    for (int j = 0; j <= dden; ++j, up *= u) a(k, dnum + 1 + j) = -w * v * up;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXcd x = svd.matrixV().col(cols - 1);

  RationalFit fit;
  fit.center = center;
  fit.scale = scale;
  fit.num.assign(x.data(), x.data() + dnum + 1);
  fit.den.assign(x.data() + dnum + 1, x.data() + cols);
  std::size_t big = 0;
  for (std::size_t j = 1; j < fit.den.size(); ++j)
    if (std::abs(fit.den[j]) > std::abs(fit.den[big])) big = j;
  const Complex norm = fit.den[big];
  if (std::abs(norm) > 0) {
    for (auto& c : fit.num) c /= norm;
    for (auto& c : fit.den) c /= norm;
  }
  fit.residual = relative_error(fit, nodes, values);
  return fit;
}

void frame_of(const CVec& nodes, Complex& center, double& scale) {
  center = 0;
  for (const auto& a : nodes) center += a;
  center /= static_cast<double>(nodes.size());
  scale = 0;
  for (const auto& a : nodes) scale = std::max(scale, std::abs(a - center));
  if (scale == 0) scale = 1;
}

std::vector<RationalFit> shared_with_frame(const CVec& nodes, const std::vector<CVec>& values,
                                           const std::vector<int>& dnums, int dden, Complex center,
                                           double scale) {
  const std::size_t m = values.size();
  Eigen::Index cols = dden + 1;
  std::vector<Eigen::Index> offset(m);
  for (std::size_t j = 0; j < m; ++j) {
    offset[j] = cols;
    cols += dnums[j] + 1;
  }
  const auto per = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(per * static_cast<Eigen::Index>(m), cols);
  for (std::size_t j = 0; j < m; ++j) {
    const double ref = max_abs(values[j]);
    const double w = ref > 0 ? 1.0 / ref : 1.0;
    for (Eigen::Index k = 0; k < per; ++k) {
      const Eigen::Index row = static_cast<Eigen::Index>(j) * per + k;
      const Complex u = (nodes[static_cast<std::size_t>(k)] - center) / scale;
      const Complex v = values[j][static_cast<std::size_t>(k)];
      Complex up = 1;
      for (int l = 0; l <= dden; ++l, up *= u) a(row, l) = -w * v * up;
      up = 1;
      for (int i = 0; i <= dnums[j]; ++i, up *= u) a(row, offset[j] + i) = w * up;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXcd x = svd.matrixV().col(cols - 1);

  Eigen::Index big = 0;
  for (Eigen::Index l = 1; l <= dden; ++l)
    if (std::abs(x(l)) > std::abs(x(big))) big = l;
  const Complex norm = std::abs(x(big)) > 0 ? x(big) : Complex(1);
  std::vector<RationalFit> fits(m);
  for (std::size_t j = 0; j < m; ++j) {
    RationalFit& f = fits[j];
    f.center = center;
    f.scale = scale;
    for (Eigen::Index l = 0; l <= dden; ++l) f.den.push_back(x(l) / norm);
    for (int i = 0; i <= dnums[j]; ++i) f.num.push_back(x(offset[j] + i) / norm);
    f.residual = relative_error(f, nodes, values[j]);
  }
  return fits;
}

}  // namespace

Complex RationalFit::eval_num(Complex a) const { return horner(num, (a - center) / scale); }
Complex RationalFit::eval_den(Complex a) const { return horner(den, (a - center) / scale); }
Complex RationalFit::eval(Complex a) const { return eval_num(a) / eval_den(a); }

RationalFit fit_rational(const CVec& nodes, const CVec& values, int dnum, int dden) {
  if (nodes.size() != values.size()) throw InputError("node and value counts differ");
  if (dnum < 0 || dden < 0) throw InputError("negative fit degree");
  if (nodes.size() < static_cast<std::size_t>(dnum + dden + 1))
    throw InputError("rational fit of degree (" + std::to_string(dnum) + "," +
                     std::to_string(dden) + ") needs " + std::to_string(dnum + dden + 1) +
                     " nodes, got " + std::to_string(nodes.size()));
  Complex center;
  double scale;
  frame_of(nodes, center, scale);
  return fit_with_frame(nodes, values, dnum, dden, center, scale);
}

RationalityResult rationality_test(const CVec& nodes, const CVec& values, int dnum, int dden,
                                   double tol) {
  if (nodes.size() != values.size()) throw InputError("node and value counts differ");
  CVec tn, tv, hn, hv;
  split(nodes, values, tn, tv, hn, hv);
  if (hn.empty()) throw InputError("rationality test needs at least four nodes");
  Complex center;
  double scale;
  frame_of(nodes, center, scale);
  if (tn.size() < static_cast<std::size_t>(dnum + dden + 1))
    throw InputError("too few training nodes for the requested degrees");
  RationalityResult res;
  res.fit = fit_with_frame(tn, tv, dnum, dden, center, scale);
  res.heldout = relative_error(res.fit, hn, hv);
  res.fit.heldout = res.heldout;
  res.is_rational = res.heldout <= tol;
  return res;
}

RationalFit fit_minimal_rational(const CVec& nodes, const CVec& values, int cap_num, int cap_den,
                                 double tol) {
  if (nodes.size() != values.size()) throw InputError("node and value counts differ");
  CVec tn, tv, hn, hv;
  split(nodes, values, tn, tv, hn, hv);
  if (hn.empty()) throw InputError("rational fit needs at least four nodes");
  Complex center;
  double scale;
  frame_of(nodes, center, scale);

  int best_n = 0, best_d = 0;
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  // Every split of one total degree is scored before the next degree is tried.
  // Past the first degree within tol, a higher degree is taken only while it
  // improves the held-out residual 100-fold: an approximate fit within tol
  // must not stop the search short of an exact one.
  for (int t = 0; t <= cap_num + cap_den; ++t) {
    double bt = std::numeric_limits<double>::infinity();
    int bn = 0, bd = 0;
    for (int dd = 0; dd <= std::min(t, cap_den); ++dd) {
      const int dn = t - dd;
      if (dn > cap_num || tn.size() < static_cast<std::size_t>(dn + dd + 1)) continue;
      const RationalFit f = fit_with_frame(tn, tv, dn, dd, center, scale);
      const double h = relative_error(f, hn, hv);
      if (h < bt) {
        bt = h;
        bn = dn;
        bd = dd;
      }
    }
    if (!std::isfinite(bt)) continue;
    if (found && !(bt < 1e-2 * best)) break;
    if (bt < best) {
      best = bt;
      best_n = bn;
      best_d = bd;
    }
    found = found || best <= tol;
    if (best <= 1e-13) break;
  }
  RationalFit fit = fit_with_frame(nodes, values, best_n, best_d, center, scale);
  fit.heldout = best;
  return fit;
}

std::vector<RationalFit> fit_shared_denominator(const CVec& nodes, const std::vector<CVec>& values,
                                                const std::vector<int>& dnums, int dden) {
  if (values.empty() || values.size() != dnums.size()) throw InputError("one numerator degree per component");
  if (dden < 0 || std::any_of(dnums.begin(), dnums.end(), [](int d) { return d < 0; }))
    throw InputError("negative fit degree");
  for (const auto& v : values)
    if (v.size() != nodes.size()) throw InputError("node and value counts differ");
  std::vector<CVec> train(values.size()), held(values.size());
  CVec tn, hn;
  for (std::size_t j = 0; j < values.size(); ++j) {
    CVec a, b;
    split(nodes, values[j], a, train[j], b, held[j]);
    if (j == 0) {
      tn = a;
      hn = b;
    }
  }
  const int widest = *std::max_element(dnums.begin(), dnums.end());
  if (hn.empty() || tn.size() < static_cast<std::size_t>(widest + dden + 1))
    throw InputError("too few nodes for a shared-denominator fit");
  Complex center;
  double scale;
  frame_of(nodes, center, scale);
  const std::vector<RationalFit> probe = shared_with_frame(tn, train, dnums, dden, center, scale);
  std::vector<RationalFit> fits = shared_with_frame(nodes, values, dnums, dden, center, scale);
  for (std::size_t j = 0; j < fits.size(); ++j) fits[j].heldout = relative_error(probe[j], hn, held[j]);
  return fits;
}

std::vector<RationalFit> fit_minimal_shared(const CVec& nodes, const std::vector<CVec>& values, int cap_num,
                                            int cap_den, double tol) {
  const std::vector<int> dnums(values.size(), cap_num);
  std::vector<RationalFit> best_fits;
  double best = std::numeric_limits<double>::infinity();
  for (int dd = 0; dd <= cap_den; ++dd) {
    if (nodes.size() < static_cast<std::size_t>(4 * (cap_num + dd + 1)) / 3 + 1) break;
    std::vector<RationalFit> fits = fit_shared_denominator(nodes, values, dnums, dd);
    double h = 0;
    for (const auto& f : fits) h = std::max(h, std::isfinite(f.heldout) ? f.heldout : HUGE_VAL);
    if (!best_fits.empty() && !(h < 1e-2 * best)) break;
    if (h <= tol && h < best) {
      best = h;
      best_fits = std::move(fits);
    }
    if (best <= 1e-13) break;
  }
  if (best_fits.empty()) return best_fits;
  // Each numerator is lowered to the least degree that keeps the joint
  // held-out residual within 10 times the padded one.
  const int dd = best_fits.front().den_degree();
  const double keep = std::max(10 * best, 1e-13);
  std::vector<int> trimmed = dnums;
  for (std::size_t j = 0; j < values.size(); ++j) {
    for (int dn = 0; dn < cap_num; ++dn) {
      std::vector<int> trial = trimmed;
      trial[j] = dn;
      std::vector<RationalFit> fits = fit_shared_denominator(nodes, values, trial, dd);
      double h = 0;
      for (const auto& f : fits) h = std::max(h, std::isfinite(f.heldout) ? f.heldout : HUGE_VAL);
      if (h <= keep) {
        trimmed = trial;
        best_fits = std::move(fits);
        break;
      }
    }
  }
  return best_fits;
}

}  // namespace toricabel
