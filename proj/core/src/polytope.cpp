#include "toricabel/polytope.hpp"

#include "toricabel/errors.hpp"

#include <algorithm>
#include <set>

namespace toricabel {

namespace {

// a . X >= b over integer points X.
struct Facet {
  IntVec a;
  Integer b;
  bool operator<(const Facet& o) const { return a != o.a ? a < o.a : b < o.b; }
};

Integer cross2(const IntVec& o, const IntVec& p, const IntVec& q) {
  return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]);
}

// Counter-clockwise hull vertices of planar integer points, collinear points dropped.
std::vector<IntVec> monotone_chain(std::vector<IntVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<IntVec> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

IntVec hyperplane_normal(const std::vector<IntVec>& pts, const std::vector<std::size_t>& idx,
                         std::size_t d) {
  if (d == 3) {
    IntVec u = sub(pts[idx[1]], pts[idx[0]]), v = sub(pts[idx[2]], pts[idx[0]]);
    return primitive(IntVec{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                            u[0] * v[1] - u[1] * v[0]});
  }
  RatMatrix diffs;
  for (std::size_t i = 1; i < idx.size(); ++i)
    diffs.push_back(to_rational(sub(pts[idx[i]], pts[idx[0]])));
  RatMatrix ns = nullspace(diffs, d);
  if (ns.size() != 1) return IntVec(d, Integer(0));
  return clear_denominators(ns[0]);
}

// Facets of the hull of integer points spanning R^d.
std::vector<Facet> facets_full(const std::vector<IntVec>& pts, std::size_t d) {
  std::set<Facet> out;
  if (d == 1) {
    Integer lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    out.insert({IntVec{Integer(1)}, lo});
    out.insert({IntVec{Integer(-1)}, -hi});
  } else if (d == 2) {
    auto h = monotone_chain(pts);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const IntVec& p = h[i];
      const IntVec& q = h[(i + 1) % h.size()];
      IntVec a = primitive(IntVec{-(q[1] - p[1]), q[0] - p[0]});
      out.insert({a, dot(a, p)});
    }
  } else {
    const std::size_t m = pts.size();
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    while (true) {
      IntVec a = hyperplane_normal(pts, idx, d);
      if (gcd_of(a) != 0) {
        const Integer b = dot(a, pts[idx[0]]);
        bool pos = false, neg = false;
        for (const auto& p : pts) {
          const Integer v = dot(a, p) - b;
          if (v > 0) pos = true;
          if (v < 0) neg = true;
          if (pos && neg) break;
        }
        if (!(pos && neg)) {
          if (neg) {
            for (auto& x : a) x = -x;
            out.insert({a, -b});
          } else {
            out.insert({a, b});
          }
        }
      }
      // next combination
      std::size_t i = d;
      while (i > 0 && idx[i - 1] == m - d + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {out.begin(), out.end()};
}

// Indices of hull vertices among integer points spanning R^d.
std::vector<std::size_t> vertex_indices(const std::vector<IntVec>& pts,
                                        const std::vector<Facet>& facets, std::size_t d) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    RatMatrix tight;
    for (const auto& f : facets)
      if (dot(f.a, pts[i]) == f.b) tight.push_back(to_rational(f.a));
    if (tight.size() >= d && rank(tight) == d) out.push_back(i);
  }
  return out;
}

Rational volume_int(const std::vector<IntVec>& pts, std::size_t d) {
  if (d == 1) {
    Integer lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return Rational(hi - lo);
  }
  if (d == 2) {
    auto h = monotone_chain(pts);
    Integer twice = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto& p = h[i];
      const auto& q = h[(i + 1) % h.size()];
      twice += p[0] * q[1] - p[1] * q[0];
    }
    return Rational(abs(twice), 2);
  }
  // Pyramids over facets with apex pts[0].
  const IntVec& apex = pts[0];
  Rational vol = 0;
  for (const auto& f : facets_full(pts, d)) {
    const Integer height = dot(f.a, apex) - f.b;
    if (height == 0) continue;
    std::size_t j = 0;
    while (f.a[j] == 0) ++j;
    std::vector<IntVec> proj;
    for (const auto& p : pts) {
      if (dot(f.a, p) != f.b) continue;
      IntVec q;
      for (std::size_t c = 0; c < d; ++c)
        if (c != j) q.push_back(p[c]);
      proj.push_back(std::move(q));
    }
    vol += Rational(height) * volume_int(proj, d - 1) / Rational(Integer(d) * abs(f.a[j]));
  }
  return vol;
}

std::vector<IntVec> scale_to_integers(const std::vector<RatVec>& pts, Integer& l) {
  l = 1;
  for (const auto& p : pts) l = boost::multiprecision::lcm(l, common_denominator(p));
  std::vector<IntVec> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    IntVec q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = numerator(p[i] * l);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<RatVec> dedupe(std::vector<RatVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Halfspace make_halfspace(const IntVec& e, const Rational& r) {
  // e . x >= r  <=>  (q e) . x >= p  with r = p/q.
  const Integer q = denominator(r), p = numerator(r);
  IntVec eta(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) eta[i] = e[i] * q;
  Integer c = -p;
  IntVec all = eta;
  all.push_back(c);
  const Integer g = gcd_of(all);
  if (g > 1) {
    for (auto& x : eta) x /= g;
    c /= g;
  }
  return {eta, c};
}

struct Hull {
  std::vector<RatVec> vertices;
  std::vector<Halfspace> halfspaces;
  int dim = -1;
};

Hull hull_of(const std::vector<RatVec>& input, std::size_t n, bool want_halfspaces) {
  Hull h;
  auto pts = dedupe(input);
  if (pts.empty()) return h;
  RatMatrix dirs;
  for (std::size_t i = 1; i < pts.size(); ++i) dirs.push_back(sub(pts[i], pts[0]));
  const auto cols = dirs.empty() ? std::vector<std::size_t>{} : pivot_columns(dirs);
  const std::size_t d = cols.size();
  h.dim = static_cast<int>(d);

  if (want_halfspaces) {
    for (const auto& nv : nullspace(dirs, n)) {
      IntVec e = clear_denominators(nv);
      const Rational r = dot(pts[0], e);
      h.halfspaces.push_back(make_halfspace(e, r));
      IntVec neg = e;
      for (auto& x : neg) x = -x;
      h.halfspaces.push_back(make_halfspace(neg, -r));
    }
  }
  if (d == 0) {
    h.vertices = {pts[0]};
    return h;
  }

  std::vector<RatVec> proj;
  for (const auto& p : pts) {
    RatVec q(d);
    for (std::size_t c = 0; c < d; ++c) q[c] = p[cols[c]];
    proj.push_back(std::move(q));
  }
  Integer l;
  auto ipts = scale_to_integers(proj, l);
  auto facets = facets_full(ipts, d);
  for (auto i : vertex_indices(ipts, facets, d)) h.vertices.push_back(pts[i]);
  if (want_halfspaces) {
    for (const auto& f : facets) {
      IntVec e(n, Integer(0));
      for (std::size_t c = 0; c < d; ++c) e[cols[c]] = f.a[c];
      h.halfspaces.push_back(make_halfspace(e, Rational(f.b, l)));
    }
  }
  return h;
}

Integer factorial(std::size_t k) {
  Integer f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

HPolytope::HPolytope(std::size_t n) : n_(n) {}

HPolytope HPolytope::from_halfspaces(std::size_t n, std::vector<Halfspace> hs) {
  for (const auto& h : hs)
    if (h.eta.size() != n) throw InputError("half-space has wrong dimension");
  HPolytope p(n);
  p.halfspaces_ = std::move(hs);
  const std::size_t m = p.halfspaces_.size();
  std::set<RatVec> verts;
  if (m >= n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    while (true) {
      RatMatrix a;
      RatVec b;
      for (auto i : idx) {
        a.push_back(to_rational(p.halfspaces_[i].eta));
        b.push_back(Rational(-p.halfspaces_[i].c));
      }
      if (auto x = solve_square(a, b); x && p.contains(*x)) verts.insert(*x);
      std::size_t i = n;
      while (i > 0 && idx[i - 1] == m - n + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  p.finish({verts.begin(), verts.end()});
  return p;
}

HPolytope HPolytope::from_points(std::size_t n, const std::vector<RatVec>& pts) {
  for (const auto& q : pts)
    if (q.size() != n) throw InputError("point has wrong dimension");
  HPolytope p(n);
  Hull h = hull_of(pts, n, true);
  p.halfspaces_ = std::move(h.halfspaces);
  p.finish(std::move(h.vertices));
  return p;
}

HPolytope HPolytope::from_points(std::size_t n, const std::vector<IntVec>& pts) {
  std::vector<RatVec> r;
  r.reserve(pts.size());
  for (const auto& q : pts) r.push_back(to_rational(q));
  return from_points(n, r);
}

void HPolytope::finish(std::vector<RatVec> verts) {
  vertices_ = dedupe(std::move(verts));
  lattice_pts_.clear();
  if (vertices_.empty()) {
    dim_ = -1;
    return;
  }
  RatMatrix dirs;
  for (std::size_t i = 1; i < vertices_.size(); ++i) dirs.push_back(sub(vertices_[i], vertices_[0]));
  dim_ = static_cast<int>(dirs.empty() ? 0 : rank(dirs));

  if (n_ == 0) {
    lattice_pts_.push_back({});
    return;
  }
  IntVec lo(n_), hi(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Rational mn = vertices_[0][i], mx = vertices_[0][i];
    for (const auto& v : vertices_) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil_of(mn);
    hi[i] = floor_of(mx);
    if (lo[i] > hi[i]) return;
  }
  IntVec cur = lo;
  while (true) {
    if (contains(cur)) lattice_pts_.push_back(cur);
    bool advanced = false;
    for (std::size_t i = n_; i-- > 0;) {
      if (cur[i] < hi[i]) {
        ++cur[i];
        for (std::size_t j = i + 1; j < n_; ++j) cur[j] = lo[j];
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

bool HPolytope::contains(const RatVec& m) const {
  for (const auto& h : halfspaces_)
    if (dot(m, h.eta) < -Rational(h.c)) return false;
  return true;
}

bool HPolytope::contains(const IntVec& m) const {
  for (const auto& h : halfspaces_)
    if (dot(m, h.eta) < -h.c) return false;
  return true;
}

PolytopeFamily::PolytopeFamily(std::vector<HPolytope> ms) : members(std::move(ms)) {
  for (const auto& p : members)
    if (p.n() != members.front().n()) throw InputError("polytope family has mixed dimensions");
}

HPolytope polytope_from_divisor(const Fan& fan, const IntVec& k) {
  if (k.size() != fan.ray_count())
    throw InputError("divisor has " + std::to_string(k.size()) + " coefficients, fan has " +
                     std::to_string(fan.ray_count()) + " rays");
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < k.size(); ++i) hs.push_back({fan.ray(i).eta, k[i]});
  return HPolytope::from_halfspaces(fan.n(), std::move(hs));
}

int dimension(const HPolytope& p) { return p.dimension(); }

HPolytope minkowski_sum(const HPolytope& p, const HPolytope& q) {
  if (p.n() != q.n()) throw InputError("Minkowski sum of polytopes in different dimensions");
  if (p.empty() || q.empty()) throw InputError("Minkowski sum with an empty polytope");
  std::vector<RatVec> pts;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) pts.push_back(add(a, b));
  return HPolytope::from_points(p.n(), pts);
}

HPolytope face_of(const Fan& fan, const IntVec& k, const HPolytope& p, const Cone& tau,
                  FaceMode mode) {
  if (!fan.contains(tau)) throw InputError("cone " + to_string(tau) + " is not in the fan");
  if (k.size() != fan.ray_count()) throw InputError("divisor does not match the fan");
  const auto& pts = p.lattice_points();
  if (pts.empty()) return HPolytope(p.n());
  std::vector<Integer> target;
  for (auto id : tau.ray_ids) {
    const auto& eta = fan.ray(id).eta;
    if (mode == FaceMode::virtual_face) {
      target.push_back(-k[id]);
    } else {
      Integer mn = dot(pts[0], eta);
      for (const auto& m : pts) mn = std::min(mn, dot(m, eta));
      target.push_back(mn);
    }
  }
  std::vector<IntVec> sel;
  for (const auto& m : pts) {
    bool ok = true;
    for (std::size_t r = 0; r < tau.ray_ids.size() && ok; ++r)
      ok = dot(m, fan.ray(tau.ray_ids[r]).eta) == target[r];
    if (ok) sel.push_back(m);
  }
  if (sel.empty()) return HPolytope(p.n());
  return HPolytope::from_points(p.n(), sel);
}

bool is_essential(const PolytopeFamily& fam) {
  const std::size_t r = fam.size();
  for (const auto& p : fam.members)
    if (p.empty()) return false;
  for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
    RatMatrix dirs;
    std::size_t count = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      ++count;
      const auto& v = fam.members[i].vertices();
      for (std::size_t j = 1; j < v.size(); ++j) dirs.push_back(sub(v[j], v[0]));
    }
    const std::size_t rk = dirs.empty() ? 0 : rank(dirs);
    if (rk < count) return false;
  }
  return true;
}

std::vector<RatVec> lattice_frame_coordinates(const std::vector<RatVec>& pts, std::size_t n,
                                              std::size_t& dim) {
  dim = 0;
  if (pts.empty()) return {};
  RatMatrix dirs;
  for (std::size_t i = 1; i < pts.size(); ++i) dirs.push_back(sub(pts[i], pts[0]));
  IntMatrix basis = lattice_basis_of_span(dirs, n);
  dim = basis.size();
  std::vector<RatVec> out;
  if (dim == 0) {
    out.assign(pts.size(), RatVec{});
    return out;
  }
  RatMatrix brat;
  for (const auto& b : basis) brat.push_back(to_rational(b));
  const auto cols = pivot_columns(brat);
  // y^T B = v restricted to the pivot columns: M y = v_J with M[c][r] = B[r][J_c].
  RatMatrix m(dim, RatVec(dim));
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) m[c][r] = brat[r][cols[c]];
  auto minv = inverse(m);
  if (!minv) throw NumericError("lattice frame is singular");
  for (const auto& p : pts) {
    RatVec v = sub(p, pts[0]);
    RatVec y(dim, Rational(0));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) y[r] += (*minv)[r][c] * v[cols[c]];
    out.push_back(std::move(y));
  }
  return out;
}

Rational euclidean_volume(const std::vector<RatVec>& input, std::size_t d) {
  auto pts = dedupe(input);
  if (pts.empty()) return 0;
  if (d == 0) return 1;
  RatMatrix dirs;
  for (std::size_t i = 1; i < pts.size(); ++i) dirs.push_back(sub(pts[i], pts[0]));
  if (dirs.empty() || rank(dirs) < d) return 0;
  if (pts.size() > d + 1) {
    // Drop interior points early; the brute-force facet search is superlinear.
    pts = hull_of(pts, d, false).vertices;
  }
  Integer l;
  auto ipts = scale_to_integers(pts, l);
  Rational v = volume_int(ipts, d);
  Integer ld = 1;
  for (std::size_t i = 0; i < d; ++i) ld *= l;
  return v / Rational(ld);
}

Rational normalized_volume(const HPolytope& p, std::size_t k) {
  if (k > p.n()) throw InputError("normalized volume: k exceeds the ambient dimension");
  if (p.empty()) return 0;
  const auto d = static_cast<std::size_t>(p.dimension());
  if (d > k) throw InputError("normalized volume: polytope dimension exceeds k");
  if (d < k) return 0;
  std::size_t dim = 0;
  auto coords = lattice_frame_coordinates(p.vertices(), p.n(), dim);
  return euclidean_volume(coords, dim) * Rational(factorial(dim));
}

Rational mixed_volume(const PolytopeFamily& fam, std::size_t k) {
  if (fam.size() != k)
    throw InputError("mixed volume needs exactly k = " + std::to_string(k) + " polytopes");
  for (const auto& p : fam.members)
    if (p.n() != k) throw InputError("mixed volume: polytope not in R^k");
  if (k == 0) return 1;
  for (const auto& p : fam.members)
    if (p.empty()) return 0;
  const std::size_t full = std::size_t{1} << k;
  std::vector<std::vector<RatVec>> sums(full);
  sums[0] = {RatVec(k, Rational(0))};
  Rational mv = 0;
  for (std::size_t mask = 1; mask < full; ++mask) {
    std::size_t low = 0;
    while (!(mask & (std::size_t{1} << low))) ++low;
    const auto& prev = sums[mask & (mask - 1)];
    std::vector<RatVec> pts;
    for (const auto& a : prev)
      for (const auto& b : fam.members[low].vertices()) pts.push_back(add(a, b));
    sums[mask] = hull_of(pts, k, false).vertices;
    const int bits = __builtin_popcountll(mask);
    const Rational v = euclidean_volume(sums[mask], k);
    if ((k - static_cast<std::size_t>(bits)) % 2 == 0)
      mv += v;
    else
      mv -= v;
  }
  return mv;
}

std::vector<std::vector<std::string>> serialize_vertices(const HPolytope& p) {
  std::vector<std::vector<std::string>> out;
  for (const auto& v : p.vertices()) {
    std::vector<std::string> row;
    for (const auto& x : v) row.push_back(to_string(x));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace toricabel
