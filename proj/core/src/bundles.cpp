#include "toricabel/bundles.hpp"

#include "toricabel/errors.hpp"

#include <algorithm>
#include <fstream>
#include <regex>

namespace toricabel {

bool TDivisor::effective() const {
  return std::all_of(k.begin(), k.end(), [](const Integer& x) { return x >= 0; });
}

TDivisor operator+(const TDivisor& a, const TDivisor& b) {
  if (a.k.size() != b.k.size()) throw InputError("divisors on different fans");
  TDivisor out{a.k};
  for (std::size_t i = 0; i < b.k.size(); ++i) out.k[i] += b.k[i];
  return out;
}

TDivisor operator-(const TDivisor& a, const TDivisor& b) {
  if (a.k.size() != b.k.size()) throw InputError("divisors on different fans");
  return TDivisor{sub(a.k, b.k)};
}

IntVec local_vertex(const Fan& fan, const TDivisor& d, const Cone& sigma) {
  const ChartFrame frame = chart_frame(fan, sigma);
  IntVec s(fan.n(), Integer(0));
  for (std::size_t j = 0; j < sigma.dim(); ++j) {
    const Integer& kj = d.k.at(sigma.ray_ids[j]);
    for (std::size_t c = 0; c < fan.n(); ++c) s[c] -= kj * frame.dual_basis[j][c];
  }
  return s;
}

IntVec local_vertex(const LineBundle& l, const Cone& sigma) { return l.chart(sigma).s; }

LineBundle::LineBundle(FanPtr fan, TDivisor d) : fan_(std::move(fan)), d_(std::move(d)) {
  if (!fan_) throw InputError("line bundle without a fan");
  if (d_.k.size() != fan_->ray_count())
    throw InputError("divisor has " + std::to_string(d_.k.size()) + " coefficients, fan has " +
                     std::to_string(fan_->ray_count()) + " rays");
  p_ = polytope_from_divisor(*fan_, d_.k);
  for (const auto& sigma : fan_->max_cones()) {
    ChartData cd;
    cd.sigma = sigma;
    cd.frame = chart_frame(*fan_, sigma);
    cd.s = local_vertex(*fan_, d_, sigma);
    if (p_.empty()) {
      cd.delta = HPolytope(fan_->n());
    } else {
      const RatVec s = to_rational(cd.s);
      std::vector<RatVec> pts;
      for (const auto& v : p_.vertices()) pts.push_back(cd.frame.apply(sub(v, s)));
      cd.delta = HPolytope::from_points(fan_->n(), pts);
    }
    charts_.push_back(std::move(cd));
  }
}

const ChartData& LineBundle::chart(const Cone& sigma) const {
  for (const auto& c : charts_)
    if (c.sigma == sigma) return c;
  throw InputError("cone " + to_string(sigma) + " is not a maximal cone of the fan");
}

SplitBundle::SplitBundle(FanPtr fan, std::vector<LineBundle> lbs)
    : fan_(std::move(fan)), lbs_(std::move(lbs)) {
  if (lbs_.size() > fan_->n())
    throw InputError("rank " + std::to_string(lbs_.size()) + " exceeds dimension " +
                     std::to_string(fan_->n()));
  for (const auto& l : lbs_)
    if (l.fan_ptr() != fan_) throw InputError("line bundles live on different fans");
}

PolytopeFamily SplitBundle::polytopes() const {
  std::vector<HPolytope> ps;
  for (const auto& l : lbs_) ps.push_back(l.polytope());
  return PolytopeFamily(std::move(ps));
}

TDivisor SplitBundle::total_divisor() const {
  TDivisor d{IntVec(fan_->ray_count(), Integer(0))};
  for (const auto& l : lbs_) d = d + l.divisor();
  return d;
}

std::pair<TDivisor, TDivisor> mobile_fixed_split(const Fan& fan, const TDivisor& d) {
  const HPolytope p = polytope_from_divisor(fan, d.k);
  const auto& pts = p.lattice_points();
  if (pts.empty()) throw NoSectionsError("divisor " + to_string(d.k));
  TDivisor mobile{IntVec(fan.ray_count())};
  for (std::size_t r = 0; r < fan.ray_count(); ++r) {
    Integer mn = dot(pts[0], fan.ray(r).eta);
    for (const auto& m : pts) mn = std::min(mn, dot(m, fan.ray(r).eta));
    mobile.k[r] = -mn;
  }
  return {mobile, d - mobile};
}

bool is_globally_generated(const LineBundle& l) {
  if (l.polytope().empty()) return false;
  return std::all_of(l.charts().begin(), l.charts().end(),
                     [&](const ChartData& c) { return l.polytope().contains(c.s); });
}

std::vector<Cone> base_locus_cones(const LineBundle& l) {
  std::vector<Cone> out;
  for (const auto& tau : l.fan().all_cones())
    if (face_of(l.fan(), l.divisor().k, l.polytope(), tau, FaceMode::virtual_face).empty())
      out.push_back(tau);
  return out;
}

bool is_very_ample_bundle(const SplitBundle& e) {
  for (const auto& l : e.line_bundles())
    if (!is_globally_generated(l)) return false;
  if (!is_essential(e.polytopes())) return false;
  const TDivisor d = e.total_divisor();
  const HPolytope pd = polytope_from_divisor(e.fan(), d.k);
  for (const auto& sigma : e.fan().max_cones()) {
    const IntVec s = local_vertex(e.fan(), d, sigma);
    const ChartFrame frame = chart_frame(e.fan(), sigma);
    if (!pd.contains(s)) return false;
    for (const auto& m : frame.dual_basis) {
      IntVec q = s;
      for (std::size_t c = 0; c < q.size(); ++c) q[c] += m[c];
      if (!pd.contains(q)) return false;
    }
  }
  return true;
}

bool satisfies_condition_star(const SplitBundle& e, const Cone& sigma) {
  for (const auto& l : e.line_bundles()) {
    const ChartData& cd = l.chart(sigma);
    if (!l.polytope().contains(cd.s)) return false;
    for (const auto& m : cd.frame.dual_basis) {
      IntVec q = cd.s;
      for (std::size_t c = 0; c < q.size(); ++c) q[c] += m[c];
      if (!l.polytope().contains(q)) return false;
    }
  }
  return true;
}

CPoly chart_polynomial(const LineBundle& l, const Section& a, const Cone& sigma) {
  const auto& pts = l.polytope().lattice_points();
  if (a.size() != pts.size())
    throw InputError("section has " + std::to_string(a.size()) + " coefficients, expected " +
                     std::to_string(pts.size()));
  const ChartData& cd = l.chart(sigma);
  CPoly f(l.fan().n());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (a[i] == Complex(0)) continue;
    const IntVec e = cd.frame.apply(sub(pts[i], cd.s));
    Exponent ex;
    for (const auto& x : e) ex.push_back(static_cast<int>(to_int64(x)));
    f.add_term(ex, a[i]);
  }
  return f;
}

namespace {

std::vector<std::string> split_summands(const std::string& spec) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : spec) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (depth < 0) throw InputError("unbalanced brackets in bundle spec '" + spec + "'");
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (depth != 0) throw InputError("unbalanced brackets in bundle spec '" + spec + "'");
  out.push_back(cur);
  return out;
}

std::size_t find_ray(const Fan& fan, const IntVec& eta) {
  for (std::size_t i = 0; i < fan.ray_count(); ++i)
    if (fan.ray(i).eta == eta) return i;
  return fan.ray_count();
}

TDivisor parse_summand(const Fan& fan, const std::string& item) {
  static const std::regex hclass(R"(^(\d*)\*?H$)");
  static const std::regex product(R"(^O?\((-?\d+(?:,-?\d+)*)\)$)");
  std::smatch m;
  TDivisor d{IntVec(fan.ray_count(), Integer(0))};
  if (std::regex_match(item, m, hclass)) {
    IntVec all_neg(fan.n(), Integer(-1));
    const std::size_t r = find_ray(fan, all_neg);
    if (r == fan.ray_count()) throw InputError("'H' needs a projective-space fan");
    d.k[r] = m[1].str().empty() ? Integer(1) : Integer(m[1].str());
    return d;
  }
  if (std::regex_match(item, m, product)) {
    std::vector<long long> vals;
    std::string body = m[1].str();
    std::size_t pos = 0;
    while (pos <= body.size()) {
      auto comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      vals.push_back(std::stoll(body.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    if (vals.size() != fan.n())
      throw InputError("'" + item + "' has " + std::to_string(vals.size()) +
                       " entries for a fan of dimension " + std::to_string(fan.n()));
    for (std::size_t i = 0; i < vals.size(); ++i) {
      IntVec neg(fan.n(), Integer(0));
      neg[i] = -1;
      const std::size_t r = find_ray(fan, neg);
      if (r == fan.ray_count()) throw InputError("'" + item + "' needs a product-of-lines fan");
      d.k[r] = vals[i];
    }
    return d;
  }
  if (!item.empty() && item.front() == '[') {
    nlohmann::json arr;
    try {
      arr = nlohmann::json::parse(item);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError("malformed divisor '" + item + "': " + e.what());
    }
    return divisor_from_json(fan, nlohmann::json{{"k", arr}});
  }
  throw InputError("unrecognized bundle summand '" + item + "'");
}

}  // namespace

TDivisor divisor_from_json(const Fan& fan, const nlohmann::json& doc) {
  TDivisor d{IntVec(fan.ray_count(), Integer(0))};
  if (!doc.is_object() || !doc.contains("k")) throw InputError("divisor document lacks \"k\"");
  const auto& k = doc["k"];
  auto set = [&](std::size_t idx, const nlohmann::json& v) {
    if (idx >= fan.ray_count()) throw InputError("divisor references unknown ray " + std::to_string(idx));
    if (!v.is_number_integer()) throw InputError("divisor coefficients must be integers");
    d.k[idx] = v.get<long long>();
  };
  if (k.is_array()) {
    if (k.size() != fan.ray_count())
      throw InputError("divisor has " + std::to_string(k.size()) + " coefficients, fan has " +
                       std::to_string(fan.ray_count()) + " rays");
    for (std::size_t i = 0; i < k.size(); ++i) set(i, k[i]);
  } else if (k.is_object()) {
    for (const auto& [key, v] : k.items()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(key);
      } catch (const std::exception&) {
        throw InputError("divisor key '" + key + "' is not a ray index");
      }
      set(idx, v);
    }
  } else {
    throw InputError("divisor \"k\" must be an object or an array");
  }
  return d;
}

SplitBundle bundle_from_json(FanPtr fan, const nlohmann::json& doc) {
  std::vector<LineBundle> lbs;
  if (doc.is_array()) {
    for (const auto& item : doc) lbs.emplace_back(fan, divisor_from_json(*fan, item));
  } else {
    lbs.emplace_back(fan, divisor_from_json(*fan, doc));
  }
  return SplitBundle(fan, std::move(lbs));
}

SplitBundle parse_bundle(FanPtr fan, const std::string& spec) {
  if (std::ifstream in(spec); in) {
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError("parse error in " + spec + ": " + e.what());
    }
    return bundle_from_json(fan, doc);
  }
  std::vector<LineBundle> lbs;
  for (const auto& item : split_summands(spec)) lbs.emplace_back(fan, parse_summand(*fan, item));
  return SplitBundle(fan, std::move(lbs));
}

Section section_from_json(const LineBundle& l, const nlohmann::json& doc) {
  const auto& pts = l.polytope().lattice_points();
  Section a(pts.size(), Complex(0));
  try {
    for (const auto& entry : doc.at("coeffs")) {
      IntVec m;
      for (const auto& x : entry.at(0)) m.emplace_back(x.get<long long>());
      auto it = std::lower_bound(pts.begin(), pts.end(), m);
      if (it == pts.end() || *it != m)
        throw InputError("section monomial " + to_string(m) + " is not a lattice point of P");
      a[static_cast<std::size_t>(it - pts.begin())] +=
          Complex(entry.at(1).get<double>(), entry.at(2).get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed section document: ") + e.what());
  }
  return a;
}

}  // namespace toricabel
