#include "toricabel/fan.hpp"

#include "toricabel/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <regex>
#include <set>

namespace toricabel {

Cone::Cone(std::vector<std::size_t> ids) : ray_ids(std::move(ids)) {
  std::sort(ray_ids.begin(), ray_ids.end());
}

bool Cone::contains_ray(std::size_t id) const {
  return std::binary_search(ray_ids.begin(), ray_ids.end(), id);
}

bool Cone::is_face_of(const Cone& other) const {
  return std::includes(other.ray_ids.begin(), other.ray_ids.end(), ray_ids.begin(),
                       ray_ids.end());
}

std::string to_string(const Cone& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.ray_ids.size(); ++i)
    s += (i ? "," : "") + std::to_string(c.ray_ids[i]);
  return s + "}";
}

Fan::Fan(std::size_t n, std::vector<Ray> rays, std::vector<Cone> max_cones)
    : n_(n), rays_(std::move(rays)), max_cones_(std::move(max_cones)) {
  if (n_ == 0) throw InputError("fan dimension must be positive");
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (rays_[i].eta.size() != n_)
      throw InputError("ray " + std::to_string(i) + " has wrong dimension");
  }
  for (const auto& c : max_cones_) {
    for (auto id : c.ray_ids)
      if (id >= rays_.size())
        throw InputError("cone " + to_string(c) + " references unknown ray " + std::to_string(id));
    if (std::adjacent_find(c.ray_ids.begin(), c.ray_ids.end()) != c.ray_ids.end())
      throw InputError("cone " + to_string(c) + " repeats a ray");
  }

  std::vector<std::set<Cone>> faces(n_ + 1);
  for (const auto& c : max_cones_) {
    const std::size_t d = c.dim();
    if (d > n_) throw InputError("cone " + to_string(c) + " has more than n rays");
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      std::vector<std::size_t> ids;
      for (std::size_t b = 0; b < d; ++b)
        if (mask & (std::size_t{1} << b)) ids.push_back(c.ray_ids[b]);
      faces[ids.size()].insert(Cone(ids));
    }
  }
  by_dim_.resize(n_ + 1);
  for (std::size_t r = 0; r <= n_; ++r) by_dim_[r].assign(faces[r].begin(), faces[r].end());
  if (by_dim_[0].empty()) by_dim_[0].push_back(Cone{});
}

std::vector<Cone> Fan::all_cones() const {
  std::vector<Cone> out;
  for (const auto& layer : by_dim_) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

bool Fan::contains(const Cone& c) const {
  if (c.dim() > n_) return false;
  const auto& layer = by_dim_[c.dim()];
  return std::binary_search(layer.begin(), layer.end(), c);
}

std::vector<Cone> Fan::max_cones_containing(const Cone& c) const {
  std::vector<Cone> out;
  for (const auto& m : max_cones_)
    if (c.is_face_of(m)) out.push_back(m);
  return out;
}

namespace {

IntMatrix ray_matrix(const Fan& fan, const Cone& c) {
  IntMatrix rows;
  for (auto id : c.ray_ids) rows.push_back(fan.ray(id).eta);
  return rows;
}

}  // namespace

ValidationReport validate_fan(const Fan& fan) {
  ValidationReport rep;
  bool malformed = false;
  for (std::size_t i = 0; i < fan.ray_count(); ++i) {
    const auto& eta = fan.ray(i).eta;
    const Integer g = gcd_of(eta);
    if (g == 0) {
      rep.failures.push_back("ray " + std::to_string(i) + " is zero");
      malformed = true;
    } else if (g != 1) {
      rep.failures.push_back("ray " + std::to_string(i) + " " + to_string(eta) +
                             " is not primitive");
      malformed = true;
    }
  }
  std::set<Cone> seen;
  for (const auto& c : fan.max_cones()) {
    if (!seen.insert(c).second) {
      rep.failures.push_back("duplicate cone " + to_string(c));
      malformed = true;
    }
  }

  bool smooth = !malformed;
  for (const auto& c : fan.max_cones()) {
    if (c.dim() != fan.n()) {
      rep.failures.push_back("max cone " + to_string(c) + " is not full-dimensional");
      smooth = false;
      continue;
    }
    const Integer det = determinant(ray_matrix(fan, c));
    if (abs(det) != 1) {
      rep.failures.push_back("max cone " + to_string(c) + " has |det| = " + abs(det).str());
      smooth = false;
    }
  }
  rep.smooth = smooth;
  rep.malformed = malformed;

  // Facet pairing: each (n-1)-face lies in exactly two max cones, and the
  // max cones are connected through shared facets.
  bool complete = !malformed && !fan.max_cones().empty();
  const auto& maxes = fan.max_cones();
  std::map<Cone, std::vector<std::size_t>> owners;
  for (std::size_t i = 0; i < maxes.size(); ++i) {
    const auto& c = maxes[i];
    if (c.dim() != fan.n()) {
      complete = false;
      continue;
    }
    for (std::size_t drop = 0; drop < c.dim(); ++drop) {
      std::vector<std::size_t> ids;
      for (std::size_t j = 0; j < c.dim(); ++j)
        if (j != drop) ids.push_back(c.ray_ids[j]);
      owners[Cone(ids)].push_back(i);
    }
  }
  for (const auto& [facet, who] : owners) {
    if (who.size() != 2) {
      rep.failures.push_back("facet " + to_string(facet) + " lies in " +
                             std::to_string(who.size()) + " max cone(s)");
      complete = false;
    }
  }
  if (!maxes.empty()) {
    std::vector<std::vector<std::size_t>> adj(maxes.size());
    for (const auto& [facet, who] : owners)
      for (std::size_t a = 0; a < who.size(); ++a)
        for (std::size_t b = a + 1; b < who.size(); ++b) {
          adj[who[a]].push_back(who[b]);
          adj[who[b]].push_back(who[a]);
        }
    std::vector<bool> seen_cone(maxes.size(), false);
    std::queue<std::size_t> q;
    q.push(0);
    seen_cone[0] = true;
    std::size_t reached = 1;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto v : adj[u])
        if (!seen_cone[v]) {
          seen_cone[v] = true;
          ++reached;
          q.push(v);
        }
    }
    if (reached != maxes.size()) {
      rep.failures.push_back("facet-adjacency graph of max cones is disconnected");
      complete = false;
    }
  }
  rep.complete = complete;
  return rep;
}

std::vector<Cone> cones_of_dim(const Fan& fan, int r) {
  if (r < 0 || static_cast<std::size_t>(r) > fan.n())
    throw InputError("cone dimension " + std::to_string(r) + " out of range");
  return fan.cones_by_dim()[static_cast<std::size_t>(r)];
}

IntVec ChartFrame::apply(const IntVec& m) const {
  IntVec out(phi_sigma.size());
  for (std::size_t j = 0; j < phi_sigma.size(); ++j) out[j] = dot(phi_sigma[j], m);
  return out;
}

RatVec ChartFrame::apply(const RatVec& m) const {
  RatVec out(phi_sigma.size());
  for (std::size_t j = 0; j < phi_sigma.size(); ++j) out[j] = dot(m, phi_sigma[j]);
  return out;
}

std::size_t ChartFrame::coordinate_of_ray(std::size_t id) const {
  auto it = std::lower_bound(sigma.ray_ids.begin(), sigma.ray_ids.end(), id);
  if (it == sigma.ray_ids.end() || *it != id)
    throw InputError("ray " + std::to_string(id) + " is not in chart " + to_string(sigma));
  return static_cast<std::size_t>(it - sigma.ray_ids.begin());
}

ChartFrame chart_frame(const Fan& fan, const Cone& sigma) {
  if (sigma.dim() != fan.n() ||
      std::find(fan.max_cones().begin(), fan.max_cones().end(), sigma) == fan.max_cones().end())
    throw InputError("cone " + to_string(sigma) + " is not a maximal cone of the fan");
  IntMatrix rays = ray_matrix(fan, sigma);
  if (abs(determinant(rays)) != 1) throw NotSmoothError("cone " + to_string(sigma));

  // Dual basis = rows of (R^{-1})^T where R has the rays as rows.
  RatMatrix r_rat;
  for (const auto& row : rays) r_rat.push_back(to_rational(row));
  auto inv = inverse(r_rat);
  const std::size_t n = fan.n();
  ChartFrame frame;
  frame.sigma = sigma;
  frame.phi_sigma = rays;
  frame.dual_basis.assign(n, IntVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // (R^{-1})^T[i][j] = R^{-1}[j][i]
      const Rational& q = (*inv)[j][i];
      frame.dual_basis[i][j] = numerator(q);
    }
  return frame;
}

namespace {

FanPtr make_fan(std::string name, std::size_t n, std::vector<std::vector<long long>> rays,
                std::vector<std::vector<std::size_t>> cones) {
  std::vector<Ray> rs;
  for (const auto& r : rays) {
    IntVec v;
    for (auto x : r) v.emplace_back(x);
    rs.push_back(Ray{std::move(v)});
  }
  std::vector<Cone> cs;
  for (auto& c : cones) cs.emplace_back(c);
  auto fan = std::make_shared<Fan>(n, std::move(rs), std::move(cs));
  fan->set_name(std::move(name));
  return fan;
}

}  // namespace

FanPtr builtin_fan(std::string_view name) {
  if (name == "P2")
    return make_fan("P2", 2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}});
  if (name == "P1xP1")
    return make_fan("P1xP1", 2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                    {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  if (name == "P1xP1xP1") {
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t a : {0, 1})
      for (std::size_t b : {2, 3})
        for (std::size_t c : {4, 5}) cones.push_back({a, b, c});
    return make_fan("P1xP1xP1", 3,
                    {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}},
                    cones);
  }
  static const std::regex hirz(R"(^(?:Hirzebruch\(\s*(-?\d+)\s*\)|F(\d+))$)");
  std::cmatch m;
  const std::string s(name);
  if (std::regex_match(s.c_str(), m, hirz)) {
    const long long a = std::stoll(m[1].matched ? m[1].str() : m[2].str());
    return make_fan("Hirzebruch(" + std::to_string(a) + ")", 2,
                    {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  }
  throw InputError("unknown built-in fan '" + s + "'");
}

FanPtr fan_from_json(const nlohmann::json& doc) {
  try {
    const auto n = doc.at("n").get<std::size_t>();
    std::vector<Ray> rays;
    for (const auto& r : doc.at("rays")) {
      IntVec v;
      for (const auto& x : r) {
        if (!x.is_number_integer()) throw InputError("ray entries must be integers");
        v.emplace_back(x.get<long long>());
      }
      rays.push_back(Ray{std::move(v)});
    }
    std::vector<Cone> cones;
    for (const auto& c : doc.at("max_cones")) cones.emplace_back(c.get<std::vector<std::size_t>>());
    auto fan = std::make_shared<Fan>(n, std::move(rays), std::move(cones));
    fan->set_name(doc.value("name", std::string("custom")));
    return fan;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed fan document: ") + e.what());
  }
}

FanPtr load_fan(const std::string& name_or_path) {
  try {
    return builtin_fan(name_or_path);
  } catch (const InputError&) {
  }
  std::ifstream in(name_or_path);
  if (!in) throw InputError("unknown fan '" + name_or_path + "' (not built-in, not a readable file)");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("parse error in " + name_or_path + ": " + e.what());
  }
  return fan_from_json(doc);
}

}  // namespace toricabel
