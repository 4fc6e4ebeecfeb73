#include "toricabel/decomposition.hpp"

#include "toricabel/errors.hpp"

#include <algorithm>

namespace toricabel {

namespace {

// Mobile faces of the selected bundles along tau, in the coordinates
// <m, eta_j> for the rays of a max cone sigma containing tau but not in tau.
std::vector<HPolytope> projected_faces(const SplitBundle& e, const Cone& tau,
                                       const std::vector<std::size_t>& which) {
  const Fan& fan = e.fan();
  const auto maxes = fan.max_cones_containing(tau);
  if (maxes.empty()) throw InputError("cone " + to_string(tau) + " is not in the fan");
  const Cone& sigma = maxes.front();
  std::vector<std::size_t> free_rays;
  for (auto id : sigma.ray_ids)
    if (!tau.contains_ray(id)) free_rays.push_back(id);
  const std::size_t d = free_rays.size();

  std::vector<HPolytope> out;
  for (auto i : which) {
    const LineBundle& l = e[i];
    HPolytope face = face_of(fan, l.divisor().k, l.polytope(), tau, FaceMode::mobile);
    if (face.empty()) {
      out.emplace_back(d);
      continue;
    }
    std::vector<RatVec> pts;
    for (const auto& v : face.vertices()) {
      RatVec q;
      for (auto id : free_rays) q.push_back(dot(v, fan.ray(id).eta));
      pts.push_back(std::move(q));
    }
    out.push_back(HPolytope::from_points(d, pts));
  }
  return out;
}

Integer exact_integer(const Rational& q, const char* what) {
  if (denominator(q) != 1)
    throw NumericError(std::string(what) + " is not an integer: " + to_string(q));
  return numerator(q);
}

}  // namespace

CycleClass make_cycle(const Fan& fan, std::size_t dim,
                      const std::vector<std::pair<Cone, Integer>>& terms) {
  if (dim > fan.n()) throw InputError("cycle dimension exceeds the fan dimension");
  CycleClass c;
  c.dim = dim;
  for (const auto& [tau, nu] : terms) {
    if (!fan.contains(tau)) throw InputError("cycle cone " + to_string(tau) + " is not in the fan");
    if (tau.dim() != fan.n() - dim)
      throw InputError("cycle cone " + to_string(tau) + " has dimension " +
                       std::to_string(tau.dim()) + ", expected " + std::to_string(fan.n() - dim));
    c.coeffs[tau] += nu;
  }
  return c;
}

CycleClass cycle_from_json(const Fan& fan, const nlohmann::json& doc, std::size_t dim) {
  std::vector<std::pair<Cone, Integer>> terms;
  try {
    if (!doc.is_array()) throw InputError("cycle must be a list of [ray ids, coeff] pairs");
    for (const auto& item : doc)
      terms.emplace_back(Cone(item.at(0).get<std::vector<std::size_t>>()),
                         Integer(item.at(1).get<long long>()));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed cycle: ") + e.what());
  }
  return make_cycle(fan, dim, terms);
}

OrbitalTable orbital_decomposition(const SplitBundle& e) {
  const Fan& fan = e.fan();
  const std::size_t k = e.rank();
  const auto cones = fan.all_cones();

  // virt[c][i]: virtual face of bundle i along cones[c] is nonempty.
  std::map<Cone, std::vector<bool>> virt;
  for (const auto& tau : cones) {
    std::vector<bool> row(k);
    for (std::size_t i = 0; i < k; ++i)
      row[i] = !face_of(fan, e[i].divisor().k, e[i].polytope(), tau, FaceMode::virtual_face).empty();
    virt[tau] = std::move(row);
  }

  OrbitalTable table;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::size_t> in, out;
    for (std::size_t i = 0; i < k; ++i) (mask & (std::size_t{1} << i) ? in : out).push_back(i);
    for (const auto& tau : cones) {
      ++table.pairs_examined;
      const auto& row = virt[tau];
      if (std::any_of(out.begin(), out.end(), [&](std::size_t i) { return row[i]; })) continue;
      bool ok = true;
      for (std::size_t sub = 0; sub + 1 < (std::size_t{1} << tau.dim()) && ok; ++sub) {
        std::vector<std::size_t> ids;
        for (std::size_t b = 0; b < tau.dim(); ++b)
          if (sub & (std::size_t{1} << b)) ids.push_back(tau.ray_ids[b]);
        const auto& r2 = virt[Cone(ids)];
        ok = std::any_of(out.begin(), out.end(), [&](std::size_t i) { return r2[i]; });
      }
      if (!ok) continue;
      std::vector<HPolytope> faces;
      for (auto i : in)
        faces.push_back(face_of(fan, e[i].divisor().k, e[i].polytope(), tau, FaceMode::mobile));
      if (!is_essential(PolytopeFamily(std::move(faces)))) continue;
      OrbitalEntry entry;
      entry.I = in;
      entry.tau = tau;
      entry.codim = in.size() + tau.dim();
      entry.evidence = "virtual faces empty off I along tau, nonempty off I along every proper "
                       "face; mobile faces over I essential";
      table.entries.push_back(std::move(entry));
    }
  }
  return table;
}

Integer intersection_number(const SplitBundle& e, const Cone& tau) {
  const std::size_t n = e.fan().n(), k = e.rank();
  if (tau.dim() != n - k)
    throw InputError("intersection number needs a cone of dimension " + std::to_string(n - k) +
                     ", got " + to_string(tau));
  if (!e.fan().contains(tau)) throw InputError("cone " + to_string(tau) + " is not in the fan");
  std::vector<std::size_t> all(k);
  for (std::size_t i = 0; i < k; ++i) all[i] = i;
  PolytopeFamily fam(projected_faces(e, tau, all));
  return exact_integer(mixed_volume(fam, k), "intersection number");
}

Integer cycle_intersection(const SplitBundle& e, const CycleClass& cls) {
  if (cls.dim != e.rank())
    throw InputError("cycle of dimension " + std::to_string(cls.dim) + " against a rank " +
                     std::to_string(e.rank()) + " bundle");
  Integer total = 0;
  for (const auto& [tau, nu] : cls.coeffs)
    if (nu != 0) total += nu * intersection_number(e, tau);
  return total;
}

bool is_degenerate_class(const SplitBundle& e, const CycleClass& cls) {
  return cycle_intersection(e, cls) == 0;
}

int dual_codim(int dim_v, int k) {
  if (dim_v < 0) throw InputError("negative dimension");
  return dim_v < k ? k - dim_v : 0;
}

IntVec resultant_multidegree(const SplitBundle& e, const CycleClass& w) {
  const std::size_t k = e.rank();
  if (k == 0) throw InputError("resultant multidegree of a rank-0 bundle");
  if (w.dim + 1 != k)
    throw InputError("cycle of dimension " + std::to_string(w.dim) + " for a rank " +
                     std::to_string(k) + " bundle (need rank - 1)");
  IntVec d(k, Integer(0));
  for (const auto& [tau, nu] : w.coeffs) {
    if (nu == 0) continue;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::size_t> others;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) others.push_back(j);
      PolytopeFamily fam(projected_faces(e, tau, others));
      d[i] += nu * exact_integer(mixed_volume(fam, k - 1), "multidegree");
    }
  }
  return d;
}

std::vector<long long> parameter_space_shape(const SplitBundle& e) {
  std::vector<long long> out;
  for (const auto& l : e.line_bundles()) out.push_back(static_cast<long long>(l.section_count()) - 1);
  return out;
}

TDivisor hypersurface_class(const Fan& fan, const std::vector<IntVec>& support) {
  if (support.empty()) throw InputError("empty Newton support");
  TDivisor d{IntVec(fan.ray_count())};
  for (std::size_t r = 0; r < fan.ray_count(); ++r) {
    Integer mn = dot(support[0], fan.ray(r).eta);
    for (const auto& m : support) mn = std::min(mn, dot(m, fan.ray(r).eta));
    d.k[r] = -mn;
  }
  return d;
}

CycleClass hypersurface_cycle(const Fan& fan, const std::vector<IntVec>& support) {
  const TDivisor d = hypersurface_class(fan, support);
  std::vector<std::pair<Cone, Integer>> terms;
  for (std::size_t r = 0; r < fan.ray_count(); ++r) terms.emplace_back(Cone({r}), d.k[r]);
  return make_cycle(fan, fan.n() - 1, terms);
}

}  // namespace toricabel
