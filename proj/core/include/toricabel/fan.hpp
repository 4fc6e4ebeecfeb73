#pragma once

// Complete regular fans and their affine-chart frames.

#include "toricabel/exact.hpp"

#include <nlohmann/json.hpp>

#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace toricabel {

/// Primitive generator of a one-dimensional cone.
struct Ray {
  IntVec eta;
};

/// A simplicial cone given by its ray indices (sorted, distinct).  The zero
/// cone {0} has no rays.
struct Cone {
  std::vector<std::size_t> ray_ids;

  Cone() = default;
  explicit Cone(std::vector<std::size_t> ids);

  std::size_t dim() const { return ray_ids.size(); }
  bool is_zero() const { return ray_ids.empty(); }
  bool contains_ray(std::size_t id) const;
  /// True if every ray of this cone is a ray of `other`.
  bool is_face_of(const Cone& other) const;

  auto operator<=>(const Cone&) const = default;
  bool operator==(const Cone&) const = default;
};

std::string to_string(const Cone& c);

struct ValidationReport {
  /// Set when the input itself is broken (non-primitive ray, duplicate cone).
  bool malformed = false;
  bool smooth = false;
  bool complete = false;
  std::vector<std::string> failures;
};

/// Immutable fan.  Construction only checks structural sanity (dimensions and
/// index ranges); the mathematical hypotheses are checked by validate_fan().
/// All faces of the maximal cones are computed eagerly.
class Fan {
 public:
  Fan(std::size_t n, std::vector<Ray> rays, std::vector<Cone> max_cones);

  std::size_t n() const { return n_; }
  const std::vector<Ray>& rays() const { return rays_; }
  const Ray& ray(std::size_t id) const { return rays_.at(id); }
  std::size_t ray_count() const { return rays_.size(); }
  const std::vector<Cone>& max_cones() const { return max_cones_; }
  /// Every face of every max cone, grouped by dimension; index r holds Σ(r).
  const std::vector<std::vector<Cone>>& cones_by_dim() const { return by_dim_; }
  std::vector<Cone> all_cones() const;
  bool contains(const Cone& c) const;
  std::vector<Cone> max_cones_containing(const Cone& c) const;
  /// Human label used in reports, e.g. "P2".
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  std::size_t n_;
  std::vector<Ray> rays_;
  std::vector<Cone> max_cones_;
  std::vector<std::vector<Cone>> by_dim_;
  std::string name_;
};

using FanPtr = std::shared_ptr<const Fan>;

ValidationReport validate_fan(const Fan& fan);

/// Throws InputError for r outside [0, n].
std::vector<Cone> cones_of_dim(const Fan& fan, int r);

/// Affine chart frame of a maximal cone.  Coordinates are indexed by the rays
/// of sigma in increasing ray-id order.
struct ChartFrame {
  Cone sigma;
  /// m_i(sigma): <m_i, eta_j> = delta_ij.
  IntMatrix dual_basis;
  /// phi_sigma as a matrix acting on column vectors; row j is eta of the j-th ray.
  IntMatrix phi_sigma;

  IntVec apply(const IntVec& m) const;
  RatVec apply(const RatVec& m) const;
  /// Position of ray `id` among the chart coordinates.
  std::size_t coordinate_of_ray(std::size_t id) const;
};

/// Throws NotSmoothError if sigma is not unimodular, InputError if it is not
/// a maximal cone of the fan.
ChartFrame chart_frame(const Fan& fan, const Cone& sigma);

/// Named fans: "P2", "P1xP1", "P1xP1xP1", "Hirzebruch(a)" (aliases "F<a>").
FanPtr builtin_fan(std::string_view name);
/// {"n":2, "rays":[[1,0],...], "max_cones":[[0,1],...]}
FanPtr fan_from_json(const nlohmann::json& doc);
/// Built-in name, or path to a JSON document.
FanPtr load_fan(const std::string& name_or_path);

}  // namespace toricabel
