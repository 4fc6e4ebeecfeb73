#pragma once

// Exact lattice polytopes: H-description with cached rational vertices,
// Minkowski sums, faces of divisor polytopes, essentiality and mixed volumes.

#include "toricabel/exact.hpp"
#include "toricabel/fan.hpp"

#include <string>
#include <vector>

namespace toricabel {

/// <m, eta> >= -c
struct Halfspace {
  IntVec eta;
  Integer c;
};

class HPolytope {
 public:
  /// The empty polytope in R^n.
  explicit HPolytope(std::size_t n = 0);

  /// Bounded intersection of half-spaces.  Boundedness is the caller's
  /// responsibility (it holds for divisor polytopes of complete fans).
  static HPolytope from_halfspaces(std::size_t n, std::vector<Halfspace> hs);
  /// Convex hull of finitely many rational points.
  static HPolytope from_points(std::size_t n, const std::vector<RatVec>& pts);
  static HPolytope from_points(std::size_t n, const std::vector<IntVec>& pts);

  std::size_t n() const { return n_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  /// Sorted lexicographically.
  const std::vector<RatVec>& vertices() const { return vertices_; }
  bool empty() const { return vertices_.empty(); }
  /// Affine dimension; -1 when empty.
  int dimension() const { return dim_; }
  /// Integer points, in lexicographic order.
  const std::vector<IntVec>& lattice_points() const { return lattice_pts_; }

  bool contains(const RatVec& m) const;
  bool contains(const IntVec& m) const;

 private:
  void finish(std::vector<RatVec> verts);

  std::size_t n_;
  std::vector<Halfspace> halfspaces_;
  std::vector<RatVec> vertices_;
  std::vector<IntVec> lattice_pts_;
  int dim_ = -1;
};

struct PolytopeFamily {
  std::vector<HPolytope> members;

  PolytopeFamily() = default;
  /// Throws InputError unless all members share one ambient dimension.
  explicit PolytopeFamily(std::vector<HPolytope> ms);
  std::size_t size() const { return members.size(); }
};

/// {m : <m, eta_rho> >= -k_rho for every ray}.
HPolytope polytope_from_divisor(const Fan& fan, const IntVec& k);

int dimension(const HPolytope& p);

/// Throws InputError for an empty operand or mismatched ambient dimensions.
HPolytope minkowski_sum(const HPolytope& p, const HPolytope& q);

enum class FaceMode { mobile, virtual_face };

/// Face of the divisor polytope P = P_D cut out by the rays of tau.  Mobile
/// mode uses the attained minima k'_rho, virtual mode the raw k_rho.
/// Throws InputError if tau is not a cone of the fan.
HPolytope face_of(const Fan& fan, const IntVec& k, const HPolytope& p, const Cone& tau,
                  FaceMode mode);

/// Empty member => false.  The empty family is essential.
bool is_essential(const PolytopeFamily& fam);

/// k! times the k-volume measured in a lattice basis of the affine hull.
/// Throws InputError if k > n or dim(P) > k.
Rational normalized_volume(const HPolytope& p, std::size_t k);

/// Mixed volume of k polytopes in R^k, normalized so MV(simplex,...,simplex) = 1.
/// Throws InputError if some member does not live in R^k or size != k.
Rational mixed_volume(const PolytopeFamily& fam, std::size_t k);

/// Euclidean volume of the hull of points spanning R^d (0 if not full-dimensional).
Rational euclidean_volume(const std::vector<RatVec>& pts, std::size_t d);

/// Coordinates of the points in a lattice basis of their affine hull, taking
/// the first point as origin.  Returns the intrinsic dimension through `dim`.
std::vector<RatVec> lattice_frame_coordinates(const std::vector<RatVec>& pts, std::size_t n,
                                              std::size_t& dim);

/// Vertex list as "p/q" strings, e.g. [["0","1/2"],...].
std::vector<std::vector<std::string>> serialize_vertices(const HPolytope& p);

}  // namespace toricabel
