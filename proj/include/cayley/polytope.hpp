#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/ints.hpp"
#include "cayley/linalg.hpp"

namespace cayley {

/// Linear functional w with w(x) = 1 on a face and w(x) < 1 on the rest of
/// the polytope (the origin sits strictly inside, so every supporting
/// hyperplane can be normalized this way).
struct SupportingFunctional {
  RatVec w;
  Rat value(const IntVec& x) const { return rat_dot(w, x); }
  Rat value(const RatVec& x) const { return rat_dot(w, x); }
  bool operator==(const SupportingFunctional&) const = default;
};

/// A proper nonempty face, recorded by the sorted indices of the hull
/// vertices lying on it.
struct Face {
  std::vector<std::size_t> vertex_indices;
  std::size_t dimension = 0;
  SupportingFunctional functional;
};

class Polytope;

/// All proper nonempty faces, closed under intersection, ordered by
/// (dimension, vertex list) so indices are stable across runs.
class FaceLattice {
 public:
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(std::size_t id) const { return faces_.at(id); }
  std::size_t size() const { return faces_.size(); }
  /// Whether face a is contained in face b.
  bool contains(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> find(const std::vector<std::size_t>& vertex_indices) const;
  /// Ids of all faces containing the given face (including itself).
  std::vector<std::size_t> superfaces(std::size_t id) const;
  /// Covering pairs (a, b): a is a maximal proper subface of b.
  std::vector<std::pair<std::size_t, std::size_t>> covering_pairs() const;

 private:
  friend class Polytope;
  friend Polytope convex_hull(const std::vector<IntVec>& points);
  std::vector<Face> faces_;
};

/// Full-dimensional lattice polytope containing the origin in its interior.
class Polytope {
 public:
  std::size_t dim() const { return dim_; }
  const std::vector<IntVec>& vertices() const { return vertices_; }
  const std::vector<SupportingFunctional>& facets() const { return facets_; }

  const FaceLattice& face_lattice() const { return lattice_; }

  bool contains(const RatVec& x) const;
  /// Smallest face whose relative interior holds x; nullopt when x is an
  /// interior point.  Throws when x lies outside the polytope.
  std::optional<std::size_t> smallest_face_containing(const RatVec& x) const;
  std::optional<std::size_t> smallest_face_containing(const IntVec& x) const;

  /// Functional that is 1 exactly on the face (average of the facet
  /// functionals through it).
  const SupportingFunctional& supporting_functional(std::size_t face_id) const;

  /// Indices into `points` of the points lying on the face.
  std::vector<std::size_t> points_on_face(std::size_t face_id,
                                          const std::vector<IntVec>& points) const;

  /// Strictly positive rational coefficients over the face's vertices
  /// expressing x (which must lie in the face's relative interior); the
  /// whole polytope is addressed with face_id == nullopt and interior x.
  RatVec positive_combination(std::optional<std::size_t> face_id, const RatVec& x) const;

 private:
  friend Polytope convex_hull(const std::vector<IntVec>& points);
  std::size_t dim_ = 0;
  std::vector<IntVec> vertices_;                // sorted lexicographically
  std::vector<SupportingFunctional> facets_;    // sorted by covector
  std::vector<std::vector<std::size_t>> facet_vertices_;  // per facet, sorted
  FaceLattice lattice_;

  std::vector<std::size_t> tight_facets(const RatVec& x) const;
  RatVec relint_combination(const std::vector<std::size_t>& vertex_set, const RatVec& x) const;
};

/// Exact hull of integer points.  Requires the points to span R^n affinely
/// and the origin to lie strictly inside the hull.
Polytope convex_hull(const std::vector<IntVec>& points);

}  // namespace cayley
