#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cayley/cayley_graph.hpp"
#include "cayley/linalg.hpp"
#include "cayley/polytope.hpp"

namespace cayley {

/// One translation orbit of limit points: a proper face F of the direction
/// polytope together with the ambient group modulo the subgroup spanned by
/// every generator lying on F.  face_id == nullopt is the distinguished dense
/// orbit of the group elements themselves (empty direction).
struct Orbit {
  std::optional<std::size_t> face_id;
  /// Indices of the generators lying on the face (all of them, not only the
  /// hull vertices); empty for the dense orbit.
  std::vector<std::size_t> generator_indices;
  QuotientGroup quotient;
};

/// A limit point: the face spanned by the direction plus the coset of the
/// base point in that face's quotient.  Two geodesics converge to the same
/// point exactly when these agree.
struct BoundaryPointGeo {
  std::size_t face_id = 0;
  CosetLabel coset;

  bool operator==(const BoundaryPointGeo&) const = default;
  auto operator<=>(const BoundaryPointGeo&) const = default;
  std::string to_string() const;
};

/// Covering relation of the closure order on orbit indices: (a, b) means the
/// orbit at index b lies in the closure of the orbit at index a with nothing
/// strictly between.  Closure grows with the face: b is in the closure of a
/// exactly when b's face contains a's, and the dense orbit (index 0) has
/// every other orbit in its closure.
struct ClosurePoset {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
};

enum class BoundKind { Exact, AtLeast, AtMost };

/// Predicted limiting value of a witness functional along one geodesic.
struct ValuationPrediction {
  BoundKind kind = BoundKind::Exact;
  Rat value;

  bool satisfied_by(const Rat& observed) const;
  std::string to_string() const;
};

/// Witness separating two limit points: the functional x -> d(x,y) - d(x,z)
/// must approach limits obeying the two predictions along the attached
/// canonical geodesics, and the predictions cannot hold with a common value.
struct SeparationCertificate {
  IntVec y;
  IntVec z;
  GeodesicForm geodesic_p;
  GeodesicForm geodesic_q;
  ValuationPrediction for_p;
  ValuationPrediction for_q;
  /// Set on the aligned same-face branch, where both bounds admit zero but
  /// the limits cannot both be zero for distinct points.
  bool equal_values_excluded = false;
  /// "different-faces", "same-face-offset" or "same-face-aligned".
  std::string branch;
};

/// Boundary of the compactification computed through the direction polytope:
/// directions correspond to proper faces of the hull of the generators, and
/// the limit points over a face form one orbit modulo the span of the
/// generators on it.  Requires a free abelian group with a symmetric, equally
/// weighted generating set; anything else raises RouteInapplicableError.
class GeometricBoundary {
 public:
  explicit GeometricBoundary(CayleyGraph graph);

  const CayleyGraph& graph() const { return graph_; }
  const Polytope& polytope() const { return polytope_; }

  /// orbits()[0] is the dense orbit; the rest follow the face order of the
  /// lattice (dimension, then vertex list), so indices are stable.
  const std::vector<Orbit>& orbits() const { return orbits_; }
  const Orbit& dense_orbit() const { return orbits_.front(); }
  const Orbit& orbit_for_face(std::size_t face_id) const;

  /// Number of limit points when every orbit is finite, nullopt otherwise.
  std::optional<Int> boundary_size() const;

  /// Limit point of the geodesic with the given base and repeating block.
  /// Throws std::invalid_argument when the steps average to an interior
  /// point ("not a geodesic direction").
  BoundaryPointGeo classify_geodesic(const GeodesicForm& form) const;

  bool points_equal(const BoundaryPointGeo& p, const BoundaryPointGeo& q) const;

  /// Ids of every face containing the given one (itself included); nullopt
  /// asks for the closure of the dense orbit, which is every proper face.
  std::vector<std::size_t> closure_faces(std::optional<std::size_t> face_id) const;

  ClosurePoset closure_poset() const;

  /// Push a point on a face to the orbit of a containing face by relabeling
  /// its base in the coarser quotient.  Throws std::invalid_argument when
  /// the target face does not contain the point's face.
  BoundaryPointGeo natural_map(const BoundaryPointGeo& p, std::size_t superface_id) const;

  /// Witness functional separating two distinct limit points, with the
  /// predicted limits along canonical geodesics for both.  Throws
  /// std::invalid_argument when the points are equal.
  SeparationCertificate separation_certificate(const BoundaryPointGeo& p,
                                               const BoundaryPointGeo& q) const;

  /// Geodesic converging to p: base is the canonical coset representative,
  /// block walks once through each generator on the face.
  GeodesicForm canonical_geodesic(const BoundaryPointGeo& p) const;

 private:
  const QuotientGroup& quotient_of(const BoundaryPointGeo& p) const;

  CayleyGraph graph_;
  Polytope polytope_;
  std::vector<Orbit> orbits_;
};

}  // namespace cayley
