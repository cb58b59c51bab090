#include "cayley/geometric_boundary.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <utility>

#include "cayley/errors.hpp"

namespace cayley {

namespace {

std::vector<IntVec> generator_vectors(const CayleyGraph& graph) {
  std::vector<IntVec> out;
  out.reserve(graph.size());
  for (const auto& gen : graph.generators()) out.push_back(gen.v);
  return out;
}

Polytope direction_polytope(const CayleyGraph& graph) {
  if (graph.group().relations.cols() > 0) {
    throw RouteInapplicableError(
        "geometric route requires a free abelian group without relations");
  }
  if (!graph.symmetric()) {
    throw RouteInapplicableError(
        "geometric route requires a symmetric generating set");
  }
  if (!graph.equal_weights()) {
    throw RouteInapplicableError(
        "geometric route requires equal generator weights");
  }
  try {
    return convex_hull(generator_vectors(graph));
  } catch (const DegenerateInputError& e) {
    throw RouteInapplicableError(
        std::string("generators do not surround the origin: ") + e.what());
  }
}

}  // namespace

std::string BoundaryPointGeo::to_string() const {
  return "face " + std::to_string(face_id) + " : " + coset.to_string();
}

bool ValuationPrediction::satisfied_by(const Rat& observed) const {
  switch (kind) {
    case BoundKind::Exact:
      return observed == value;
    case BoundKind::AtLeast:
      return observed >= value;
    case BoundKind::AtMost:
      return observed <= value;
  }
  return false;
}

std::string ValuationPrediction::to_string() const {
  const char* rel = kind == BoundKind::Exact ? "= "
                    : kind == BoundKind::AtLeast ? ">= "
                                                 : "<= ";
  return rel + rat_to_string(value);
}

GeometricBoundary::GeometricBoundary(CayleyGraph graph)
    : graph_(std::move(graph)), polytope_(direction_polytope(graph_)) {
  const std::size_t n = graph_.rank();
  const auto vectors = generator_vectors(graph_);
  orbits_.push_back(Orbit{std::nullopt, {}, quotient(n, IntMatrix(n, 0))});
  const FaceLattice& lattice = polytope_.face_lattice();
  for (std::size_t id = 0; id < lattice.size(); ++id) {
    std::vector<std::size_t> on_face = polytope_.points_on_face(id, vectors);
    std::vector<IntVec> span;
    span.reserve(on_face.size());
    for (std::size_t i : on_face) span.push_back(vectors[i]);
    orbits_.push_back(Orbit{id, std::move(on_face),
                            quotient(n, IntMatrix::from_columns(n, span))});
  }
}

const Orbit& GeometricBoundary::orbit_for_face(std::size_t face_id) const {
  if (face_id >= polytope_.face_lattice().size()) {
    throw std::invalid_argument("face id out of range");
  }
  return orbits_[face_id + 1];
}

const QuotientGroup& GeometricBoundary::quotient_of(const BoundaryPointGeo& p) const {
  return orbit_for_face(p.face_id).quotient;
}

std::optional<Int> GeometricBoundary::boundary_size() const {
  Int total = 0;
  for (std::size_t i = 1; i < orbits_.size(); ++i) {
    if (!orbits_[i].quotient.finite()) return std::nullopt;
    total += orbits_[i].quotient.order();
  }
  return total;
}

BoundaryPointGeo GeometricBoundary::classify_geodesic(const GeodesicForm& form) const {
  if (form.block.empty()) {
    throw std::invalid_argument("geodesic block must be nonempty");
  }
  if (form.base.size() != graph_.rank()) {
    throw std::invalid_argument("geodesic base has the wrong dimension");
  }
  RatVec average(graph_.rank(), Rat(0));
  for (std::size_t step : form.block) {
    if (step >= graph_.size()) {
      throw std::invalid_argument("geodesic step index out of range");
    }
    const IntVec& v = graph_.generators()[step].v;
    for (std::size_t i = 0; i < average.size(); ++i) average[i] += Rat(v[i]);
  }
  const Rat count{Int(form.block.size())};
  for (Rat& coord : average) coord /= count;
  std::optional<std::size_t> face = polytope_.smallest_face_containing(average);
  if (!face) {
    throw std::invalid_argument(
        "not a geodesic direction: the steps average to an interior point");
  }
  return BoundaryPointGeo{*face, orbit_for_face(*face).quotient.label(form.base)};
}

bool GeometricBoundary::points_equal(const BoundaryPointGeo& p,
                                     const BoundaryPointGeo& q) const {
  return p.face_id == q.face_id && p.coset == q.coset;
}

std::vector<std::size_t> GeometricBoundary::closure_faces(
    std::optional<std::size_t> face_id) const {
  const FaceLattice& lattice = polytope_.face_lattice();
  if (!face_id) {
    std::vector<std::size_t> all(lattice.size());
    for (std::size_t id = 0; id < all.size(); ++id) all[id] = id;
    return all;
  }
  return lattice.superfaces(*face_id);
}

ClosurePoset GeometricBoundary::closure_poset() const {
  ClosurePoset poset;
  poset.node_count = orbits_.size();
  const FaceLattice& lattice = polytope_.face_lattice();
  for (std::size_t id = 0; id < lattice.size(); ++id) {
    if (lattice.face(id).dimension == 0) poset.covers.emplace_back(0, id + 1);
  }
  for (const auto& [sub, super] : lattice.covering_pairs()) {
    poset.covers.emplace_back(sub + 1, super + 1);
  }
  return poset;
}

BoundaryPointGeo GeometricBoundary::natural_map(const BoundaryPointGeo& p,
                                                std::size_t superface_id) const {
  const FaceLattice& lattice = polytope_.face_lattice();
  if (superface_id >= lattice.size()) {
    throw std::invalid_argument("face id out of range");
  }
  if (p.face_id == superface_id) return p;
  if (!lattice.contains(p.face_id, superface_id)) {
    throw std::invalid_argument(
        "natural map requires a face containing the point's face");
  }
  const IntVec representative = quotient_of(p).representative(p.coset);
  return BoundaryPointGeo{superface_id,
                          orbit_for_face(superface_id).quotient.label(representative)};
}

GeodesicForm GeometricBoundary::canonical_geodesic(const BoundaryPointGeo& p) const {
  const Orbit& orbit = orbit_for_face(p.face_id);
  return GeodesicForm{orbit.quotient.representative(p.coset),
                      orbit.generator_indices};
}

SeparationCertificate GeometricBoundary::separation_certificate(
    const BoundaryPointGeo& p, const BoundaryPointGeo& q) const {
  if (points_equal(p, q)) {
    throw std::invalid_argument("cannot separate equal limit points");
  }
  const Rat lambda = graph_.common_weight();
  SeparationCertificate cert;
  cert.geodesic_p = canonical_geodesic(p);
  cert.geodesic_q = canonical_geodesic(q);

  if (p.face_id != q.face_id) {
    // Pick a hull vertex v lying on exactly one of the two faces.  Along the
    // geodesic whose face holds v the witness settles at the step weight;
    // along the other every path from base+v needs at least as many steps as
    // the geodesic has taken, because v sits strictly below that face's
    // supporting functional.
    const FaceLattice& lattice = polytope_.face_lattice();
    const auto& fp = lattice.face(p.face_id).vertex_indices;
    const auto& fq = lattice.face(q.face_id).vertex_indices;
    std::vector<std::size_t> only_p;
    std::set_difference(fp.begin(), fp.end(), fq.begin(), fq.end(),
                        std::back_inserter(only_p));
    std::size_t v_index = 0;
    bool p_holds_v = !only_p.empty();
    if (p_holds_v) {
      v_index = only_p.front();
    } else {
      std::vector<std::size_t> only_q;
      std::set_difference(fq.begin(), fq.end(), fp.begin(), fp.end(),
                          std::back_inserter(only_q));
      v_index = only_q.front();
    }
    const IntVec& v = polytope_.vertices()[v_index];
    const GeodesicForm& other = p_holds_v ? cert.geodesic_q : cert.geodesic_p;
    cert.y = other.base;
    cert.z = vec_add(other.base, v);
    cert.branch = "different-faces";
    const ValuationPrediction settles{BoundKind::Exact, lambda};
    const ValuationPrediction stays_low{BoundKind::AtMost, Rat(0)};
    cert.for_p = p_holds_v ? settles : stays_low;
    cert.for_q = p_holds_v ? stays_low : settles;
    return cert;
  }

  // Same face, different coset.  Slide p's base along the face until the two
  // bases sit within one level of the face functional; the witness then
  // compares progress toward the two bases level by level.
  const Orbit& orbit = orbit_for_face(p.face_id);
  const SupportingFunctional& omega =
      polytope_.face_lattice().face(p.face_id).functional;
  const IntVec& t = graph_.generators()[orbit.generator_indices.front()].v;
  IntVec base_p = cert.geodesic_p.base;
  const IntVec& base_q = cert.geodesic_q.base;
  Rat delta = omega.value(base_q) - omega.value(base_p);
  const Int shift = rat_floor(delta);
  if (shift != 0) {
    for (std::size_t i = 0; i < base_p.size(); ++i) base_p[i] += shift * t[i];
    cert.geodesic_p.base = base_p;
    delta -= Rat(shift);
  }
  cert.y = base_q;
  cert.z = base_p;
  cert.for_p = ValuationPrediction{BoundKind::AtLeast, Rat(0)};
  if (delta > 0) {
    // q's base sits strictly between levels of p's, so every approach to
    // p's base overshoots q's by a full step.
    cert.branch = "same-face-offset";
    cert.for_q = ValuationPrediction{BoundKind::AtMost, -lambda};
  } else {
    // Equal levels: both limits are bounded by zero, and a common value of
    // zero would force the bases into the same coset.
    cert.branch = "same-face-aligned";
    cert.for_q = ValuationPrediction{BoundKind::AtMost, Rat(0)};
    cert.equal_values_excluded = true;
  }
  return cert;
}

}  // namespace cayley
