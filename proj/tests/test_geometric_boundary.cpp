#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "cayley/errors.hpp"
#include "cayley/geometric_boundary.hpp"
#include "doctest.h"

using namespace cayley;

namespace {

IntVec iv(std::initializer_list<long long> xs) {
  IntVec v;
  for (long long x : xs) v.emplace_back(x);
  return v;
}

std::vector<WeightedGenerator> unit_gens(std::initializer_list<IntVec> vs) {
  std::vector<WeightedGenerator> out;
  for (const IntVec& v : vs) out.push_back({v, Rat(1)});
  return out;
}

// Z^2 with +-e1, +-e2; the hull is the unit diamond.
CayleyGraph plane_graph() {
  return CayleyGraph{GroupSpec{2, {}},
                     unit_gens({iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})})};
}

// Z with +-1, +-8; the hull is the segment [-8, 8].
CayleyGraph line_graph() {
  return CayleyGraph{GroupSpec{1, {}}, unit_gens({iv({1}), iv({8}), iv({-1}), iv({-8})})};
}

// Z^2 with +-(1,0), +-(0,1), +-(2,2); the hull is a hexagon.
CayleyGraph hex_graph() {
  return CayleyGraph{GroupSpec{2, {}},
                     unit_gens({iv({1, 0}), iv({0, 1}), iv({2, 2}), iv({-1, 0}),
                                iv({0, -1}), iv({-2, -2})})};
}

// Z^2 with the eight king moves, all at the given weight; the hull is the
// square [-1,1]^2 and its edges carry three generators each.
CayleyGraph king_graph(const Rat& weight) {
  std::vector<WeightedGenerator> gens;
  for (const IntVec& v : {iv({1, 0}), iv({0, 1}), iv({1, 1}), iv({1, -1}),
                          iv({-1, 0}), iv({0, -1}), iv({-1, -1}), iv({-1, 1})}) {
    gens.push_back({v, weight});
  }
  return CayleyGraph{GroupSpec{2, {}}, gens};
}

// Face id of the face spanned by the given hull vertices.
std::size_t face_of(const GeometricBoundary& gb, std::initializer_list<IntVec> verts) {
  const auto& hull = gb.polytope().vertices();
  std::vector<std::size_t> indices;
  for (const IntVec& v : verts) {
    auto it = std::find(hull.begin(), hull.end(), v);
    REQUIRE(it != hull.end());
    indices.push_back(static_cast<std::size_t>(it - hull.begin()));
  }
  std::sort(indices.begin(), indices.end());
  auto id = gb.polytope().face_lattice().find(indices);
  REQUIRE(id.has_value());
  return *id;
}

}  // namespace

TEST_CASE("route applicability") {
  SUBCASE("relations are rejected") {
    IntMatrix rel(2, 1);
    rel.at(0, 0) = 0;
    rel.at(1, 0) = 5;
    CayleyGraph g{GroupSpec{2, rel},
                  unit_gens({iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})})};
    CHECK_THROWS_AS(GeometricBoundary{g}, RouteInapplicableError);
  }
  SUBCASE("unequal weights are rejected") {
    std::vector<WeightedGenerator> gens = {{iv({1, 0}), Rat(1)},
                                           {iv({-1, 0}), Rat(1)},
                                           {iv({0, 1}), Rat(2)},
                                           {iv({0, -1}), Rat(2)}};
    CayleyGraph g{GroupSpec{2, {}}, gens};
    CHECK_THROWS_AS(GeometricBoundary{g}, RouteInapplicableError);
  }
  SUBCASE("asymmetric generating sets are rejected") {
    CayleyGraph g{GroupSpec{1, {}}, unit_gens({iv({1}), iv({-2})})};
    CHECK_THROWS_AS(GeometricBoundary{g}, RouteInapplicableError);
  }
  SUBCASE("a common non-unit weight is fine") {
    GeometricBoundary gb{king_graph(Rat(1, 2))};
    CHECK(gb.graph().common_weight() == Rat(1, 2));
    CHECK(gb.orbits().size() == 9);
  }
}

TEST_CASE("orbit enumeration") {
  SUBCASE("diamond: four vertex orbits of rank one, four trivial edge orbits") {
    GeometricBoundary gb{plane_graph()};
    REQUIRE(gb.orbits().size() == 9);

    const Orbit& dense = gb.dense_orbit();
    CHECK(!dense.face_id.has_value());
    CHECK(dense.generator_indices.empty());
    CHECK(dense.quotient.free_rank() == 2);
    CHECK(dense.quotient.invariant_factors().empty());

    const auto& lattice = gb.polytope().face_lattice();
    for (std::size_t id = 0; id < lattice.size(); ++id) {
      const Orbit& orbit = gb.orbit_for_face(id);
      REQUIRE(orbit.face_id == id);
      if (lattice.face(id).dimension == 0) {
        CHECK(orbit.quotient.free_rank() == 1);
        CHECK(orbit.quotient.invariant_factors().empty());
        CHECK(orbit.generator_indices.size() == 1);
      } else {
        CHECK(orbit.quotient.trivial());
        CHECK(orbit.generator_indices.size() == 2);
      }
    }

    // The east vertex holds exactly the generator (1,0), listed first.
    std::size_t east = face_of(gb, {iv({1, 0})});
    CHECK(gb.orbit_for_face(east).generator_indices == std::vector<std::size_t>{0});

    CHECK(!gb.boundary_size().has_value());
  }

  SUBCASE("segment: two orbits of order eight") {
    GeometricBoundary gb{line_graph()};
    REQUIRE(gb.orbits().size() == 3);
    std::size_t plus = face_of(gb, {iv({8})});
    std::size_t minus = face_of(gb, {iv({-8})});
    for (std::size_t id : {plus, minus}) {
      const Orbit& orbit = gb.orbit_for_face(id);
      CHECK(orbit.quotient.finite());
      CHECK(orbit.quotient.order() == 8);
      CHECK(orbit.quotient.invariant_factors() == std::vector<Int>{Int(8)});
      CHECK(orbit.generator_indices.size() == 1);
    }
    CHECK(gb.orbit_for_face(plus).generator_indices == std::vector<std::size_t>{1});
    CHECK(gb.orbit_for_face(minus).generator_indices == std::vector<std::size_t>{3});
    REQUIRE(gb.boundary_size().has_value());
    CHECK(*gb.boundary_size() == 16);
  }

  SUBCASE("hexagon: twelve orbits, with torsion at the long vertex") {
    GeometricBoundary gb{hex_graph()};
    REQUIRE(gb.orbits().size() == 13);

    const Orbit& long_vertex = gb.orbit_for_face(face_of(gb, {iv({2, 2})}));
    CHECK(long_vertex.quotient.free_rank() == 1);
    CHECK(long_vertex.quotient.invariant_factors() == std::vector<Int>{Int(2)});

    const Orbit& short_vertex = gb.orbit_for_face(face_of(gb, {iv({1, 0})}));
    CHECK(short_vertex.quotient.free_rank() == 1);
    CHECK(short_vertex.quotient.invariant_factors().empty());

    // Edges touching (2,2) index a sublattice of determinant two; the other
    // edges span everything.
    const Orbit& steep = gb.orbit_for_face(face_of(gb, {iv({0, 1}), iv({2, 2})}));
    CHECK(steep.quotient.finite());
    CHECK(steep.quotient.order() == 2);
    const Orbit& shallow = gb.orbit_for_face(face_of(gb, {iv({1, 0}), iv({2, 2})}));
    CHECK(shallow.quotient.order() == 2);
    const Orbit& unimodular = gb.orbit_for_face(face_of(gb, {iv({0, -1}), iv({1, 0})}));
    CHECK(unimodular.quotient.trivial());

    CHECK(!gb.boundary_size().has_value());
  }

  SUBCASE("king moves: edge subgroups use every generator on the edge") {
    GeometricBoundary gb{king_graph(Rat(1))};
    std::size_t east = face_of(gb, {iv({1, -1}), iv({1, 1})});
    const Orbit& orbit = gb.orbit_for_face(east);
    // (1,0) lies on the edge between the corners, so the span is everything;
    // the corners alone would only index a sublattice of order two.
    CHECK(orbit.generator_indices.size() == 3);
    CHECK(orbit.quotient.trivial());
    IntMatrix corners = IntMatrix::from_columns(2, {iv({1, -1}), iv({1, 1})});
    CHECK(quotient(2, corners).order() == 2);
  }

  SUBCASE("orbit count is the number of proper faces plus the dense orbit") {
    for (const CayleyGraph& g :
         {plane_graph(), line_graph(), hex_graph(), king_graph(Rat(1))}) {
      GeometricBoundary gb{g};
      CHECK(gb.orbits().size() == gb.polytope().face_lattice().size() + 1);
    }
  }
}

TEST_CASE("classifying eventually periodic walks") {
  GeometricBoundary gb{plane_graph()};
  std::size_t north = face_of(gb, {iv({0, 1})});
  std::size_t ne_edge = face_of(gb, {iv({1, 0}), iv({0, 1})});

  SUBCASE("block multiplicities and base shifts along the face do not matter") {
    BoundaryPointGeo p = gb.classify_geodesic({iv({0, 0}), {0, 2}});
    CHECK(p.face_id == ne_edge);
    CHECK(gb.points_equal(p, gb.classify_geodesic({iv({7, -4}), {0, 0, 2}})));
    CHECK(gb.points_equal(p, gb.classify_geodesic({iv({0, 0}), {2, 0, 2}})));
  }

  SUBCASE("bases in different cosets give different points") {
    BoundaryPointGeo a = gb.classify_geodesic({iv({3, 0}), {2}});
    BoundaryPointGeo b = gb.classify_geodesic({iv({4, 0}), {2}});
    BoundaryPointGeo c = gb.classify_geodesic({iv({3, 9}), {2}});
    CHECK(a.face_id == north);
    CHECK(!gb.points_equal(a, b));
    CHECK(gb.points_equal(a, c));
  }

  SUBCASE("cancelling directions average to the interior") {
    CHECK_THROWS_WITH_AS(gb.classify_geodesic({iv({0, 0}), {0, 1}}),
                         "not a geodesic direction: the steps average to an interior point",
                         std::invalid_argument);
    CHECK_THROWS_AS(gb.classify_geodesic({iv({0, 0}), {}}), std::invalid_argument);
  }

  SUBCASE("torsion shows up in the hexagon classification") {
    GeometricBoundary hx{hex_graph()};
    BoundaryPointGeo even = hx.classify_geodesic({iv({0, 0}), {2}});
    BoundaryPointGeo odd = hx.classify_geodesic({iv({1, 1}), {2}});
    CHECK(even.face_id == face_of(hx, {iv({2, 2})}));
    CHECK(!hx.points_equal(even, odd));
    CHECK(hx.points_equal(even, hx.classify_geodesic({iv({2, 2}), {2}})));
    CHECK(hx.points_equal(odd, hx.classify_geodesic({iv({3, 3}), {2}})));
  }

  SUBCASE("canonical geodesics classify back to their point") {
    for (const CayleyGraph& g : {plane_graph(), hex_graph()}) {
      GeometricBoundary boundary{g};
      for (std::size_t id = 0; id < boundary.polytope().face_lattice().size(); ++id) {
        for (const CosetLabel& label : boundary.orbit_for_face(id).quotient.enumerate(Int(1))) {
          BoundaryPointGeo p{id, label};
          CHECK(boundary.points_equal(p, boundary.classify_geodesic(boundary.canonical_geodesic(p))));
        }
      }
    }
  }
}

TEST_CASE("closure of orbits") {
  GeometricBoundary gb{plane_graph()};
  const auto& lattice = gb.polytope().face_lattice();
  std::size_t east = face_of(gb, {iv({1, 0})});
  std::size_t ne_edge = face_of(gb, {iv({1, 0}), iv({0, 1})});
  std::size_t se_edge = face_of(gb, {iv({1, 0}), iv({0, -1})});

  SUBCASE("a vertex closes up to its two edges; an edge is already closed") {
    std::vector<std::size_t> expected = {east, se_edge, ne_edge};
    std::sort(expected.begin(), expected.end());
    CHECK(gb.closure_faces(east) == expected);
    CHECK(gb.closure_faces(ne_edge) == std::vector<std::size_t>{ne_edge});
  }

  SUBCASE("the dense orbit closes onto every proper face") {
    std::vector<std::size_t> all = gb.closure_faces(std::nullopt);
    REQUIRE(all.size() == lattice.size());
    for (std::size_t id = 0; id < all.size(); ++id) CHECK(all[id] == id);
  }

  SUBCASE("closure is extensive, idempotent and antitone in the face") {
    GeometricBoundary hx{hex_graph()};
    const auto& hlat = hx.polytope().face_lattice();
    for (std::size_t f = 0; f < hlat.size(); ++f) {
      std::vector<std::size_t> cl = hx.closure_faces(f);
      CHECK(std::find(cl.begin(), cl.end(), f) != cl.end());
      for (std::size_t g : cl) {
        for (std::size_t h : hx.closure_faces(g)) {
          CHECK(std::find(cl.begin(), cl.end(), h) != cl.end());
        }
      }
      for (std::size_t g = 0; g < hlat.size(); ++g) {
        if (!hlat.contains(f, g)) continue;
        std::vector<std::size_t> finer = hx.closure_faces(g);
        for (std::size_t h : finer) {
          CHECK(std::find(cl.begin(), cl.end(), h) != cl.end());
        }
      }
    }
  }

  SUBCASE("covering relation of the closure order") {
    ClosurePoset poset = gb.closure_poset();
    CHECK(poset.node_count == 9);
    CHECK(poset.covers.size() == 12);
    // The dense orbit is covered by the vertex orbits only.
    std::size_t from_dense = 0;
    for (const auto& [a, b] : poset.covers) {
      if (a == 0) {
        ++from_dense;
        CHECK(lattice.face(b - 1).dimension == 0);
      } else {
        CHECK(lattice.face(a - 1).dimension + 1 == lattice.face(b - 1).dimension);
        CHECK(lattice.contains(a - 1, b - 1));
      }
    }
    CHECK(from_dense == 4);

    ClosurePoset segment = GeometricBoundary{line_graph()}.closure_poset();
    CHECK(segment.node_count == 3);
    REQUIRE(segment.covers.size() == 2);
    CHECK(segment.covers[0] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(segment.covers[1] == std::pair<std::size_t, std::size_t>{0, 2});
  }
}

TEST_CASE("natural maps between orbits") {
  GeometricBoundary gb{plane_graph()};
  std::size_t east = face_of(gb, {iv({1, 0})});
  std::size_t ne_edge = face_of(gb, {iv({1, 0}), iv({0, 1})});

  SUBCASE("pushing a vertex point onto an edge forgets the coset") {
    BoundaryPointGeo p = gb.classify_geodesic({iv({3, 0}), {2}});
    BoundaryPointGeo onto = gb.natural_map(p, ne_edge);
    CHECK(onto.face_id == ne_edge);
    CHECK(gb.points_equal(onto, gb.classify_geodesic({iv({0, 0}), {0, 2}})));
    CHECK(gb.points_equal(gb.natural_map(p, p.face_id), p));
    CHECK_THROWS_AS(gb.natural_map(p, east), std::invalid_argument);
  }

  SUBCASE("hexagon: the long vertex maps onto its edges by parity") {
    GeometricBoundary hx{hex_graph()};
    std::size_t steep = face_of(hx, {iv({0, 1}), iv({2, 2})});
    std::size_t shallow = face_of(hx, {iv({1, 0}), iv({2, 2})});

    // (0,1) lands in the steep edge's subgroup, (1,1) does not.
    BoundaryPointGeo base0 = hx.classify_geodesic({iv({0, 1}), {2}});
    CHECK(hx.points_equal(hx.natural_map(base0, steep),
                          hx.classify_geodesic({iv({0, 0}), {1, 2}})));
    BoundaryPointGeo base1 = hx.classify_geodesic({iv({1, 1}), {2}});
    CHECK(!hx.points_equal(hx.natural_map(base1, steep),
                           hx.natural_map(base0, steep)));
    // (1,0) differs from (1,1) by (0,1), which the steep edge absorbs.
    BoundaryPointGeo base2 = hx.classify_geodesic({iv({1, 0}), {2}});
    CHECK(hx.points_equal(hx.natural_map(base2, steep), hx.natural_map(base1, steep)));

    // Onto the shallow edge the fibers are the parities of k in base (0,k).
    std::vector<BoundaryPointGeo> images;
    for (long long k = 0; k < 4; ++k) {
      images.push_back(hx.natural_map(hx.classify_geodesic({iv({0, k}), {2}}), shallow));
    }
    CHECK(hx.points_equal(images[0], images[2]));
    CHECK(hx.points_equal(images[1], images[3]));
    CHECK(!hx.points_equal(images[0], images[1]));
  }
}

TEST_CASE("separation certificates with hand-checked limits") {
  GeometricBoundary gb{plane_graph()};
  DistanceOracle oracle{plane_graph()};
  ValuationOptions opts;
  opts.horizon_blocks = 14;

  SUBCASE("same vertex face, aligned bases") {
    BoundaryPointGeo p = gb.classify_geodesic({iv({0, 0}), {2}});
    BoundaryPointGeo q = gb.classify_geodesic({iv({1, 0}), {2}});
    SeparationCertificate cert = gb.separation_certificate(p, q);
    CHECK(cert.branch == "same-face-aligned");
    CHECK(cert.equal_values_excluded);
    CHECK(cert.y == iv({1, 0}));
    CHECK(cert.z == iv({0, 0}));

    ValuationEstimate vp = estimate_valuation(oracle, cert.geodesic_p, cert.y, cert.z, opts);
    ValuationEstimate vq = estimate_valuation(oracle, cert.geodesic_q, cert.y, cert.z, opts);
    REQUIRE(vp.stabilized);
    REQUIRE(vq.stabilized);
    CHECK(vp.value == 1);
    CHECK(vq.value == -1);
    CHECK(cert.for_p.satisfied_by(vp.value));
    CHECK(cert.for_q.satisfied_by(vq.value));
    CHECK(vp.value != vq.value);
  }

  SUBCASE("vertex against a containing edge") {
    BoundaryPointGeo p = gb.classify_geodesic({iv({0, 0}), {2}});
    BoundaryPointGeo q = gb.classify_geodesic({iv({0, 0}), {0, 2}});
    SeparationCertificate cert = gb.separation_certificate(p, q);
    CHECK(cert.branch == "different-faces");
    CHECK(cert.for_q.kind == BoundKind::Exact);
    CHECK(cert.for_q.value == 1);
    CHECK(cert.for_p.kind == BoundKind::AtMost);
    CHECK(cert.y == iv({0, 0}));
    CHECK(cert.z == iv({1, 0}));

    ValuationEstimate vp = estimate_valuation(oracle, cert.geodesic_p, cert.y, cert.z, opts);
    ValuationEstimate vq = estimate_valuation(oracle, cert.geodesic_q, cert.y, cert.z, opts);
    REQUIRE(vp.stabilized);
    REQUIRE(vq.stabilized);
    CHECK(vp.value == -1);
    CHECK(vq.value == 1);
    CHECK(cert.for_p.satisfied_by(vp.value));
    CHECK(cert.for_q.satisfied_by(vq.value));
  }

  SUBCASE("segment: bases offset within one level") {
    GeometricBoundary sb{line_graph()};
    DistanceOracle so{line_graph()};
    BoundaryPointGeo p = sb.classify_geodesic({iv({3}), {1}});
    BoundaryPointGeo q = sb.classify_geodesic({iv({4}), {1}});
    SeparationCertificate cert = sb.separation_certificate(p, q);
    CHECK(cert.branch == "same-face-offset");
    CHECK(cert.y == iv({4}));
    CHECK(cert.z == iv({3}));
    CHECK(cert.for_q.value == -1);

    ValuationEstimate vp = estimate_valuation(so, cert.geodesic_p, cert.y, cert.z, opts);
    ValuationEstimate vq = estimate_valuation(so, cert.geodesic_q, cert.y, cert.z, opts);
    REQUIRE(vp.stabilized);
    REQUIRE(vq.stabilized);
    CHECK(vp.value == 1);
    CHECK(vq.value == -1);
    CHECK(cert.for_p.satisfied_by(vp.value));
    CHECK(cert.for_q.satisfied_by(vq.value));
  }

  SUBCASE("segment: opposite endpoints") {
    GeometricBoundary sb{line_graph()};
    DistanceOracle so{line_graph()};
    BoundaryPointGeo p = sb.classify_geodesic({iv({3}), {1}});
    BoundaryPointGeo q = sb.classify_geodesic({iv({5}), {3}});
    SeparationCertificate cert = sb.separation_certificate(p, q);
    CHECK(cert.branch == "different-faces");
    CHECK(cert.for_p.kind == BoundKind::Exact);
    // The witness hangs the far vertex (8) off a base of q's own geodesic.
    CHECK(sb.orbit_for_face(q.face_id).quotient.label(cert.y) == q.coset);
    CHECK(cert.z == vec_add(cert.y, iv({8})));

    ValuationEstimate vp = estimate_valuation(so, cert.geodesic_p, cert.y, cert.z, opts);
    ValuationEstimate vq = estimate_valuation(so, cert.geodesic_q, cert.y, cert.z, opts);
    REQUIRE(vp.stabilized);
    REQUIRE(vq.stabilized);
    CHECK(vp.value == 1);
    CHECK(vq.value == -1);
    CHECK(cert.for_p.satisfied_by(vp.value));
    CHECK(cert.for_q.satisfied_by(vq.value));
  }

  SUBCASE("hexagon: same level, different torsion class") {
    GeometricBoundary hx{hex_graph()};
    DistanceOracle ho{hex_graph()};
    BoundaryPointGeo p = hx.classify_geodesic({iv({0, 0}), {2}});
    BoundaryPointGeo q = hx.classify_geodesic({iv({1, -1}), {2}});
    SeparationCertificate cert = hx.separation_certificate(p, q);
    CHECK(cert.branch == "same-face-aligned");
    CHECK(cert.equal_values_excluded);

    ValuationEstimate vp = estimate_valuation(ho, cert.geodesic_p, cert.y, cert.z, opts);
    ValuationEstimate vq = estimate_valuation(ho, cert.geodesic_q, cert.y, cert.z, opts);
    REQUIRE(vp.stabilized);
    REQUIRE(vq.stabilized);
    CHECK(vp.value == 2);
    CHECK(vq.value == -2);
    CHECK(cert.for_p.satisfied_by(vp.value));
    CHECK(cert.for_q.satisfied_by(vq.value));
    CHECK(vp.value != vq.value);
  }

  SUBCASE("hexagon: free offset within the same vertex orbit") {
    GeometricBoundary hx{hex_graph()};
    DistanceOracle ho{hex_graph()};
    BoundaryPointGeo p = hx.classify_geodesic({iv({0, 0}), {2}});
    BoundaryPointGeo q = hx.classify_geodesic({iv({0, 1}), {2}});
    SeparationCertificate cert = hx.separation_certificate(p, q);
    CHECK(cert.branch == "same-face-offset");

    ValuationEstimate vp = estimate_valuation(ho, cert.geodesic_p, cert.y, cert.z, opts);
    ValuationEstimate vq = estimate_valuation(ho, cert.geodesic_q, cert.y, cert.z, opts);
    REQUIRE(vp.stabilized);
    REQUIRE(vq.stabilized);
    CHECK(cert.for_p.satisfied_by(vp.value));
    CHECK(cert.for_q.satisfied_by(vq.value));
  }

  SUBCASE("king moves at weight one half scale the predictions") {
    CayleyGraph kg = king_graph(Rat(1, 2));
    GeometricBoundary gk{kg};
    DistanceOracle ko{kg};
    BoundaryPointGeo p = gk.classify_geodesic({iv({0, 0}), {2}});
    BoundaryPointGeo q = gk.classify_geodesic({iv({0, 0}), {0, 2, 3}});
    SeparationCertificate cert = gk.separation_certificate(p, q);
    CHECK(cert.branch == "different-faces");
    CHECK(cert.for_q.kind == BoundKind::Exact);
    CHECK(cert.for_q.value == Rat(1, 2));

    ValuationEstimate vp = estimate_valuation(ko, cert.geodesic_p, cert.y, cert.z, opts);
    ValuationEstimate vq = estimate_valuation(ko, cert.geodesic_q, cert.y, cert.z, opts);
    REQUIRE(vp.stabilized);
    REQUIRE(vq.stabilized);
    CHECK(vp.value == Rat(-1, 2));
    CHECK(vq.value == Rat(1, 2));
    CHECK(cert.for_p.satisfied_by(vp.value));
    CHECK(cert.for_q.satisfied_by(vq.value));
  }

  SUBCASE("equal points cannot be separated") {
    BoundaryPointGeo p = gb.classify_geodesic({iv({2, 5}), {2}});
    BoundaryPointGeo q = gb.classify_geodesic({iv({2, 0}), {2}});
    CHECK_THROWS_AS(gb.separation_certificate(p, q), std::invalid_argument);
  }
}

TEST_CASE("random distinct points are separated as predicted") {
  std::mt19937 rng(20260814);
  ValuationOptions opts;
  opts.horizon_blocks = 14;

  auto run = [&](const CayleyGraph& graph, const Int& free_cap, std::size_t samples) {
    GeometricBoundary gb{graph};
    DistanceOracle oracle{graph};
    std::vector<BoundaryPointGeo> pool;
    for (std::size_t id = 0; id < gb.polytope().face_lattice().size(); ++id) {
      for (const CosetLabel& label : gb.orbit_for_face(id).quotient.enumerate(free_cap)) {
        pool.push_back(BoundaryPointGeo{id, label});
      }
    }
    REQUIRE(pool.size() >= 2);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t trial = 0; trial < samples; ++trial) {
      const BoundaryPointGeo& p = pool[pick(rng)];
      const BoundaryPointGeo& q = pool[pick(rng)];
      if (gb.points_equal(p, q)) continue;
      SeparationCertificate cert = gb.separation_certificate(p, q);
      ValuationEstimate vp = estimate_valuation(oracle, cert.geodesic_p, cert.y, cert.z, opts);
      ValuationEstimate vq = estimate_valuation(oracle, cert.geodesic_q, cert.y, cert.z, opts);
      REQUIRE(vp.stabilized);
      REQUIRE(vq.stabilized);
      CHECK(cert.for_p.satisfied_by(vp.value));
      CHECK(cert.for_q.satisfied_by(vq.value));
      if (cert.equal_values_excluded) CHECK(vp.value != vq.value);
    }
  };

  run(plane_graph(), Int(2), 40);
  run(line_graph(), Int(0), 30);
  run(hex_graph(), Int(1), 24);
}
