#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "cayley/cayley_graph.hpp"
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

// Z^2 with +-e1, +-e2 (interleaved order: e1, -e1, e2, -e2)
CayleyGraph plane_graph() {
  return CayleyGraph{GroupSpec{2, {}},
                     unit_gens({iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})})};
}

// Z with +1, +8, -1, -8 (inverses appended after the listed generators)
CayleyGraph line_graph() {
  return CayleyGraph{GroupSpec{1, {}}, unit_gens({iv({1}), iv({8}), iv({-1}), iv({-8})})};
}

}  // namespace

TEST_CASE("construction and canonicalization") {
  SUBCASE("free group: identity map") {
    CayleyGraph g = plane_graph();
    CHECK(g.canonicalize(iv({3, -2})) == iv({3, -2}));
    CHECK(g.canonicalize(iv({0, 0})) == iv({0, 0}));
    CHECK(g.symmetric());
    CHECK(g.equal_weights());
  }
  SUBCASE("relation lattice reduces coordinates") {
    IntMatrix rel(2, 1);
    rel.at(0, 0) = 0;
    rel.at(1, 0) = 5;
    CayleyGraph g{GroupSpec{2, rel},
                  unit_gens({iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})})};
    CHECK(g.canonicalize(iv({1, 7})) == iv({1, 2}));
    CHECK(g.canonicalize(iv({1, 2})) == g.canonicalize(iv({1, -3})));
  }
  SUBCASE("non-generating sets are rejected with the cokernel shape") {
    bool threw = false;
    try {
      CayleyGraph g{GroupSpec{1, {}}, unit_gens({iv({2}), iv({-2})})};
    } catch (const GenerationError& e) {
      threw = true;
      CHECK(e.free_rank == 0);
      REQUIRE(e.torsion.size() == 1);
      CHECK(e.torsion[0] == 2);
    }
    CHECK(threw);
  }
  SUBCASE("asymmetric sets are flagged") {
    CayleyGraph g{GroupSpec{1, {}}, unit_gens({iv({1}), iv({-1}), iv({3})})};
    CHECK_FALSE(g.symmetric());
  }
  SUBCASE("weights must be positive") {
    CHECK_THROWS_AS((CayleyGraph{GroupSpec{1, {}}, {{iv({1}), Rat(0)}, {iv({-1}), Rat(1)}}}),
                    std::invalid_argument);
  }
}

TEST_CASE("distances") {
  SUBCASE("plane") {
    DistanceOracle o{plane_graph()};
    CHECK(o.distance(iv({0, 0}), iv({1, 1}), Rat(4)) == Rat(2));
    CHECK(o.distance(iv({0, 0}), iv({0, 0}), Rat(1)) == Rat(0));
  }
  SUBCASE("line with two step sizes") {
    DistanceOracle o{line_graph()};
    CHECK(o.distance(iv({0}), iv({7}), Rat(3)) == Rat(2));   // 8 - 1
    CHECK(o.distance(iv({0}), iv({4}), Rat(5)) == Rat(4));   // 1+1+1+1
    CHECK(o.distance(iv({3}), iv({11}), Rat(2)) == Rat(1));  // translation invariance
  }
  SUBCASE("unknown beyond budget is not a distance") {
    DistanceOracle o{plane_graph()};
    CHECK_FALSE(o.distance(iv({0, 0}), iv({9, 9}), Rat(3)).has_value());
    CHECK(o.distance_unbounded(iv({0, 0}), iv({9, 9})) == Rat(18));
  }
  SUBCASE("tiny node budgets abort loudly") {
    DistanceOracle o{plane_graph(), 5};
    CHECK_THROWS_AS(static_cast<void>(o.distance(iv({0, 0}), iv({3, 3}), Rat(6))),
                    BudgetExceededError);
  }
  SUBCASE("ball size at radius two") {
    DistanceOracle o{plane_graph()};
    CHECK(o.ball(Rat(2)).size() == 13);
  }
  SUBCASE("weighted generators") {
    CayleyGraph g{GroupSpec{1, {}}, {{iv({1}), Rat(1, 2)}, {iv({-1}), Rat(1, 2)},
                                     {iv({3}), Rat(1)}, {iv({-3}), Rat(1)}}};
    DistanceOracle o{std::move(g)};
    CHECK(o.distance(iv({0}), iv({4}), Rat(2)) == Rat(3, 2));  // 3 then +1
    CHECK(o.distance(iv({0}), iv({2}), Rat(2)) == Rat(1));     // two halves
  }
}

TEST_CASE("phi functions") {
  DistanceOracle o{plane_graph()};
  SUBCASE("same endpoints vanish") {
    CHECK(o.phi(iv({2, 1}), iv({2, 1}), iv({-3, 4}), Rat(20)) == Rat(0));
  }
  SUBCASE("value at an endpoint") {
    // phi_{g,h}(g) = -d(g,h)
    IntVec g = iv({1, 2}), h = iv({-1, 3});
    CHECK(o.phi(g, h, g, Rat(10)) == -o.distance(g, h, Rat(10)).value());
  }
  SUBCASE("frozen plane value") {
    CHECK(o.phi(iv({0, 0}), iv({1, 0}), iv({5, 5}), Rat(20)) == Rat(1));
  }
  SUBCASE("cocycle, antisymmetry and bound on random triples") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> coord(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
      IntVec w = iv({coord(rng), coord(rng)});
      IntVec y = iv({coord(rng), coord(rng)});
      IntVec z = iv({coord(rng), coord(rng)});
      IntVec x = iv({coord(rng), coord(rng)});
      Rat budget(40);
      Rat pwy = o.phi(w, y, x, budget).value();
      Rat pyz = o.phi(y, z, x, budget).value();
      Rat pwz = o.phi(w, z, x, budget).value();
      CHECK(pwy + pyz == pwz);
      CHECK(o.phi(z, y, x, budget).value() == -pyz);
      CHECK(abs(pyz) <= o.distance(y, z, budget).value());
    }
  }
}

TEST_CASE("geodesic verification") {
  SUBCASE("alternating walk in the plane") {
    DistanceOracle o{plane_graph()};
    CHECK(is_geodesic(o, GeodesicPrefix{iv({0, 0}), {0, 2, 0, 2}}, Rat(8)) == Tristate::True);
  }
  SUBCASE("backtracking is not a geodesic") {
    DistanceOracle o{plane_graph()};
    CHECK(is_geodesic(o, GeodesicPrefix{iv({0, 0}), {0, 1}}, Rat(8)) == Tristate::False);
  }
  SUBCASE("five unit steps on the line are beaten by 8-1-1-1") {
    DistanceOracle o{line_graph()};
    CHECK(is_geodesic(o, GeodesicPrefix{iv({0}), {0, 0, 0, 0, 0}}, Rat(8)) == Tristate::False);
  }
  SUBCASE("budget too small for the long pairs") {
    DistanceOracle o{plane_graph()};
    CHECK(is_geodesic(o, GeodesicPrefix{iv({0, 0}), {0, 2, 0, 2}}, Rat(2)) == Tristate::Unknown);
  }
}

TEST_CASE("minimality of generator multisets") {
  SUBCASE("cancelling pair") {
    DistanceOracle o{plane_graph()};
    CHECK(minimality_violation(o, {0, 1}, Rat(4)) == Tristate::True);
  }
  SUBCASE("five copies of +1") {
    DistanceOracle o{line_graph()};
    CHECK(minimality_violation(o, {0, 0, 0, 0, 0}, Rat(6)) == Tristate::True);
  }
  SUBCASE("diagonal pair is minimal") {
    DistanceOracle o{plane_graph()};
    CHECK(minimality_violation(o, {0, 2}, Rat(4)) == Tristate::False);
  }
  SUBCASE("budget smaller than the multiset weight") {
    DistanceOracle o{plane_graph()};
    CHECK(minimality_violation(o, {0, 2}, Rat(1)) == Tristate::Unknown);
  }
}

TEST_CASE("valuation estimates") {
  SUBCASE("diagonal geodesic in the plane sees 1") {
    DistanceOracle o{plane_graph()};
    ValuationOptions opt;
    opt.horizon_blocks = 12;
    auto est = estimate_valuation(o, GeodesicForm{iv({0, 0}), {0, 2}}, iv({2, 3}), iv({3, 3}), opt);
    CHECK(est.value == Rat(1));
    CHECK(est.stabilized);
  }
  SUBCASE("vertical family splits on the base column") {
    DistanceOracle o{plane_graph()};
    ValuationOptions opt;
    opt.horizon_blocks = 15;
    // base (2, 0), direction {e2}; f = phi_{(x,y),(x+1,y)} limits to 1 iff x < 2
    auto left = estimate_valuation(o, GeodesicForm{iv({2, 0}), {2}}, iv({1, 1}), iv({2, 1}), opt);
    CHECK(left.value == Rat(1));
    CHECK(left.stabilized);
    auto at = estimate_valuation(o, GeodesicForm{iv({2, 0}), {2}}, iv({2, 1}), iv({3, 1}), opt);
    CHECK(at.value == Rat(-1));
    CHECK(at.stabilized);
    auto right = estimate_valuation(o, GeodesicForm{iv({2, 0}), {2}}, iv({5, 1}), iv({6, 1}), opt);
    CHECK(right.value == Rat(-1));
    CHECK(right.stabilized);
  }
  SUBCASE("line graph direction +8 and -8 are antisymmetric") {
    DistanceOracle o{line_graph()};
    ValuationOptions opt;
    opt.horizon_blocks = 10;
    auto plus = estimate_valuation(o, GeodesicForm{iv({3}), {1}}, iv({3}), iv({11}), opt);
    CHECK(plus.value == Rat(1));
    CHECK(plus.stabilized);
    auto minus = estimate_valuation(o, GeodesicForm{iv({3}), {3}}, iv({3}), iv({11}), opt);
    CHECK(minus.value == Rat(-1));
    CHECK(minus.stabilized);
  }
  SUBCASE("non-minimal blocks are rejected up front") {
    DistanceOracle o{plane_graph()};
    CHECK_THROWS_AS(static_cast<void>(estimate_valuation(o, GeodesicForm{iv({0, 0}), {0, 1}},
                                                         iv({1, 0}), iv({2, 0}))),
                    std::invalid_argument);
  }
}

TEST_CASE("metric properties on random samples") {
  DistanceOracle o{plane_graph()};
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> coord(-4, 4);
  SUBCASE("translation invariance and symmetry") {
    for (int trial = 0; trial < 100; ++trial) {
      IntVec x = iv({coord(rng), coord(rng)});
      IntVec y = iv({coord(rng), coord(rng)});
      IntVec g = iv({coord(rng), coord(rng)});
      Rat budget(30);
      Rat d = o.distance(x, y, budget).value();
      CHECK(o.distance(vec_add(x, g), vec_add(y, g), budget).value() == d);
      CHECK(o.distance(y, x, budget).value() == d);
    }
  }
  SUBCASE("phi is nonincreasing along sampled monotone geodesics") {
    std::uniform_int_distribution<int> len(1, 8);
    std::uniform_int_distribution<int> pick(0, 1);
    for (int trial = 0; trial < 60; ++trial) {
      // walks using only e1/e2 are geodesics; check the convergence lemma
      GeodesicPrefix p{iv({coord(rng), coord(rng)}), {}};
      int L = len(rng);
      for (int i = 0; i < L; ++i) p.steps.push_back(pick(rng) == 0 ? 0 : 2);
      REQUIRE(is_geodesic(o, p, Rat(20)) == Tristate::True);
      IntVec y = iv({coord(rng), coord(rng)});
      IntVec cur = p.base;
      Rat prev = o.phi(y, p.base, cur, Rat(40)).value();
      for (std::size_t s : p.steps) {
        cur = vec_add(cur, o.graph().generators()[s].v);
        Rat next = o.phi(y, p.base, cur, Rat(40)).value();
        CHECK(next <= prev);
        prev = next;
      }
    }
  }
}
