#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cayley/cayley_graph.hpp"
#include "cayley/groebner.hpp"
#include "cayley/instance.hpp"
#include "cayley/standard_pairs.hpp"

namespace cayley {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string details;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool budget_exhausted = false;
  bool all_passed() const {
    for (const CheckResult& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

/// Every ball element's normal form weighs exactly its graph distance.
/// The basis is a parameter so tests can inject a corrupted one.
CheckResult check_normal_form_distance(const CayleyGraph& graph, const GroebnerBasis& basis,
                                       const Rat& window, std::size_t node_budget);

/// Standard monomials of weight <= window biject with the ball of that
/// radius, one monomial per element.
CheckResult check_standard_monomial_bijection(const CayleyGraph& graph,
                                              const MonomialIdeal& initial,
                                              const Rat& window, std::size_t node_budget);

/// Cocycle, antisymmetry and the triangle bound for the difference
/// functionals on random triples.
CheckResult check_phi_properties(DistanceOracle& oracle, std::size_t trials, unsigned seed);

/// Difference functionals anchored at the base never increase along sampled
/// single-generator geodesics.
CheckResult check_geodesic_monotonicity(DistanceOracle& oracle, std::size_t samples,
                                        unsigned seed);

/// Closure of orbits is extensive, idempotent and antitone, and the covering
/// relation is consistent with the face lattice.  Skips (passing) when the
/// geometric route does not apply.
CheckResult check_closure_laws(const CayleyGraph& graph);

/// Within the window, covered == standard, and no pair contains another.
CheckResult check_pair_coverage(const MonomialIdeal& initial,
                                const std::vector<StandardPair>& pairs,
                                const RatVec& weights, const Rat& window);

/// Hermite/Smith transforms of random matrices are unimodular and reproduce
/// the input.
CheckResult check_unimodularity(std::size_t trials, unsigned seed);

/// Runs the whole suite against an instance; budget exhaustion inside one
/// check fails that check and sets the report flag.
ValidationReport run_validation(const Instance& instance,
                                std::optional<long long> window_override = {},
                                std::optional<long long> perturb_override = {});

std::string validation_to_json(const ValidationReport& report);

}  // namespace cayley
