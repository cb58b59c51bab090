#pragma once

#include <cstddef>
#include <vector>

#include "cayley/cayley_graph.hpp"
#include "cayley/groebner.hpp"

namespace cayley {

/// Maximal set of standard monomials of the shape root * (anything
/// supported on free_vars): the root avoids free_vars, and no ideal
/// generator restricted outside free_vars divides the root.
struct StandardPair {
  Monomial root;
  std::vector<std::size_t> free_vars;  // sorted

  auto operator<=>(const StandardPair&) const = default;
  std::string to_string() const;
};

/// Boundary point as an expression: finite part `base` plus the variables
/// sent to infinity.  Lies under some standard pair.
struct BoundaryPointAlg {
  Monomial base;
  std::vector<std::size_t> direction;  // sorted, nonempty

  auto operator<=>(const BoundaryPointAlg&) const = default;
  std::string to_string() const;
};

/// Infinite family of boundary points: the free_finite exponents range
/// over all of N (listed concretely only up to the enumeration cap).
struct BoundaryFamilyAlg {
  Monomial base;
  std::vector<std::size_t> free_finite;  // sorted, nonempty
  std::vector<std::size_t> direction;    // sorted, nonempty

  auto operator<=>(const BoundaryFamilyAlg&) const = default;
  std::string to_string() const;
};

struct AlgebraicBoundary {
  std::vector<BoundaryPointAlg> points;     // deduped, sorted
  std::vector<BoundaryFamilyAlg> families;  // deduped, sorted
};

/// Complete list of standard pairs of J: admissibility by restriction
/// divisibility, maximality by the pair containment order.  Exponential
/// subset scan; throws BudgetExceededError beyond 16 variables.
std::vector<StandardPair> standard_pairs(const MonomialIdeal& J);

/// Whether m = root * (monomial supported on free_vars).
bool pair_covers(const StandardPair& p, const Monomial& m);

/// Whether every monomial covered by p is covered by q.
bool pair_contained(const StandardPair& p, const StandardPair& q);

/// All (base, direction) expressions with at least one infinite exponent,
/// finite exponents enumerated up to `caps`; families with free finite
/// coordinates are additionally reported symbolically.  Duplicates from
/// overlapping pairs collapse to the canonical (base, direction) form.
AlgebraicBoundary enumerate_boundary(const MonomialIdeal& J, long long caps);

/// Distinct boundary points under genericity; Unknown when ties were
/// observed (equal expressions are never distinct either way).
Tristate points_distinct_generic(const BoundaryPointAlg& p, const BoundaryPointAlg& q,
                                 bool generic);

}  // namespace cayley
