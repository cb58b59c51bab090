#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/ints.hpp"
#include "cayley/linalg.hpp"

namespace cayley {

/// Ambient free rank plus a relation lattice (columns are relators).
struct GroupSpec {
  std::size_t rank = 0;
  IntMatrix relations;  // rank x r; r == 0 for Z^rank
};

struct WeightedGenerator {
  IntVec v;
  Rat w;
  bool operator==(const WeightedGenerator&) const = default;
};

enum class Tristate { False, True, Unknown };

/// The pair (G, S): validates that S generates G and canonicalizes elements
/// modulo the relation lattice.
class CayleyGraph {
 public:
  CayleyGraph(GroupSpec group, std::vector<WeightedGenerator> generators);

  const GroupSpec& group() const { return group_; }
  const std::vector<WeightedGenerator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  std::size_t rank() const { return group_.rank; }

  /// Every generator's inverse present with equal weight.
  bool symmetric() const { return symmetric_; }
  /// All weights equal (common value below).
  bool equal_weights() const { return equal_weights_; }
  const Rat& common_weight() const { return common_weight_; }

  IntVec canonicalize(const IntVec& x) const;
  /// Element reached from `from` by the given generator indices.
  IntVec walk(const IntVec& from, const std::vector<std::size_t>& steps) const;
  Rat block_weight(const std::vector<std::size_t>& steps) const;

 private:
  GroupSpec group_;
  std::vector<WeightedGenerator> gens_;
  bool has_relations_ = false;
  QuotientGroup relation_quotient_;
  bool symmetric_ = false;
  bool equal_weights_ = false;
  Rat common_weight_ = 0;
};

/// Exact shortest-path distances from the origin out to a rational radius,
/// computed by uniform-cost search; immutable once built.
class BallIndex {
 public:
  BallIndex(const CayleyGraph& graph, Rat radius, std::size_t node_budget);

  const Rat& radius() const { return radius_; }
  std::size_t size() const { return nodes_.size(); }

  /// Exact distance, or nullopt when the element lies beyond the radius.
  std::optional<Rat> distance_from_origin(const IntVec& canonical) const;
  /// Generator indices of one shortest path 0 -> element.
  std::optional<std::vector<std::size_t>> path_from_origin(const IntVec& canonical) const;
  /// All (element, distance) entries in canonical order.
  std::vector<std::pair<IntVec, Rat>> entries() const;

 private:
  struct Node {
    Rat dist;
    std::size_t pred_gen;  // index into generators, npos for origin
    IntVec pred;
  };
  Rat radius_;
  std::map<IntVec, Node> nodes_;
};

/// Growing cache of BallIndex instances over one graph; the query interface
/// used by every oracle check.
class DistanceOracle {
 public:
  explicit DistanceOracle(CayleyGraph graph, std::size_t node_budget = 2000000);

  const CayleyGraph& graph() const { return graph_; }

  /// Exact d(x, y) when it is <= budget, nullopt otherwise ("unknown beyond
  /// budget" -- distinct from any distance).
  std::optional<Rat> distance(const IntVec& x, const IntVec& y, const Rat& budget);
  /// Grows the search radius until the target is reached; throws
  /// BudgetExceededError if the node budget runs out first.
  Rat distance_unbounded(const IntVec& x, const IntVec& y);

  /// phi_{y,z}(x) = d(x,y) - d(x,z).
  std::optional<Rat> phi(const IntVec& y, const IntVec& z, const IntVec& x, const Rat& budget);
  Rat phi_unbounded(const IntVec& y, const IntVec& z, const IntVec& x);

  /// Ball with at least the given radius (cached, grown geometrically).
  const BallIndex& ball(const Rat& radius_at_least);

  std::size_t node_budget() const { return node_budget_; }

 private:
  CayleyGraph graph_;
  std::size_t node_budget_;
  std::unique_ptr<BallIndex> ball_;
};

/// Explicit finite walk: base plus a sequence of generator indices.
struct GeodesicPrefix {
  IntVec base;
  std::vector<std::size_t> steps;
};

/// Canonical eventually-periodic walk: base plus a repeated block
/// (a nonempty multiset of generator indices).
struct GeodesicForm {
  IntVec base;
  std::vector<std::size_t> block;
};

/// Whether every index pair along the prefix realizes the summed step
/// weights as its exact distance; Unknown when a needed check exceeds the
/// budget.
Tristate is_geodesic(DistanceOracle& oracle, const GeodesicPrefix& prefix, const Rat& budget);

/// Whether the sum of the multiset is reachable strictly cheaper than the
/// multiset's own weight.
Tristate minimality_violation(DistanceOracle& oracle, const std::vector<std::size_t>& block,
                              const Rat& budget);

struct ValuationOptions {
  std::size_t horizon_blocks = 50;
  /// Trailing evaluations that must agree for `stabilized`; defaults to
  /// ceil(d(y, base) + d(z, base) + block weight).
  std::optional<std::size_t> window;
};

struct ValuationEstimate {
  Rat value;
  bool stabilized = false;
  std::size_t evaluations = 0;
  std::size_t window_used = 0;
};

/// Walks the geodesic for `horizon_blocks` repetitions of the block and
/// tracks phi_{y,z}; checks that phi_{y,base} and phi_{z,base} are
/// nonincreasing along the walk (MonotonicityError otherwise).
ValuationEstimate estimate_valuation(DistanceOracle& oracle, const GeodesicForm& form,
                                     const IntVec& y, const IntVec& z,
                                     const ValuationOptions& options = {});

}  // namespace cayley
