#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cayley/cayley_graph.hpp"

namespace cayley {

/// A problem instance as read from disk: the group, the weighted generating
/// set, and optional run parameters that commands may override.
struct Instance {
  GroupSpec group;
  std::vector<WeightedGenerator> generators;
  bool symmetrize = false;
  bool directed = false;
  std::optional<long long> caps;
  std::optional<long long> window;
  std::optional<long long> budget;
  std::optional<long long> perturb;
  /// Parser remarks (defaulted weights and the like); not serialized and not
  /// part of equality.
  std::vector<std::string> notes;

  bool operator==(const Instance& rhs) const {
    return group.rank == rhs.group.rank && group.relations == rhs.group.relations &&
           generators == rhs.generators && symmetrize == rhs.symmetrize &&
           directed == rhs.directed && caps == rhs.caps && window == rhs.window &&
           budget == rhs.budget && perturb == rhs.perturb;
  }
};

/// Parses and validates instance JSON.  When `symmetrize` is set the
/// generator list is expanded in place: missing inverses are appended after
/// the listed generators, in listing order, with matching weights.  Throws
/// SchemaError with a field path on any malformed input.
Instance parse_instance(const std::string& text);

/// Canonical JSON text (stable field order, two-space indent, trailing
/// newline).  parse_instance(serialize_instance(i)) == i.
std::string serialize_instance(const Instance& instance);

/// Builds the Cayley graph; GenerationError propagates with the cokernel
/// shape when the generators do not generate the group.
CayleyGraph instance_graph(const Instance& instance);

/// The weight vector in generator order, used as costs by the algebraic
/// route.
RatVec instance_costs(const Instance& instance);

}  // namespace cayley
