#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cayley/geometric_boundary.hpp"
#include "cayley/groebner.hpp"
#include "cayley/instance.hpp"
#include "cayley/standard_pairs.hpp"

namespace cayley {

struct ReportOptions {
  std::string route = "both";  // "geo", "alg" or "both"
  /// Cap on finite exponents / free coset coordinates when listing points.
  long long caps = 2;
  /// Perturbation denominator for the algebraic costs; unset runs the
  /// weights as given (ties are then possible and flagged).
  std::optional<long long> perturb;
};

/// Geometric side of a report; `boundary` is set exactly when the route
/// applies to the instance.
struct GeometricReport {
  bool applicable = false;
  std::string inapplicable_reason;
  std::optional<GeometricBoundary> boundary;
  std::optional<Int> total_points;  // nullopt when some orbit is infinite
};

struct AlgebraicReport {
  RatVec costs;
  bool perturbed = false;
  GroebnerBasis basis;
  MonomialIdeal initial;
  std::vector<StandardPair> pairs;
  AlgebraicBoundary boundary;
  long long caps = 0;
};

/// One row of the route cross-check: points over one proper face, counted
/// both ways.  Algebraic points land on the face their direction spans.
struct ReconciliationRow {
  std::size_t face_id = 0;
  std::optional<Int> geometric_points;  // nullopt = infinite orbit
  long long algebraic_points = 0;       // concrete points within the caps
  long long algebraic_families = 0;     // symbolic families on the face
  bool match = false;
};

struct BoundaryReport {
  Instance instance;
  std::string route;
  std::optional<GeometricReport> geometric;
  std::optional<AlgebraicReport> algebraic;
  std::vector<ReconciliationRow> reconciliation;
  /// False when the algebraic order had weight ties: point identities are
  /// then not certified and counts may overstate distinct points.
  bool counts_reliable = true;
  std::vector<std::string> notes;
  std::vector<std::string> discrepancies;
};

/// Runs the requested routes.  With route "geo" an inapplicable instance
/// throws RouteInapplicableError; with "both" the failure is recorded in the
/// report instead and the algebraic route still runs.
BoundaryReport compute_boundary_report(const Instance& instance, const ReportOptions& options);

/// Deterministic JSON text for the report (stable field order, two-space
/// indent, trailing newline).
std::string report_to_json(const BoundaryReport& report);

/// Deterministic DOT digraph of the closure order on orbits; requires the
/// geometric side. Nodes are labeled by face vertex list and quotient shape.
std::string export_dot(const BoundaryReport& report);

/// "Z^2", "Z (+) Z/2", "Z/8", "1" and the like.
std::string quotient_shape(const QuotientGroup& q);

}  // namespace cayley
