#pragma once

#include <stdexcept>
#include <string>

namespace cayley {

/// Input whose geometry is too thin to work with (affinely dependent
/// point sets, hulls without the origin in the interior, ...).
struct DegenerateInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A search or enumeration hit its configured budget before finishing.
struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested computation route does not apply to this instance.
struct RouteInapplicableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed instance document (missing fields, wrong types, bad version).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The generator set does not generate the whole group; carries the
/// cokernel shape as a diagnostic.
struct GenerationError : std::runtime_error {
  GenerationError(const std::string& message, std::size_t cokernel_free_rank,
                  std::vector<long long> cokernel_torsion)
      : std::runtime_error(message),
        free_rank(cokernel_free_rank),
        torsion(std::move(cokernel_torsion)) {}
  std::size_t free_rank;
  std::vector<long long> torsion;
};

/// A difference-of-distance sequence that must be nonincreasing went up;
/// points at a non-geodesic walk or an undersized distance budget.
struct MonotonicityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cayley
