#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/ints.hpp"

namespace cayley {

/// Dense integer matrix with exact big-integer entries, row major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& cols);
  static IntMatrix from_rows(const std::vector<IntVec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  IntVec column(std::size_t j) const;
  IntVec row(std::size_t i) const;
  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVec apply(const IntVec& x) const;
  bool operator==(const IntMatrix& rhs) const = default;

  bool is_zero() const;

  void swap_rows(std::size_t i, std::size_t j);
  void negate_row(std::size_t i);
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& q);
  void swap_cols(std::size_t i, std::size_t j);
  void negate_col(std::size_t i);
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& q);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

/// Row form: U * A == H with U unimodular, H in row echelon with positive
/// pivots and entries above each pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
};

/// U * A * V == D with U, V unimodular and D diagonal, d1 | d2 | ... | dk >= 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

HermiteForm hermite_normal_form(const IntMatrix& A);
SmithDecomposition smith_normal_form(const IntMatrix& A);

/// Columns form a primitive (saturated) basis of {x : A x = 0}; the result
/// has zero columns when the kernel is trivial.
IntMatrix integer_kernel(const IntMatrix& A);

/// Basis of the lattice spanned by the columns of A (column Hermite form
/// with zero columns dropped).
IntMatrix column_lattice_basis(const IntMatrix& A);

Int determinant(const IntMatrix& A);

// ---- exact rational elimination --------------------------------------

using RatRows = std::vector<RatVec>;

std::size_t rat_rank(RatRows rows);
/// One solution of rows * x = rhs, or nullopt when inconsistent.
std::optional<RatVec> rat_solve(const RatRows& rows, const RatVec& rhs);
/// Basis of {x : rows * x = 0}.
std::vector<RatVec> rat_nullspace(const RatRows& rows, std::size_t width);
std::optional<RatRows> rat_inverse(const RatRows& rows);

// ---- quotients of Z^n by a sublattice --------------------------------

/// Canonical name of a coset: residues at the torsion coordinates plus the
/// unconstrained free coordinates, both in Smith coordinates.
struct CosetLabel {
  IntVec torsion;
  IntVec free_part;
  bool operator==(const CosetLabel&) const = default;
  auto operator<=>(const CosetLabel&) const = default;
  std::string to_string() const;
};

/// Z^n modulo the column span of a sublattice basis, with constant-shape
/// coset labels computed through the Smith decomposition.
class QuotientGroup {
 public:
  QuotientGroup() = default;

  std::size_t ambient_rank() const { return n_; }
  std::size_t free_rank() const { return free_positions_.size(); }
  /// Invariant factors > 1, in divisibility order.
  const std::vector<Int>& invariant_factors() const { return factors_; }
  bool trivial() const { return free_rank() == 0 && factors_.empty(); }
  bool finite() const { return free_rank() == 0; }
  /// Number of cosets; only valid when finite().
  Int order() const;

  CosetLabel label(const IntVec& x) const;
  IntVec representative(const CosetLabel& label) const;
  /// Whether x lies in the sublattice itself.
  bool contains(const IntVec& x) const;
  /// All labels with free coordinates clamped to [-free_cap, free_cap].
  std::vector<CosetLabel> enumerate(const Int& free_cap) const;

 private:
  friend QuotientGroup quotient(std::size_t ambient_rank, const IntMatrix& sublattice_basis);
  std::size_t n_ = 0;
  IntMatrix u_;                         // Smith row transform
  IntMatrix u_inv_;
  std::vector<Int> factors_;            // invariant factors > 1
  std::vector<std::size_t> torsion_positions_;  // rows of u_ with factor > 1
  std::vector<std::size_t> free_positions_;     // rows of u_ with factor 0
};

QuotientGroup quotient(std::size_t ambient_rank, const IntMatrix& sublattice_basis);

}  // namespace cayley
