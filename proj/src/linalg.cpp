#include "cayley/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cayley {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> entries) {
  rows_ = entries.size();
  cols_ = rows_ ? entries.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& row : entries) {
    if (row.size() != cols_) throw std::invalid_argument("ragged initializer");
    for (long long v : row) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVec>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
  std::size_t w = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), w);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != w) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < w; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntVec IntMatrix::column(std::size_t j) const {
  IntVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

IntVec IntMatrix::row(std::size_t i) const {
  IntVec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
  IntMatrix p(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) p.at(i, j) += aik * rhs.at(k, j);
    }
  return p;
}

IntVec IntMatrix::apply(const IntVec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix apply shape mismatch");
  IntVec y(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += at(i, j) * x[j];
  return y;
}

bool IntMatrix::is_zero() const {
  for (const Int& v : a_)
    if (v != 0) return false;
  return true;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) at(dst, c) += q * at(src, c);
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::negate_col(std::size_t i) {
  for (std::size_t r = 0; r < rows_; ++r) at(r, i) = -at(r, i);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) at(r, dst) += q * at(r, src);
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << " ";
      out << at(i, j);
    }
  }
  out << "]";
  return out.str();
}

HermiteForm hermite_normal_form(const IntMatrix& A) {
  HermiteForm hf{A, IntMatrix::identity(A.rows())};
  IntMatrix& H = hf.H;
  IntMatrix& U = hf.U;
  std::size_t m = A.rows(), n = A.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // Bring the column gcd to the pivot row by repeated remainder steps.
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (H.at(i, c) == 0) continue;
        if (best == m || abs(H.at(i, c)) < abs(H.at(best, c))) best = i;
      }
      if (best == m) break;  // column is zero from row r down
      if (best != r) {
        H.swap_rows(r, best);
        U.swap_rows(r, best);
      }
      bool cleared = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H.at(i, c) == 0) continue;
        Int q = floor_div(H.at(i, c), H.at(r, c));
        H.add_row_multiple(i, r, -q);
        U.add_row_multiple(i, r, -q);
        if (H.at(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (H.at(r, c) == 0) continue;
    if (H.at(r, c) < 0) {
      H.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(H.at(i, c), H.at(r, c));
      H.add_row_multiple(i, r, -q);
      U.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  return hf;
}

namespace {

/// True when (s,s) is the only nonzero entry in its row and column.
bool pivot_is_lone(const IntMatrix& D, std::size_t s) {
  for (std::size_t j = s + 1; j < D.cols(); ++j)
    if (D.at(s, j) != 0) return false;
  for (std::size_t i = s + 1; i < D.rows(); ++i)
    if (D.at(i, s) != 0) return false;
  return true;
}

bool submatrix_is_zero(const IntMatrix& D, std::size_t s) {
  for (std::size_t i = s; i < D.rows(); ++i)
    for (std::size_t j = s; j < D.cols(); ++j)
      if (D.at(i, j) != 0) return false;
  return true;
}

void move_min_entry_to_pivot(IntMatrix& D, IntMatrix& U, IntMatrix& V, std::size_t s) {
  std::size_t bi = s, bj = s;
  bool found = false;
  for (std::size_t i = s; i < D.rows(); ++i)
    for (std::size_t j = s; j < D.cols(); ++j) {
      if (D.at(i, j) == 0) continue;
      if (!found || abs(D.at(i, j)) < abs(D.at(bi, bj))) {
        bi = i;
        bj = j;
        found = true;
      }
    }
  if (bi != s) {
    D.swap_rows(s, bi);
    U.swap_rows(s, bi);
  }
  if (bj != s) {
    D.swap_cols(s, bj);
    V.swap_cols(s, bj);
  }
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& A) {
  SmithDecomposition sd{IntMatrix::identity(A.rows()), A, IntMatrix::identity(A.cols())};
  IntMatrix& U = sd.U;
  IntMatrix& D = sd.D;
  IntMatrix& V = sd.V;
  std::size_t steps = std::min(A.rows(), A.cols());
  for (std::size_t s = 0; s < steps; ++s) {
    if (submatrix_is_zero(D, s)) break;
    while (true) {
      move_min_entry_to_pivot(D, U, V, s);
      for (std::size_t i = s + 1; i < D.rows(); ++i) {
        Int q = floor_div(D.at(i, s), D.at(s, s));
        D.add_row_multiple(i, s, -q);
        U.add_row_multiple(i, s, -q);
      }
      for (std::size_t j = s + 1; j < D.cols(); ++j) {
        Int q = floor_div(D.at(s, j), D.at(s, s));
        D.add_col_multiple(j, s, -q);
        V.add_col_multiple(j, s, -q);
      }
      if (!pivot_is_lone(D, s)) continue;
      // Enforce divisibility of the pivot into the rest of the block.
      bool fixed = true;
      for (std::size_t i = s + 1; i < D.rows() && fixed; ++i)
        for (std::size_t j = s + 1; j < D.cols() && fixed; ++j)
          if (D.at(i, j) % D.at(s, s) != 0) {
            D.add_row_multiple(s, i, 1);
            U.add_row_multiple(s, i, 1);
            fixed = false;
          }
      if (fixed) break;
    }
    if (D.at(s, s) < 0) {
      D.negate_row(s);
      U.negate_row(s);
    }
  }
  return sd;
}

IntMatrix integer_kernel(const IntMatrix& A) {
  SmithDecomposition sd = smith_normal_form(A);
  std::size_t n = A.cols();
  std::vector<IntVec> basis;
  std::size_t bound = std::min(A.rows(), n);
  for (std::size_t j = 0; j < n; ++j) {
    bool zero_diag = j >= bound || sd.D.at(j, j) == 0;
    if (zero_diag) basis.push_back(sd.V.column(j));
  }
  return IntMatrix::from_columns(n, basis);
}

IntMatrix column_lattice_basis(const IntMatrix& A) {
  HermiteForm hf = hermite_normal_form(A.transposed());
  IntMatrix ht = hf.H.transposed();
  std::vector<IntVec> cols;
  for (std::size_t j = 0; j < ht.cols(); ++j) {
    IntVec c = ht.column(j);
    bool zero = true;
    for (const Int& v : c)
      if (v != 0) {
        zero = false;
        break;
      }
    if (!zero) cols.push_back(c);
  }
  return IntMatrix::from_columns(A.rows(), cols);
}

Int determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = A.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix M = A;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M.at(k, k) == 0) {
      std::size_t swap = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (M.at(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap == n) return 0;
      M.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        M.at(i, j) = (M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j)) / prev;
    prev = M.at(k, k);
  }
  return sign * M.at(n - 1, n - 1);
}

// ---- exact rational elimination --------------------------------------

namespace {

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatRows& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  std::size_t width = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t sel = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i)
      if (rows[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Rat inv = rows[r][c];
    for (std::size_t j = 0; j < width; ++j) rows[r][j] /= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (std::size_t j = 0; j < width; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rat_rank(RatRows rows) { return rref(rows).size(); }

std::optional<RatVec> rat_solve(const RatRows& rows, const RatVec& rhs) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("solve shape mismatch");
  if (rows.empty()) return RatVec{};
  std::size_t width = rows.front().size();
  RatRows aug = rows;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
  std::vector<std::size_t> pivots = rref(aug);
  for (std::size_t p : pivots)
    if (p == width) return std::nullopt;  // inconsistent
  RatVec x(width, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][width];
  return x;
}

std::vector<RatVec> rat_nullspace(const RatRows& rows, std::size_t width) {
  RatRows work = rows;
  for (const RatVec& r : work)
    if (r.size() != width) throw std::invalid_argument("nullspace shape mismatch");
  std::vector<std::size_t> pivots = rref(work);
  std::vector<bool> is_pivot(width, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t c = 0; c < width; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(width, Rat(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -work[i][c];
    basis.push_back(v);
  }
  return basis;
}

std::optional<RatRows> rat_inverse(const RatRows& rows) {
  std::size_t n = rows.size();
  for (const RatVec& r : rows)
    if (r.size() != n) throw std::invalid_argument("inverse of non-square matrix");
  RatRows aug = rows;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (pivots.size() != n) return std::nullopt;
  RatRows inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

// ---- quotient groups ---------------------------------------------------

std::string CosetLabel::to_string() const {
  std::string out = "t" + vec_to_string(torsion) + "f" + vec_to_string(free_part);
  return out;
}

Int QuotientGroup::order() const {
  if (!finite()) throw std::logic_error("order() of an infinite quotient");
  Int o = 1;
  for (const Int& f : factors_) o *= f;
  return o;
}

CosetLabel QuotientGroup::label(const IntVec& x) const {
  if (x.size() != n_) throw std::invalid_argument("label: vector has wrong rank");
  IntVec y = u_.apply(x);
  CosetLabel out;
  out.torsion.reserve(torsion_positions_.size());
  for (std::size_t k = 0; k < torsion_positions_.size(); ++k)
    out.torsion.push_back(floor_mod(y[torsion_positions_[k]], factors_[k]));
  out.free_part.reserve(free_positions_.size());
  for (std::size_t p : free_positions_) out.free_part.push_back(y[p]);
  return out;
}

IntVec QuotientGroup::representative(const CosetLabel& label) const {
  if (label.torsion.size() != torsion_positions_.size() ||
      label.free_part.size() != free_positions_.size())
    throw std::invalid_argument("representative: label shape mismatch");
  IntVec y(n_, Int(0));
  for (std::size_t k = 0; k < torsion_positions_.size(); ++k)
    y[torsion_positions_[k]] = label.torsion[k];
  for (std::size_t k = 0; k < free_positions_.size(); ++k)
    y[free_positions_[k]] = label.free_part[k];
  return u_inv_.apply(y);
}

bool QuotientGroup::contains(const IntVec& x) const {
  CosetLabel l = label(x);
  for (const Int& v : l.torsion)
    if (v != 0) return false;
  for (const Int& v : l.free_part)
    if (v != 0) return false;
  return true;
}

std::vector<CosetLabel> QuotientGroup::enumerate(const Int& free_cap) const {
  if (free_cap < 0) throw std::invalid_argument("negative coordinate cap");
  std::vector<CosetLabel> out;
  IntVec t(torsion_positions_.size(), Int(0));
  IntVec f(free_positions_.size(), -free_cap);
  while (true) {
    out.push_back(CosetLabel{t, f});
    // odometer over free coordinates, then torsion residues
    std::size_t k = 0;
    for (; k < f.size(); ++k) {
      if (f[k] < free_cap) {
        ++f[k];
        break;
      }
      f[k] = -free_cap;
    }
    if (k < f.size()) continue;
    for (k = 0; k < t.size(); ++k) {
      if (t[k] + 1 < factors_[k]) {
        ++t[k];
        break;
      }
      t[k] = 0;
    }
    if (k == t.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

QuotientGroup quotient(std::size_t ambient_rank, const IntMatrix& sublattice_basis) {
  if (sublattice_basis.cols() > 0 && sublattice_basis.rows() != ambient_rank)
    throw std::invalid_argument("sublattice basis has wrong ambient rank");
  QuotientGroup q;
  q.n_ = ambient_rank;
  IntMatrix basis = sublattice_basis;
  if (basis.cols() == 0) basis = IntMatrix(ambient_rank, 0);
  SmithDecomposition sd = smith_normal_form(basis);
  q.u_ = sd.U;
  // U is unimodular, so its exact rational inverse is integral.
  RatRows urows(ambient_rank, RatVec(ambient_rank));
  for (std::size_t i = 0; i < ambient_rank; ++i)
    for (std::size_t j = 0; j < ambient_rank; ++j) urows[i][j] = Rat(sd.U.at(i, j));
  auto inv = rat_inverse(urows);
  if (!inv) throw std::logic_error("Smith row transform not invertible");
  q.u_inv_ = IntMatrix(ambient_rank, ambient_rank);
  for (std::size_t i = 0; i < ambient_rank; ++i)
    for (std::size_t j = 0; j < ambient_rank; ++j) {
      const Rat& v = (*inv)[i][j];
      if (rat_den(v) != 1) throw std::logic_error("unimodular inverse not integral");
      q.u_inv_.at(i, j) = rat_num(v);
    }
  std::size_t bound = std::min(ambient_rank, basis.cols());
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    Int d = i < bound ? sd.D.at(i, i) : Int(0);
    if (d == 0) {
      q.free_positions_.push_back(i);
    } else if (d > 1) {
      q.torsion_positions_.push_back(i);
      q.factors_.push_back(d);
    }
    // d == 1 contributes nothing to the quotient
  }
  return q;
}

}  // namespace cayley
