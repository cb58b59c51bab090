#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cayley/cayley_graph.hpp"
#include "cayley/ints.hpp"

namespace cayley {

/// Power product of generator variables (dense exponent vector).
struct Monomial {
  std::vector<long long> exps;

  static Monomial one(std::size_t nvars) { return Monomial{std::vector<long long>(nvars, 0)}; }

  std::size_t nvars() const { return exps.size(); }
  bool is_one() const;
  long long degree() const;
  Rat weight(const RatVec& costs) const;
  Int weight(const IntVec& costs) const;
  std::vector<std::size_t> support() const;
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; requires other | this.
  Monomial divide(const Monomial& other) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);
  std::string to_string() const;

  auto operator<=>(const Monomial&) const = default;
};

/// Difference of two monomials, lead - trail; zero when the halves agree.
/// Both halves always map to the same group element for members of a
/// lattice ideal.
struct Binomial {
  Monomial lead;
  Monomial trail;

  bool is_zero() const { return lead == trail; }
  std::string to_string() const;

  auto operator<=>(const Binomial&) const = default;
};

/// Total monomial order: strictly positive rational costs (cleared to a
/// common integer scale), graded-lexicographic tie-break on the fixed
/// variable numbering.  An optional block-first variable turns it into an
/// elimination order for that variable.
class MonomialOrder {
 public:
  explicit MonomialOrder(RatVec costs);
  static MonomialOrder elimination(RatVec costs, std::size_t eliminated_variable);

  std::size_t nvars() const { return costs_.size(); }
  const RatVec& costs() const { return costs_; }
  const IntVec& integer_costs() const { return icosts_; }

  /// -1, 0, +1 for a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  /// Distinct monomials of equal cost: the configuration that makes the
  /// cost vector non-generic.
  bool weight_tie(const Monomial& a, const Monomial& b) const;

 private:
  RatVec costs_;
  IntVec icosts_;
  std::optional<std::size_t> elim_;
};

/// The ideal of all closed walks: binomials x^{u+} - x^{u-} over the
/// kernel lattice, saturated at every variable so that the generators
/// present the full kernel of k[S] -> k[G].  `generators` is the reduced
/// basis under unit costs, hence independent of the input basis choice.
struct LatticeIdeal {
  std::size_t nvars = 0;
  std::vector<IntVec> lattice_basis;
  std::vector<Binomial> generators;
};

/// Reduced basis under `order`; `tie_witnesses` collects every distinct
/// equal-cost binomial met during completion ("no tie observed" is the
/// strongest genericity statement this bounded computation can make).
struct GroebnerBasis {
  MonomialOrder order;
  std::vector<Binomial> elements;
  std::vector<Binomial> tie_witnesses;

  bool generic() const { return tie_witnesses.empty(); }
};

/// Monomial ideal by its minimal generators.
struct MonomialIdeal {
  std::size_t nvars = 0;
  std::vector<Monomial> generators;
  /// Propagated from the basis this was read off of.
  bool generic = true;

  bool contains(const Monomial& m) const;
};

/// Basis of {u : sum u_i s_i = 0 in G}; throws GenerationError (with the
/// cokernel shape) when S does not generate.
std::vector<IntVec> cayley_lattice(const GroupSpec& group,
                                   const std::vector<WeightedGenerator>& generators);

/// Saturates the basis binomials at every variable (iterated single-variable
/// colon ideals via an adjoined inverse and elimination) and canonicalizes.
LatticeIdeal lattice_ideal_generators(std::size_t nvars, const std::vector<IntVec>& basis);

/// Buchberger completion + interreduction; records cost ties at every
/// leading-term selection but never fails on them.
GroebnerBasis buchberger(const LatticeIdeal& ideal, const MonomialOrder& order);

/// Fully reduced standard monomial and its cost under the basis order.
std::pair<Monomial, Rat> normal_form(const Monomial& m, const GroebnerBasis& gb);

/// Minimal generators of the ideal of leading terms.
MonomialIdeal initial_ideal(const GroebnerBasis& gb);

/// c + (1/D, 1/D^2, ...): breaks cost ties without reordering any pair of
/// monomials whose costs already differ at desk-scale exponents.
RatVec perturb_costs(const RatVec& costs, const Int& denominator);

}  // namespace cayley
