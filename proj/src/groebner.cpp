#include "cayley/groebner.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cayley/errors.hpp"
#include "cayley/linalg.hpp"

namespace cayley {

namespace {

std::string variable_name(std::size_t i, std::size_t nvars) {
  if (nvars <= 26) return std::string(1, static_cast<char>('a' + i));
  return "x" + std::to_string(i);
}

void check_same_ring(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("monomials from different rings");
}

}  // namespace

bool Monomial::is_one() const {
  return std::all_of(exps.begin(), exps.end(), [](long long e) { return e == 0; });
}

long long Monomial::degree() const {
  long long d = 0;
  for (long long e : exps) d += e;
  return d;
}

Rat Monomial::weight(const RatVec& costs) const {
  if (costs.size() != exps.size()) throw std::invalid_argument("cost vector has wrong length");
  Rat w = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) w += Rat(exps[i]) * costs[i];
  return w;
}

Int Monomial::weight(const IntVec& costs) const {
  if (costs.size() != exps.size()) throw std::invalid_argument("cost vector has wrong length");
  Int w = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) w += Int(exps[i]) * costs[i];
  return w;
}

std::vector<std::size_t> Monomial::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0) out.push_back(i);
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  check_same_ring(*this, other);
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] > other.exps[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  check_same_ring(*this, other);
  Monomial out = *this;
  for (std::size_t i = 0; i < exps.size(); ++i) out.exps[i] += other.exps[i];
  return out;
}

Monomial Monomial::divide(const Monomial& other) const {
  check_same_ring(*this, other);
  Monomial out = *this;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    out.exps[i] -= other.exps[i];
    if (out.exps[i] < 0) throw std::invalid_argument("monomial quotient is not a monomial");
  }
  return out;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  check_same_ring(a, b);
  Monomial out = a;
  for (std::size_t i = 0; i < out.exps.size(); ++i) out.exps[i] = std::max(a.exps[i], b.exps[i]);
  return out;
}

std::string Monomial::to_string() const {
  if (is_one()) return "1";
  std::ostringstream out;
  bool started = false;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (started) out << "*";
    out << variable_name(i, exps.size());
    if (exps[i] > 1) out << "^" << exps[i];
    started = true;
  }
  return out.str();
}

std::string Binomial::to_string() const {
  return lead.to_string() + " - " + trail.to_string();
}

MonomialOrder::MonomialOrder(RatVec costs) : costs_(std::move(costs)) {
  Int scale = 1;
  for (const Rat& c : costs_) {
    if (c <= 0) throw std::invalid_argument("cost vector must be strictly positive");
    Int d = rat_den(c);
    scale = scale / gcd(scale, d) * d;
  }
  icosts_.reserve(costs_.size());
  for (const Rat& c : costs_) icosts_.push_back(rat_num(c * scale));
}

MonomialOrder MonomialOrder::elimination(RatVec costs, std::size_t eliminated_variable) {
  MonomialOrder order(std::move(costs));
  if (eliminated_variable >= order.nvars())
    throw std::invalid_argument("eliminated variable out of range");
  order.elim_ = eliminated_variable;
  return order;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (a.nvars() != nvars() || b.nvars() != nvars())
    throw std::invalid_argument("monomial does not match order's ring");
  if (elim_) {
    long long ea = a.exps[*elim_], eb = b.exps[*elim_];
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  Int wa = a.weight(icosts_), wb = b.weight(icosts_);
  if (wa != wb) return wa < wb ? -1 : 1;
  long long da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < nvars(); ++i)
    if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i] ? 1 : -1;
  return 0;
}

bool MonomialOrder::weight_tie(const Monomial& a, const Monomial& b) const {
  return a.exps != b.exps && a.weight(icosts_) == b.weight(icosts_);
}

bool MonomialIdeal::contains(const Monomial& m) const {
  for (const Monomial& g : generators)
    if (g.divides(m)) return true;
  return false;
}

namespace {

/// Optional sink for equal-cost binomials seen during completion.
struct TieLog {
  std::set<Binomial>* sink = nullptr;
  void note(const Binomial& b) {
    if (sink) sink->insert(b);
  }
};

/// Orients a difference of monomials so that lead >= trail, recording a
/// genericity violation whenever the two halves have equal cost.
Binomial normalize(Monomial a, Monomial b, const MonomialOrder& order, TieLog& ties) {
  Binomial out;
  if (order.compare(a, b) >= 0)
    out = Binomial{std::move(a), std::move(b)};
  else
    out = Binomial{std::move(b), std::move(a)};
  if (!out.is_zero() && order.weight_tie(out.lead, out.trail)) ties.note(out);
  return out;
}

/// Full normal form: the lead, then the trail, reduced until no basis lead
/// divides either.  Every rewrite strictly decreases the touched half in
/// the order, so this terminates.
Binomial reduce(Binomial b, const std::vector<Binomial>& basis, const MonomialOrder& order,
                TieLog& ties) {
  bool changed = true;
  while (changed && !b.is_zero()) {
    changed = false;
    for (const Binomial& g : basis) {
      if (g.lead.divides(b.lead)) {
        b = normalize(b.lead.divide(g.lead) * g.trail, std::move(b.trail), order, ties);
        changed = true;
        break;
      }
    }
  }
  changed = true;
  while (changed && !b.is_zero()) {
    changed = false;
    for (const Binomial& g : basis) {
      if (g.lead.divides(b.trail)) {
        b = normalize(std::move(b.lead), b.trail.divide(g.lead) * g.trail, order, ties);
        changed = true;
        break;
      }
    }
  }
  return b;
}

Binomial s_pair(const Binomial& f, const Binomial& g, const MonomialOrder& order, TieLog& ties) {
  Monomial l = Monomial::lcm(f.lead, g.lead);
  return normalize(l.divide(f.lead) * f.trail, l.divide(g.lead) * g.trail, order, ties);
}

/// Buchberger completion followed by interreduction.  Every S-pair is
/// processed (no coprime-lead shortcut): pairs like the one joining ab-1
/// and cd-1 are exactly where equal-cost witnesses such as ab-cd surface,
/// and the witness list must not depend on a skipped reduction.
std::vector<Binomial> completion(const std::vector<Binomial>& input, const MonomialOrder& order,
                                 TieLog& ties) {
  std::vector<Binomial> basis;
  std::deque<std::pair<std::size_t, std::size_t>> queue;
  auto append = [&](Binomial b) {
    for (std::size_t k = 0; k < basis.size(); ++k) queue.emplace_back(k, basis.size());
    basis.push_back(std::move(b));
  };
  for (const Binomial& g : input) {
    Binomial r = reduce(normalize(g.lead, g.trail, order, ties), basis, order, ties);
    if (!r.is_zero()) append(std::move(r));
  }
  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    Binomial r = reduce(s_pair(basis[i], basis[j], order, ties), basis, order, ties);
    if (!r.is_zero()) append(std::move(r));
  }

  // Interreduce to the unique reduced basis: every element fully reduced
  // modulo the others, discarding those that vanish.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<Binomial> others;
      others.reserve(basis.size() - 1);
      for (std::size_t k = 0; k < basis.size(); ++k)
        if (k != i) others.push_back(basis[k]);
      Binomial r = reduce(basis[i], others, order, ties);
      if (r == basis[i]) continue;
      changed = true;
      if (r.is_zero()) {
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        --i;
      } else {
        basis[i] = std::move(r);
      }
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

/// (I : x_v^inf) for binomial ideals: adjoin t with t*x_v = 1, eliminate t.
/// A lead free of t forces the trail free of t under the block order, so
/// the surviving binomials project directly.
std::vector<Binomial> saturate_variable(const std::vector<Binomial>& gens, std::size_t nvars,
                                        std::size_t var) {
  std::size_t m = nvars + 1;
  MonomialOrder order = MonomialOrder::elimination(RatVec(m, Rat(1)), nvars);
  TieLog silent;

  std::vector<Binomial> lifted;
  lifted.reserve(gens.size() + 1);
  for (const Binomial& g : gens) {
    Monomial lead = g.lead, trail = g.trail;
    lead.exps.push_back(0);
    trail.exps.push_back(0);
    lifted.push_back(Binomial{std::move(lead), std::move(trail)});
  }
  Monomial tx = Monomial::one(m);
  tx.exps[var] = 1;
  tx.exps[nvars] = 1;
  lifted.push_back(Binomial{std::move(tx), Monomial::one(m)});

  std::vector<Binomial> out;
  for (const Binomial& g : completion(lifted, order, silent)) {
    if (g.lead.exps[nvars] != 0) continue;
    if (g.trail.exps[nvars] != 0)
      throw std::logic_error("elimination order left the inverse variable in a trail");
    Monomial lead = g.lead, trail = g.trail;
    lead.exps.pop_back();
    trail.exps.pop_back();
    out.push_back(Binomial{std::move(lead), std::move(trail)});
  }
  return out;
}

}  // namespace

std::vector<IntVec> cayley_lattice(const GroupSpec& group,
                                   const std::vector<WeightedGenerator>& generators) {
  std::size_t n = group.rank;
  std::size_t s = generators.size();
  std::size_t r = group.relations.cols();
  std::vector<IntVec> cols;
  cols.reserve(s + r);
  for (const auto& g : generators) {
    if (g.v.size() != n) throw std::invalid_argument("generator has wrong dimension");
    cols.push_back(g.v);
  }
  for (std::size_t j = 0; j < r; ++j) cols.push_back(group.relations.column(j));
  IntMatrix stacked = IntMatrix::from_columns(n, cols);

  QuotientGroup cok = quotient(n, stacked);
  if (!cok.trivial()) {
    std::vector<long long> torsion;
    for (const Int& f : cok.invariant_factors()) torsion.push_back(f.convert_to<long long>());
    throw GenerationError("generators do not generate the group", cok.free_rank(), torsion);
  }

  // Kernel of [A | R], projected to the generator block; the projection of
  // a spanning set spans the projected lattice, so renormalize to a basis.
  IntMatrix full_kernel = integer_kernel(stacked);
  IntMatrix projected(s, full_kernel.cols());
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < full_kernel.cols(); ++j)
      projected.at(i, j) = full_kernel.at(i, j);
  IntMatrix basis = column_lattice_basis(projected);

  std::vector<IntVec> out;
  out.reserve(basis.cols());
  for (std::size_t j = 0; j < basis.cols(); ++j) out.push_back(basis.column(j));
  return out;
}

LatticeIdeal lattice_ideal_generators(std::size_t nvars, const std::vector<IntVec>& basis) {
  std::vector<Binomial> gens;
  for (const IntVec& u : basis) {
    if (u.size() != nvars) throw std::invalid_argument("lattice vector has wrong length");
    Monomial plus = Monomial::one(nvars), minus = Monomial::one(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
      if (u[i] > 0) plus.exps[i] = u[i].convert_to<long long>();
      if (u[i] < 0) minus.exps[i] = (-u[i]).convert_to<long long>();
    }
    Binomial b{std::move(plus), std::move(minus)};
    if (!b.is_zero()) gens.push_back(std::move(b));
  }

  for (std::size_t var = 0; var < nvars; ++var) gens = saturate_variable(gens, nvars, var);

  // Canonical presentation: the reduced basis under unit costs, which the
  // ideal alone determines.
  TieLog silent;
  MonomialOrder unit(RatVec(nvars, Rat(1)));
  return LatticeIdeal{nvars, basis, completion(gens, unit, silent)};
}

GroebnerBasis buchberger(const LatticeIdeal& ideal, const MonomialOrder& order) {
  if (order.nvars() != ideal.nvars)
    throw std::invalid_argument("order does not match the ideal's ring");
  std::set<Binomial> ties;
  TieLog log{&ties};
  std::vector<Binomial> elements = completion(ideal.generators, order, log);
  return GroebnerBasis{order, std::move(elements),
                       std::vector<Binomial>(ties.begin(), ties.end())};
}

std::pair<Monomial, Rat> normal_form(const Monomial& m, const GroebnerBasis& gb) {
  if (m.nvars() != gb.order.nvars())
    throw std::invalid_argument("monomial does not match the basis ring");
  Monomial cur = m;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Binomial& g : gb.elements) {
      if (g.lead.divides(cur)) {
        cur = cur.divide(g.lead) * g.trail;
        changed = true;
        break;
      }
    }
  }
  Rat w = cur.weight(gb.order.costs());
  return {std::move(cur), std::move(w)};
}

MonomialIdeal initial_ideal(const GroebnerBasis& gb) {
  MonomialIdeal ideal;
  ideal.nvars = gb.order.nvars();
  ideal.generic = gb.generic();
  for (const Binomial& g : gb.elements) ideal.generators.push_back(g.lead);
  // Reduced bases already have pairwise non-dividing leads; minimalize
  // defensively so the invariant never leans on that.
  std::sort(ideal.generators.begin(), ideal.generators.end());
  std::vector<Monomial> minimal;
  for (const Monomial& m : ideal.generators) {
    bool redundant = false;
    for (const Monomial& kept : minimal)
      if (kept.divides(m) && kept != m) {
        redundant = true;
        break;
      }
    if (!redundant && (minimal.empty() || minimal.back() != m)) minimal.push_back(m);
  }
  ideal.generators = std::move(minimal);
  return ideal;
}

RatVec perturb_costs(const RatVec& costs, const Int& denominator) {
  if (denominator < 2) throw std::invalid_argument("perturbation denominator must be >= 2");
  RatVec out = costs;
  Rat eps(1, 1);
  for (Rat& c : out) {
    eps /= Rat(denominator);
    c += eps;
  }
  return out;
}

}  // namespace cayley
