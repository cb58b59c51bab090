#include "cayley/standard_pairs.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cayley/errors.hpp"

namespace cayley {

namespace {

std::string index_list(const std::vector<std::size_t>& xs, std::size_t nvars) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ",";
    Monomial v = Monomial::one(nvars);
    v.exps[xs[i]] = 1;
    out << v.to_string();
  }
  out << "}";
  return out.str();
}

}  // namespace

std::string StandardPair::to_string() const {
  return "(" + root.to_string() + ", " + index_list(free_vars, root.nvars()) + ")";
}

std::string BoundaryPointAlg::to_string() const {
  std::ostringstream out;
  if (!base.is_one() || direction.empty()) out << base.to_string();
  for (std::size_t v : direction) {
    if (out.tellp() > 0) out << "*";
    Monomial m = Monomial::one(base.nvars());
    m.exps[v] = 1;
    out << m.to_string() << "^inf";
  }
  return out.str();
}

std::string BoundaryFamilyAlg::to_string() const {
  return BoundaryPointAlg{base, direction}.to_string() + " with free exponents on " +
         index_list(free_finite, base.nvars());
}

bool pair_covers(const StandardPair& p, const Monomial& m) {
  if (m.nvars() != p.root.nvars()) return false;
  std::size_t t = 0;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    bool free_var = t < p.free_vars.size() && p.free_vars[t] == i;
    if (free_var) {
      ++t;
      if (m.exps[i] < p.root.exps[i]) return false;  // root avoids free vars anyway
    } else if (m.exps[i] != p.root.exps[i]) {
      return false;
    }
  }
  return true;
}

bool pair_contained(const StandardPair& p, const StandardPair& q) {
  if (!std::includes(q.free_vars.begin(), q.free_vars.end(), p.free_vars.begin(),
                     p.free_vars.end()))
    return false;
  if (!q.root.divides(p.root)) return false;
  for (std::size_t v : p.root.divide(q.root).support())
    if (!std::binary_search(q.free_vars.begin(), q.free_vars.end(), v)) return false;
  return true;
}

std::vector<StandardPair> standard_pairs(const MonomialIdeal& J) {
  std::size_t n = J.nvars;
  if (n > 16) throw BudgetExceededError("standard pair scan over " + std::to_string(n) +
                                        " variables exceeds the subset budget");

  // Exponents of maximal pair roots stay below the per-variable maximum
  // over the generators: otherwise the variable could join the free set.
  std::vector<long long> bound(n, 0);
  for (const Monomial& g : J.generators)
    for (std::size_t i = 0; i < n; ++i) bound[i] = std::max(bound[i], g.exps[i]);

  // root * (free monomials) all standard <=> no generator, restricted to
  // the non-free variables, divides the root.
  auto admissible = [&](const Monomial& root, const std::vector<bool>& in_t) {
    for (const Monomial& g : J.generators) {
      bool divides = true;
      for (std::size_t i = 0; i < n && divides; ++i)
        if (!in_t[i] && g.exps[i] > root.exps[i]) divides = false;
      if (divides) return false;
    }
    return true;
  };

  std::vector<StandardPair> found;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<bool> in_t(n, false);
    std::vector<std::size_t> t;
    std::vector<std::size_t> outside;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        in_t[i] = true;
        t.push_back(i);
      } else {
        outside.push_back(i);
      }
    }
    // odometer over root exponents on the outside variables
    Monomial root = Monomial::one(n);
    while (true) {
      if (admissible(root, in_t)) found.push_back(StandardPair{root, t});
      std::size_t k = 0;
      for (; k < outside.size(); ++k) {
        std::size_t i = outside[k];
        if (root.exps[i] + 1 < bound[i]) {
          ++root.exps[i];
          break;
        }
        root.exps[i] = 0;
      }
      if (k == outside.size()) break;
    }
  }

  std::vector<StandardPair> maximal;
  for (const StandardPair& p : found) {
    bool dominated = false;
    for (const StandardPair& q : found)
      if (!(q == p) && pair_contained(p, q)) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(p);
  }
  std::sort(maximal.begin(), maximal.end());
  return maximal;
}

AlgebraicBoundary enumerate_boundary(const MonomialIdeal& J, long long caps) {
  if (caps < 0) throw std::invalid_argument("negative enumeration cap");
  std::set<BoundaryPointAlg> points;
  std::set<BoundaryFamilyAlg> families;

  for (const StandardPair& p : standard_pairs(J)) {
    std::size_t k = p.free_vars.size();
    // nonempty subsets of the free variables become the infinite direction
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      std::vector<std::size_t> direction;
      std::vector<std::size_t> finite;
      for (std::size_t j = 0; j < k; ++j) {
        if (mask & (std::size_t{1} << j))
          direction.push_back(p.free_vars[j]);
        else
          finite.push_back(p.free_vars[j]);
      }
      if (!finite.empty()) families.insert(BoundaryFamilyAlg{p.root, finite, direction});
      // concrete sample: finite exponents up to the cap
      Monomial base = p.root;
      while (true) {
        points.insert(BoundaryPointAlg{base, direction});
        std::size_t j = 0;
        for (; j < finite.size(); ++j) {
          if (base.exps[finite[j]] + 1 <= caps) {
            ++base.exps[finite[j]];
            break;
          }
          base.exps[finite[j]] = 0;
        }
        if (j == finite.size()) break;
      }
    }
  }
  return AlgebraicBoundary{{points.begin(), points.end()}, {families.begin(), families.end()}};
}

Tristate points_distinct_generic(const BoundaryPointAlg& p, const BoundaryPointAlg& q,
                                 bool generic) {
  if (p == q) return Tristate::False;
  return generic ? Tristate::True : Tristate::Unknown;
}

}  // namespace cayley
