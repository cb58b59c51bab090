#include "cayley/validation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <utility>

#include "cayley/errors.hpp"
#include "cayley/geometric_boundary.hpp"
#include "cayley/linalg.hpp"
#include "json.hpp"

namespace cayley {

namespace {

/// Calls fn(exponents) for every monomial whose weight is at most `window`.
void enumerate_monomials(const RatVec& weights, const Rat& window,
                         const std::function<void(const Monomial&)>& fn) {
  std::vector<long long> exps(weights.size(), 0);
  std::function<void(std::size_t, Rat)> walk = [&](std::size_t var, Rat left) {
    if (var == weights.size()) {
      fn(Monomial{exps});
      return;
    }
    walk(var + 1, left);
    Rat remaining = left;
    long long e = 0;
    while (remaining >= weights[var]) {
      remaining -= weights[var];
      exps[var] = ++e;
      walk(var + 1, remaining);
    }
    exps[var] = 0;
  };
  walk(0, window);
}

IntVec monomial_element(const CayleyGraph& graph, const Monomial& m) {
  IntVec x(graph.rank(), Int(0));
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    const IntVec& v = graph.generators()[i].v;
    for (std::size_t r = 0; r < x.size(); ++r) x[r] += Int(m.exps[i]) * v[r];
  }
  return graph.canonicalize(x);
}

IntVec random_vector(std::mt19937& rng, std::size_t n, long long radius) {
  std::uniform_int_distribution<long long> coord(-radius, radius);
  IntVec v(n);
  for (Int& x : v) x = coord(rng);
  return v;
}

CheckResult guarded(const std::string& name, bool* budget_flag,
                    const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const BudgetExceededError& e) {
    if (budget_flag) *budget_flag = true;
    return {name, false, std::string("budget exhausted: ") + e.what()};
  }
}

}  // namespace

CheckResult check_normal_form_distance(const CayleyGraph& graph, const GroebnerBasis& basis,
                                       const Rat& window, std::size_t node_budget) {
  CheckResult result{"normal-form-distance", false, ""};
  RatVec weights;
  for (const auto& gen : graph.generators()) weights.push_back(gen.w);
  BallIndex ball(graph, window, node_budget);
  std::size_t violations = 0;
  for (const auto& [element, dist] : ball.entries()) {
    auto path = ball.path_from_origin(element);
    std::vector<long long> exps(graph.size(), 0);
    for (std::size_t step : *path) ++exps[step];
    auto [nf, nf_weight] = normal_form(Monomial{exps}, basis);
    (void)nf_weight;  // weighed under the order's costs, not the graph's
    if (nf.weight(weights) != dist) ++violations;
    if (normal_form(nf, basis).first != nf) ++violations;
  }
  result.passed = violations == 0;
  result.details = std::to_string(ball.size()) + " elements, " +
                   std::to_string(violations) + " violations";
  return result;
}

CheckResult check_standard_monomial_bijection(const CayleyGraph& graph,
                                              const MonomialIdeal& initial,
                                              const Rat& window, std::size_t node_budget) {
  CheckResult result{"standard-monomial-bijection", false, ""};
  RatVec weights;
  for (const auto& gen : graph.generators()) weights.push_back(gen.w);
  std::map<IntVec, std::size_t> hits;
  std::size_t standard_count = 0;
  enumerate_monomials(weights, window, [&](const Monomial& m) {
    if (initial.contains(m)) return;
    ++standard_count;
    ++hits[monomial_element(graph, m)];
  });
  BallIndex ball(graph, window, node_budget);
  std::size_t violations = 0;
  for (const auto& [element, dist] : ball.entries()) {
    (void)dist;
    auto it = hits.find(element);
    if (it == hits.end() || it->second != 1) ++violations;
  }
  if (standard_count != ball.size()) ++violations;
  result.passed = violations == 0;
  result.details = std::to_string(standard_count) + " standard monomials, " +
                   std::to_string(ball.size()) + " ball elements, " +
                   std::to_string(violations) + " violations";
  return result;
}

CheckResult check_phi_properties(DistanceOracle& oracle, std::size_t trials, unsigned seed) {
  CheckResult result{"phi-cocycle-antisymmetry", false, ""};
  std::mt19937 rng(seed);
  const std::size_t n = oracle.graph().rank();
  std::size_t violations = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    IntVec w = random_vector(rng, n, 3), y = random_vector(rng, n, 3);
    IntVec z = random_vector(rng, n, 3), x = random_vector(rng, n, 3);
    Rat wy = oracle.phi_unbounded(w, y, x);
    Rat yz = oracle.phi_unbounded(y, z, x);
    Rat wz = oracle.phi_unbounded(w, z, x);
    if (wy + yz != wz) ++violations;
    if (oracle.phi_unbounded(y, w, x) != -wy) ++violations;
    if (yz > oracle.distance_unbounded(z, y) || yz < -oracle.distance_unbounded(y, z)) {
      ++violations;
    }
  }
  result.passed = violations == 0;
  result.details = std::to_string(trials) + " triples, " + std::to_string(violations) +
                   " violations";
  return result;
}

CheckResult check_geodesic_monotonicity(DistanceOracle& oracle, std::size_t samples,
                                        unsigned seed) {
  CheckResult result{"geodesic-monotonicity", false, ""};
  std::mt19937 rng(seed);
  const std::size_t n = oracle.graph().rank();
  std::uniform_int_distribution<std::size_t> pick(0, oracle.graph().size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  ValuationOptions options;
  options.horizon_blocks = 8;
  std::size_t run = 0, violations = 0;
  for (std::size_t attempt = 0; attempt < 10 * samples && run < samples; ++attempt) {
    std::vector<std::size_t> block{pick(rng)};
    if (coin(rng)) block.push_back(pick(rng));
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());

    // Keep the block only when its periodic word is distance-realizing: one
    // query at the far end certifies every prefix by subadditivity.
    IntVec stretch(n, Int(0));
    Rat word_weight(0);
    for (std::size_t g : block) {
      stretch = vec_add(stretch, oracle.graph().generators()[g].v);
      word_weight += oracle.graph().generators()[g].w;
    }
    const Int reps{options.horizon_blocks + 2};
    IntVec far(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) far[i] = stretch[i] * reps;
    if (oracle.distance_unbounded(IntVec(n, Int(0)), far) != word_weight * Rat(reps)) {
      continue;
    }

    GeodesicForm form{random_vector(rng, n, 2), block};
    IntVec y = random_vector(rng, n, 2);
    ++run;
    try {
      estimate_valuation(oracle, form, y, form.base, options);
    } catch (const MonotonicityError&) {
      ++violations;
    }
  }
  result.passed = violations == 0;
  result.details = std::to_string(run) + " geodesics walked, " +
                   std::to_string(violations) + " violations";
  return result;
}

CheckResult check_closure_laws(const CayleyGraph& graph) {
  CheckResult result{"closure-operator-laws", false, ""};
  std::optional<GeometricBoundary> gb;
  try {
    gb.emplace(graph);
  } catch (const RouteInapplicableError& e) {
    result.passed = true;
    result.details = std::string("skipped: ") + e.what();
    return result;
  }
  const FaceLattice& lattice = gb->polytope().face_lattice();
  std::size_t violations = 0;
  auto member = [](const std::vector<std::size_t>& set, std::size_t x) {
    return std::find(set.begin(), set.end(), x) != set.end();
  };
  for (std::size_t f = 0; f < lattice.size(); ++f) {
    std::vector<std::size_t> closed = gb->closure_faces(f);
    if (!member(closed, f)) ++violations;
    for (std::size_t g : closed) {
      for (std::size_t h : gb->closure_faces(g)) {
        if (!member(closed, h)) ++violations;
      }
    }
    for (std::size_t g = 0; g < lattice.size(); ++g) {
      if (!lattice.contains(f, g)) continue;
      for (std::size_t h : gb->closure_faces(g)) {
        if (!member(closed, h)) ++violations;
      }
    }
  }
  for (const auto& [a, b] : gb->closure_poset().covers) {
    if (a == 0) {
      if (lattice.face(b - 1).dimension != 0) ++violations;
    } else if (!lattice.contains(a - 1, b - 1) || a == b) {
      ++violations;
    }
  }
  result.passed = violations == 0;
  result.details = std::to_string(lattice.size()) + " faces, " +
                   std::to_string(violations) + " violations";
  return result;
}

CheckResult check_pair_coverage(const MonomialIdeal& initial,
                                const std::vector<StandardPair>& pairs,
                                const RatVec& weights, const Rat& window) {
  CheckResult result{"standard-pair-coverage", false, ""};
  std::size_t scanned = 0, violations = 0;
  enumerate_monomials(weights, window, [&](const Monomial& m) {
    ++scanned;
    bool covered = false;
    for (const StandardPair& p : pairs) {
      if (pair_covers(p, m)) {
        covered = true;
        break;
      }
    }
    if (covered == initial.contains(m)) ++violations;
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (i != j && pair_contained(pairs[i], pairs[j])) ++violations;
    }
  }
  result.passed = violations == 0;
  result.details = std::to_string(scanned) + " monomials, " +
                   std::to_string(pairs.size()) + " pairs, " +
                   std::to_string(violations) + " violations";
  return result;
}

CheckResult check_unimodularity(std::size_t trials, unsigned seed) {
  CheckResult result{"integer-forms-unimodular", false, ""};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  std::uniform_int_distribution<long long> entry(-9, 9);
  std::size_t violations = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    IntMatrix a(dim(rng), dim(rng));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = entry(rng);
    }
    HermiteForm h = hermite_normal_form(a);
    Int du = determinant(h.U);
    if (du != 1 && du != -1) ++violations;
    if (!(h.U * a == h.H)) ++violations;
    SmithDecomposition s = smith_normal_form(a);
    Int su = determinant(s.U), sv = determinant(s.V);
    if (su != 1 && su != -1) ++violations;
    if (sv != 1 && sv != -1) ++violations;
    if (!(s.U * a * s.V == s.D)) ++violations;
    Int prev = 0;
    for (std::size_t k = 0; k < std::min(s.D.rows(), s.D.cols()); ++k) {
      const Int& d = s.D.at(k, k);
      if (d < 0) ++violations;
      if (prev != 0 && d != 0 && d % prev != 0) ++violations;
      if (prev == 0 && k > 0 && d != 0) ++violations;
      prev = d;
    }
  }
  result.passed = violations == 0;
  result.details = std::to_string(trials) + " matrices, " + std::to_string(violations) +
                   " violations";
  return result;
}

ValidationReport run_validation(const Instance& instance,
                                std::optional<long long> window_override,
                                std::optional<long long> perturb_override) {
  ValidationReport report;
  const long long window_ll = window_override ? *window_override
                              : instance.window ? *instance.window
                                                : 6;
  const Rat window{Int(window_ll)};
  const std::size_t budget =
      instance.budget ? static_cast<std::size_t>(*instance.budget) : 2000000;
  std::optional<long long> perturb = perturb_override ? perturb_override : instance.perturb;

  CayleyGraph graph = instance_graph(instance);
  RatVec weights = instance_costs(instance);
  RatVec order_costs = perturb ? perturb_costs(weights, Int(*perturb)) : weights;

  std::vector<IntVec> lattice = cayley_lattice(instance.group, instance.generators);
  LatticeIdeal ideal = lattice_ideal_generators(instance.generators.size(), lattice);
  GroebnerBasis basis = buchberger(ideal, MonomialOrder(order_costs));
  MonomialIdeal initial = initial_ideal(basis);
  std::vector<StandardPair> pairs = standard_pairs(initial);

  DistanceOracle oracle{graph, budget};
  const unsigned seed = 20260814u;

  bool* flag = &report.budget_exhausted;
  report.checks.push_back(guarded("normal-form-distance", flag, [&] {
    return check_normal_form_distance(graph, basis, window, budget);
  }));
  report.checks.push_back(guarded("standard-monomial-bijection", flag, [&] {
    return check_standard_monomial_bijection(graph, initial, window, budget);
  }));
  report.checks.push_back(guarded("phi-cocycle-antisymmetry", flag, [&] {
    return check_phi_properties(oracle, 300, seed);
  }));
  report.checks.push_back(guarded("geodesic-monotonicity", flag, [&] {
    return check_geodesic_monotonicity(oracle, 60, seed);
  }));
  report.checks.push_back(guarded("closure-operator-laws", flag, [&] {
    return check_closure_laws(graph);
  }));
  report.checks.push_back(guarded("standard-pair-coverage", flag, [&] {
    return check_pair_coverage(initial, pairs, weights, window);
  }));
  report.checks.push_back(guarded("integer-forms-unimodular", flag, [&] {
    return check_unimodularity(40, seed);
  }));
  return report;
}

std::string validation_to_json(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : report.checks) {
    nlohmann::ordered_json entry;
    entry["name"] = c.name;
    entry["passed"] = c.passed;
    entry["details"] = c.details;
    checks.push_back(std::move(entry));
  }
  doc["checks"] = checks;
  doc["budget_exhausted"] = report.budget_exhausted;
  doc["all_passed"] = report.all_passed();
  return doc.dump(2) + "\n";
}

}  // namespace cayley
