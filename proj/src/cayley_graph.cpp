#include "cayley/cayley_graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

namespace cayley {

namespace {
constexpr std::size_t kNoPred = std::numeric_limits<std::size_t>::max();

std::string factor_string(const QuotientGroup& q) {
  std::ostringstream out;
  out << "free rank " << q.free_rank() << ", torsion [";
  const auto& f = q.invariant_factors();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out << ",";
    out << f[i];
  }
  out << "]";
  return out.str();
}
}  // namespace

CayleyGraph::CayleyGraph(GroupSpec group, std::vector<WeightedGenerator> generators)
    : group_(std::move(group)), gens_(std::move(generators)) {
  if (gens_.empty()) throw std::invalid_argument("empty generator set");
  std::size_t n = group_.rank;
  if (group_.relations.cols() > 0 && group_.relations.rows() != n)
    throw std::invalid_argument("relation matrix has wrong ambient rank");
  for (const auto& g : gens_) {
    if (g.v.size() != n) throw std::invalid_argument("generator has wrong dimension");
    if (g.w <= 0) throw std::invalid_argument("generator weight must be positive");
  }

  has_relations_ = group_.relations.cols() > 0;
  if (has_relations_) relation_quotient_ = quotient(n, group_.relations);

  // Generation check: Z^n modulo (generators + relators) must vanish.
  std::vector<IntVec> cols;
  for (const auto& g : gens_) cols.push_back(g.v);
  for (std::size_t j = 0; j < group_.relations.cols(); ++j)
    cols.push_back(group_.relations.column(j));
  QuotientGroup cok = quotient(n, IntMatrix::from_columns(n, cols));
  if (!cok.trivial()) {
    std::vector<long long> torsion;
    for (const Int& f : cok.invariant_factors())
      torsion.push_back(f.convert_to<long long>());
    throw GenerationError("generators do not generate the group; cokernel has " +
                              factor_string(cok),
                          cok.free_rank(), torsion);
  }

  // Canonicalize generator vectors, then detect symmetry and equal weights.
  for (auto& g : gens_) g.v = canonicalize(g.v);
  symmetric_ = true;
  for (const auto& g : gens_) {
    bool found = false;
    IntVec inv = canonicalize(vec_neg(g.v));
    for (const auto& h : gens_)
      if (h.v == inv && h.w == g.w) {
        found = true;
        break;
      }
    if (!found) {
      symmetric_ = false;
      break;
    }
  }
  common_weight_ = gens_.front().w;
  equal_weights_ = std::all_of(gens_.begin(), gens_.end(),
                               [&](const WeightedGenerator& g) { return g.w == common_weight_; });
}

IntVec CayleyGraph::canonicalize(const IntVec& x) const {
  if (x.size() != group_.rank) throw std::invalid_argument("element has wrong dimension");
  if (!has_relations_) return x;
  return relation_quotient_.representative(relation_quotient_.label(x));
}

IntVec CayleyGraph::walk(const IntVec& from, const std::vector<std::size_t>& steps) const {
  IntVec x = canonicalize(from);
  for (std::size_t s : steps) {
    if (s >= gens_.size()) throw std::invalid_argument("generator index out of range");
    x = canonicalize(vec_add(x, gens_[s].v));
  }
  return x;
}

Rat CayleyGraph::block_weight(const std::vector<std::size_t>& steps) const {
  Rat w = 0;
  for (std::size_t s : steps) {
    if (s >= gens_.size()) throw std::invalid_argument("generator index out of range");
    w += gens_[s].w;
  }
  return w;
}

BallIndex::BallIndex(const CayleyGraph& graph, Rat radius, std::size_t node_budget)
    : radius_(std::move(radius)) {
  if (radius_ < 0) throw std::invalid_argument("negative ball radius");
  using Entry = std::pair<Rat, IntVec>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> frontier;
  std::map<IntVec, Node> best;
  IntVec origin = graph.canonicalize(IntVec(graph.rank(), Int(0)));
  best.emplace(origin, Node{Rat(0), kNoPred, {}});
  frontier.emplace(Rat(0), origin);
  while (!frontier.empty()) {
    auto [dist, elem] = frontier.top();
    frontier.pop();
    auto it = best.find(elem);
    if (it->second.dist < dist) continue;  // stale queue entry
    if (dist > radius_) break;
    auto [node, inserted] = nodes_.emplace(elem, it->second);
    if (!inserted) continue;  // already settled
    if (nodes_.size() > node_budget)
      throw BudgetExceededError("ball search exceeded its node budget");
    for (std::size_t gi = 0; gi < graph.size(); ++gi) {
      const auto& g = graph.generators()[gi];
      Rat ndist = dist + g.w;
      if (ndist > radius_) continue;
      IntVec next = graph.canonicalize(vec_add(elem, g.v));
      auto found = best.find(next);
      if (found == best.end() || ndist < found->second.dist) {
        best[next] = Node{ndist, gi, elem};
        frontier.emplace(std::move(ndist), std::move(next));
      }
    }
  }
}

std::optional<Rat> BallIndex::distance_from_origin(const IntVec& canonical) const {
  auto it = nodes_.find(canonical);
  if (it == nodes_.end()) return std::nullopt;
  return it->second.dist;
}

std::optional<std::vector<std::size_t>> BallIndex::path_from_origin(const IntVec& canonical) const {
  auto it = nodes_.find(canonical);
  if (it == nodes_.end()) return std::nullopt;
  std::vector<std::size_t> steps;
  IntVec cur = canonical;
  while (true) {
    const Node& node = nodes_.at(cur);
    if (node.pred_gen == kNoPred) break;
    steps.push_back(node.pred_gen);
    cur = node.pred;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

std::vector<std::pair<IntVec, Rat>> BallIndex::entries() const {
  std::vector<std::pair<IntVec, Rat>> out;
  out.reserve(nodes_.size());
  for (const auto& [elem, node] : nodes_) out.emplace_back(elem, node.dist);
  return out;
}

DistanceOracle::DistanceOracle(CayleyGraph graph, std::size_t node_budget)
    : graph_(std::move(graph)), node_budget_(node_budget) {}

const BallIndex& DistanceOracle::ball(const Rat& radius_at_least) {
  if (!ball_ || ball_->radius() < radius_at_least) {
    Rat target = radius_at_least;
    if (ball_ && ball_->radius() * 2 > target) target = ball_->radius() * 2;
    ball_ = std::make_unique<BallIndex>(graph_, target, node_budget_);
  }
  return *ball_;
}

std::optional<Rat> DistanceOracle::distance(const IntVec& x, const IntVec& y, const Rat& budget) {
  if (budget < 0) throw std::invalid_argument("negative distance budget");
  IntVec delta = graph_.canonicalize(vec_sub(graph_.canonicalize(y), graph_.canonicalize(x)));
  const BallIndex& b = ball(budget);
  auto d = b.distance_from_origin(delta);
  if (!d || *d > budget) return std::nullopt;
  return d;
}

Rat DistanceOracle::distance_unbounded(const IntVec& x, const IntVec& y) {
  Rat budget = 1;
  for (const auto& g : graph_.generators()) budget = std::max(budget, g.w);
  while (true) {
    auto d = distance(x, y, budget);  // throws BudgetExceededError when nodes run out
    if (d) return *d;
    budget *= 2;
  }
}

std::optional<Rat> DistanceOracle::phi(const IntVec& y, const IntVec& z, const IntVec& x,
                                       const Rat& budget) {
  auto dy = distance(x, y, budget);
  if (!dy) return std::nullopt;
  auto dz = distance(x, z, budget);
  if (!dz) return std::nullopt;
  return *dy - *dz;
}

Rat DistanceOracle::phi_unbounded(const IntVec& y, const IntVec& z, const IntVec& x) {
  return distance_unbounded(x, y) - distance_unbounded(x, z);
}

Tristate is_geodesic(DistanceOracle& oracle, const GeodesicPrefix& prefix, const Rat& budget) {
  const CayleyGraph& g = oracle.graph();
  std::vector<IntVec> points;
  std::vector<Rat> cumweight;
  points.push_back(g.canonicalize(prefix.base));
  cumweight.push_back(Rat(0));
  for (std::size_t s : prefix.steps) {
    points.push_back(g.canonicalize(vec_add(points.back(), g.generators().at(s).v)));
    cumweight.push_back(cumweight.back() + g.generators().at(s).w);
  }
  bool unknown = false;
  for (std::size_t e = 0; e < points.size(); ++e)
    for (std::size_t f = e + 1; f < points.size(); ++f) {
      Rat span = cumweight[f] - cumweight[e];
      if (span > budget) {
        unknown = true;
        continue;
      }
      auto d = oracle.distance(points[e], points[f], span);
      if (!d || *d < span) return Tristate::False;
    }
  return unknown ? Tristate::Unknown : Tristate::True;
}

Tristate minimality_violation(DistanceOracle& oracle, const std::vector<std::size_t>& block,
                              const Rat& budget) {
  if (block.empty()) throw std::invalid_argument("empty generator multiset");
  const CayleyGraph& g = oracle.graph();
  Rat w = g.block_weight(block);
  if (w > budget) return Tristate::Unknown;
  IntVec target = g.walk(IntVec(g.rank(), Int(0)), block);
  auto d = oracle.distance(IntVec(g.rank(), Int(0)), target, w);
  if (!d) throw std::logic_error("block sum unreachable within its own weight");
  return *d < w ? Tristate::True : Tristate::False;
}

ValuationEstimate estimate_valuation(DistanceOracle& oracle, const GeodesicForm& form,
                                     const IntVec& y, const IntVec& z,
                                     const ValuationOptions& options) {
  if (form.block.empty()) throw std::invalid_argument("empty geodesic block");
  const CayleyGraph& g = oracle.graph();
  Rat block_w = g.block_weight(form.block);

  // Sanity: one and two copies of the block must be weight-minimal.
  std::vector<std::size_t> doubled = form.block;
  doubled.insert(doubled.end(), form.block.begin(), form.block.end());
  if (minimality_violation(oracle, form.block, block_w) != Tristate::False ||
      minimality_violation(oracle, doubled, block_w * 2) != Tristate::False)
    throw std::invalid_argument("block is not weight-minimal; not a geodesic direction");

  IntVec base = g.canonicalize(form.base);
  IntVec cy = g.canonicalize(y);
  IntVec cz = g.canonicalize(z);
  Rat dy0 = oracle.distance_unbounded(base, cy);
  Rat dz0 = oracle.distance_unbounded(base, cz);

  std::size_t window = options.window.value_or(
      static_cast<std::size_t>(rat_ceil(dy0 + dz0 + block_w).convert_to<long long>()));
  if (window == 0) window = 1;

  // One ball covers every evaluation: d(walk point, target) never exceeds
  // walked weight + d(base, target).
  Rat radius = Rat(options.horizon_blocks) * block_w + std::max(dy0, dz0);
  oracle.ball(radius);

  std::vector<Rat> values;
  Rat prev_y;  // phi_{y,base} must be nonincreasing, same for z
  Rat prev_z;
  IntVec cur = base;
  bool first = true;
  // In the symmetric case every lookup stays inside the precomputed ball;
  // directed graphs may need to grow it (return distances are not bounded
  // by the walked weight there).
  auto dist = [&](const IntVec& from, const IntVec& to) -> Rat {
    auto d = oracle.distance(from, to, radius);
    return d ? *d : oracle.distance_unbounded(from, to);
  };
  auto evaluate = [&](const IntVec& point) {
    Rat db = dist(point, base);
    Rat py = dist(point, cy) - db;
    Rat pz = dist(point, cz) - db;
    if (!first && (py > prev_y || pz > prev_z))
      throw MonotonicityError("phi along the walk increased; non-geodesic input or budget artifact");
    prev_y = py;
    prev_z = pz;
    first = false;
    values.push_back(py - pz);
  };
  evaluate(cur);
  for (std::size_t rep = 0; rep < options.horizon_blocks; ++rep)
    for (std::size_t s : form.block) {
      cur = g.canonicalize(vec_add(cur, g.generators().at(s).v));
      evaluate(cur);
    }

  ValuationEstimate est;
  est.value = values.back();
  est.evaluations = values.size();
  est.window_used = window;
  if (values.size() >= window) {
    est.stabilized = true;
    for (std::size_t k = values.size() - window; k < values.size(); ++k)
      if (values[k] != est.value) {
        est.stabilized = false;
        break;
      }
  }
  return est;
}

}  // namespace cayley
