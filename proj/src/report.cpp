#include "cayley/report.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include "cayley/errors.hpp"
#include "json.hpp"

namespace cayley {

namespace {

using nlohmann::ordered_json;

std::string face_label(const Polytope& polytope, std::size_t face_id) {
  const Face& face = polytope.face_lattice().face(face_id);
  std::string out = "conv{";
  for (std::size_t i = 0; i < face.vertex_indices.size(); ++i) {
    if (i) out += ",";
    out += vec_to_string(polytope.vertices()[face.vertex_indices[i]]);
  }
  return out + "}";
}

ordered_json vector_json(const IntVec& v) {
  ordered_json arr = ordered_json::array();
  for (const Int& x : v) arr.push_back(x.convert_to<long long>());
  return arr;
}

ordered_json coset_json(const CosetLabel& label) {
  ordered_json out;
  out["torsion"] = vector_json(label.torsion);
  out["free"] = vector_json(label.free_part);
  return out;
}

ordered_json quotient_json(const QuotientGroup& q) {
  ordered_json out;
  out["free_rank"] = static_cast<long long>(q.free_rank());
  ordered_json torsion = ordered_json::array();
  for (const Int& d : q.invariant_factors()) torsion.push_back(d.convert_to<long long>());
  out["torsion"] = torsion;
  out["shape"] = quotient_shape(q);
  return out;
}

ordered_json index_array(const std::vector<std::size_t>& indices) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i : indices) arr.push_back(static_cast<long long>(i));
  return arr;
}

/// Face spanned by a direction set, or nullopt when it averages inside.
std::optional<std::size_t> face_of_direction(const GeometricBoundary& gb,
                                             const std::vector<std::size_t>& direction) {
  RatVec average(gb.graph().rank(), Rat(0));
  for (std::size_t index : direction) {
    const IntVec& v = gb.graph().generators()[index].v;
    for (std::size_t i = 0; i < average.size(); ++i) average[i] += Rat(v[i]);
  }
  const Rat count{Int(direction.size())};
  for (Rat& coord : average) coord /= count;
  return gb.polytope().smallest_face_containing(average);
}

AlgebraicReport run_algebraic(const Instance& instance, const ReportOptions& options,
                              std::vector<std::string>& notes) {
  RatVec weights = instance_costs(instance);
  RatVec costs = weights;
  bool perturbed = false;
  if (options.perturb) {
    costs = perturb_costs(weights, Int(*options.perturb));
    perturbed = true;
    notes.push_back("algebraic costs perturbed with denominator " +
                    std::to_string(*options.perturb));
  }
  std::vector<IntVec> lattice = cayley_lattice(instance.group, instance.generators);
  LatticeIdeal ideal = lattice_ideal_generators(instance.generators.size(), lattice);
  GroebnerBasis basis = buchberger(ideal, MonomialOrder(costs));
  MonomialIdeal initial = initial_ideal(basis);
  std::vector<StandardPair> pairs = standard_pairs(initial);
  AlgebraicBoundary boundary = enumerate_boundary(initial, options.caps);
  if (!basis.generic()) {
    notes.push_back(
        "weight order has ties (" + basis.tie_witnesses.front().to_string() +
        "): distinct expressions may code equivalent geodesics; counts are unreliable");
  }
  return AlgebraicReport{std::move(costs), perturbed,          std::move(basis),
                         std::move(initial), std::move(pairs), std::move(boundary),
                         options.caps};
}

}  // namespace

std::string quotient_shape(const QuotientGroup& q) {
  std::string out;
  if (q.free_rank() == 1) {
    out = "Z";
  } else if (q.free_rank() > 1) {
    out = "Z^" + std::to_string(q.free_rank());
  }
  for (const Int& d : q.invariant_factors()) {
    if (!out.empty()) out += " (+) ";
    out += "Z/" + d.str();
  }
  return out.empty() ? "1" : out;
}

BoundaryReport compute_boundary_report(const Instance& instance,
                                       const ReportOptions& options) {
  if (options.route != "geo" && options.route != "alg" && options.route != "both") {
    throw std::invalid_argument("route must be geo, alg or both");
  }
  BoundaryReport report;
  report.instance = instance;
  report.route = options.route;
  report.notes = instance.notes;

  CayleyGraph graph = instance_graph(instance);
  if (!graph.symmetric() && !instance.directed) {
    report.notes.push_back(
        "generating set is not symmetric; distances are directed");
  }

  if (options.route != "alg") {
    GeometricReport geo;
    try {
      GeometricBoundary boundary{graph};
      geo.applicable = true;
      geo.total_points = boundary.boundary_size();
      geo.boundary.emplace(std::move(boundary));
    } catch (const RouteInapplicableError& e) {
      if (options.route == "geo") throw;
      geo.applicable = false;
      geo.inapplicable_reason = e.what();
      report.notes.push_back(std::string("geometric route skipped: ") + e.what());
    }
    report.geometric.emplace(std::move(geo));
  }

  if (options.route != "geo") {
    report.algebraic.emplace(run_algebraic(instance, options, report.notes));
    report.counts_reliable = report.algebraic->basis.generic();
  }

  if (report.geometric && report.geometric->applicable && report.algebraic) {
    const GeometricBoundary& gb = *report.geometric->boundary;
    const std::size_t face_count = gb.polytope().face_lattice().size();
    std::vector<long long> points(face_count, 0), families(face_count, 0);
    for (const BoundaryPointAlg& point : report.algebraic->boundary.points) {
      std::optional<std::size_t> face = face_of_direction(gb, point.direction);
      if (!face) {
        report.discrepancies.push_back("algebraic point " + point.to_string() +
                                       " has an interior direction");
        continue;
      }
      ++points[*face];
    }
    for (const BoundaryFamilyAlg& family : report.algebraic->boundary.families) {
      std::optional<std::size_t> face = face_of_direction(gb, family.direction);
      if (!face) {
        report.discrepancies.push_back("algebraic family " + family.to_string() +
                                       " has an interior direction");
        continue;
      }
      ++families[*face];
    }
    for (std::size_t id = 0; id < face_count; ++id) {
      ReconciliationRow row;
      row.face_id = id;
      const QuotientGroup& quotient = gb.orbit_for_face(id).quotient;
      if (quotient.finite()) row.geometric_points = quotient.order();
      row.algebraic_points = points[id];
      row.algebraic_families = families[id];
      row.match = row.geometric_points
                      ? (row.algebraic_families == 0 &&
                         Int(row.algebraic_points) == *row.geometric_points)
                      : (row.algebraic_families > 0);
      if (!row.match && report.counts_reliable) {
        report.discrepancies.push_back(
            "face " + face_label(gb.polytope(), id) + ": geometric " +
            (row.geometric_points ? row.geometric_points->str() : std::string("infinite")) +
            " vs algebraic " + std::to_string(row.algebraic_points) + " points, " +
            std::to_string(row.algebraic_families) + " families");
      }
      report.reconciliation.push_back(std::move(row));
    }
  }
  return report;
}

std::string report_to_json(const BoundaryReport& report) {
  ordered_json doc;
  doc["schema"] = 1;
  doc["route"] = report.route;
  doc["instance"] = ordered_json::parse(serialize_instance(report.instance));
  doc["counts_reliable"] = report.counts_reliable;

  if (report.geometric) {
    ordered_json geo;
    geo["applicable"] = report.geometric->applicable;
    if (!report.geometric->applicable) {
      geo["reason"] = report.geometric->inapplicable_reason;
    } else {
      const GeometricBoundary& gb = *report.geometric->boundary;
      const Polytope& polytope = gb.polytope();
      geo["orbit_count"] = static_cast<long long>(polytope.face_lattice().size());
      geo["boundary_points"] = report.geometric->total_points
                                   ? ordered_json(report.geometric->total_points->str())
                                   : ordered_json(nullptr);
      geo["dense_orbit"]["quotient"] = quotient_json(gb.dense_orbit().quotient);
      ordered_json orbits = ordered_json::array();
      for (std::size_t id = 0; id < polytope.face_lattice().size(); ++id) {
        const Orbit& orbit = gb.orbit_for_face(id);
        const Face& face = polytope.face_lattice().face(id);
        ordered_json entry;
        entry["face"]["id"] = static_cast<long long>(id);
        ordered_json verts = ordered_json::array();
        for (std::size_t v : face.vertex_indices) {
          verts.push_back(vector_json(polytope.vertices()[v]));
        }
        entry["face"]["vertices"] = verts;
        entry["face"]["dimension"] = static_cast<long long>(face.dimension);
        entry["generators_on_face"] = index_array(orbit.generator_indices);
        entry["quotient"] = quotient_json(orbit.quotient);
        entry["points"] = orbit.quotient.finite()
                              ? ordered_json(orbit.quotient.order().str())
                              : ordered_json(nullptr);
        ordered_json sampled = ordered_json::array();
        for (const CosetLabel& label :
             orbit.quotient.enumerate(Int(report.algebraic ? report.algebraic->caps : 2))) {
          sampled.push_back(coset_json(label));
        }
        entry["points_sampled"] = sampled;
        orbits.push_back(std::move(entry));
      }
      geo["orbits"] = orbits;
      ClosurePoset poset = gb.closure_poset();
      ordered_json nodes = ordered_json::array();
      nodes.push_back("group");
      for (std::size_t id = 0; id < polytope.face_lattice().size(); ++id) {
        nodes.push_back(face_label(polytope, id));
      }
      ordered_json covers = ordered_json::array();
      for (const auto& [a, b] : poset.covers) {
        covers.push_back(ordered_json::array(
            {static_cast<long long>(a), static_cast<long long>(b)}));
      }
      geo["poset"]["nodes"] = nodes;
      geo["poset"]["covers"] = covers;
    }
    doc["geometric"] = geo;
  }

  if (report.algebraic) {
    const AlgebraicReport& alg = *report.algebraic;
    ordered_json out;
    ordered_json costs = ordered_json::array();
    for (const Rat& c : alg.costs) costs.push_back(rat_to_string(c));
    out["costs"] = costs;
    out["perturbed"] = alg.perturbed;
    out["generic"] = alg.basis.generic();
    ordered_json ties = ordered_json::array();
    for (const Binomial& b : alg.basis.tie_witnesses) ties.push_back(b.to_string());
    out["tie_witnesses"] = ties;
    ordered_json basis = ordered_json::array();
    for (const Binomial& b : alg.basis.elements) basis.push_back(b.to_string());
    out["groebner"] = basis;
    ordered_json initial = ordered_json::array();
    for (const Monomial& m : alg.initial.generators) initial.push_back(m.to_string());
    out["initial_ideal"] = initial;
    ordered_json pairs = ordered_json::array();
    for (const StandardPair& p : alg.pairs) {
      ordered_json entry;
      entry["root"] = p.root.to_string();
      entry["free"] = index_array(p.free_vars);
      pairs.push_back(std::move(entry));
    }
    out["standard_pairs"] = pairs;
    ordered_json points = ordered_json::array();
    for (const BoundaryPointAlg& p : alg.boundary.points) {
      ordered_json entry;
      entry["base"] = p.base.to_string();
      entry["direction"] = index_array(p.direction);
      points.push_back(std::move(entry));
    }
    out["points"] = points;
    out["point_count"] = static_cast<long long>(alg.boundary.points.size());
    ordered_json families = ordered_json::array();
    for (const BoundaryFamilyAlg& f : alg.boundary.families) {
      ordered_json entry;
      entry["base"] = f.base.to_string();
      entry["free_finite"] = index_array(f.free_finite);
      entry["direction"] = index_array(f.direction);
      families.push_back(std::move(entry));
    }
    out["families"] = families;
    out["caps"] = alg.caps;
    doc["algebraic"] = out;
  }

  if (!report.reconciliation.empty()) {
    ordered_json rows = ordered_json::array();
    for (const ReconciliationRow& row : report.reconciliation) {
      ordered_json entry;
      entry["face_id"] = static_cast<long long>(row.face_id);
      entry["geometric_points"] = row.geometric_points
                                      ? ordered_json(row.geometric_points->str())
                                      : ordered_json(nullptr);
      entry["algebraic_points"] = row.algebraic_points;
      entry["algebraic_families"] = row.algebraic_families;
      entry["match"] = row.match;
      rows.push_back(std::move(entry));
    }
    doc["reconciliation"] = rows;
  }

  doc["notes"] = report.notes;
  doc["discrepancies"] = report.discrepancies;
  return doc.dump(2) + "\n";
}

std::string export_dot(const BoundaryReport& report) {
  if (!report.geometric || !report.geometric->applicable) {
    throw RouteInapplicableError("report has no geometric closure poset");
  }
  const GeometricBoundary& gb = *report.geometric->boundary;
  const Polytope& polytope = gb.polytope();
  std::string out = "digraph closure {\n  node [shape=box];\n";
  out += "  n0 [label=\"group " + quotient_shape(gb.dense_orbit().quotient) + "\"];\n";
  for (std::size_t id = 0; id < polytope.face_lattice().size(); ++id) {
    out += "  n" + std::to_string(id + 1) + " [label=\"" + face_label(polytope, id) +
           " : " + quotient_shape(gb.orbit_for_face(id).quotient) + "\"];\n";
  }
  for (const auto& [a, b] : gb.closure_poset().covers) {
    out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace cayley
