#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/instance.hpp"
#include "cayley/report.hpp"
#include "cayley/validation.hpp"

namespace py = pybind11;
using namespace cayley;

namespace {

IntVec to_int_vec(const std::vector<long long>& xs) {
  IntVec v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(x);
  return v;
}

py::object py_int(const Int& value) {
  return py::module_::import("builtins").attr("int")(value.str());
}

py::object py_fraction(const Rat& value) {
  return py::module_::import("fractions").attr("Fraction")(rat_to_string(value));
}

py::object json_loads(const std::string& text) {
  return py::module_::import("json").attr("loads")(text);
}

py::list coordinates(const IntVec& v) {
  py::list out;
  for (const Int& x : v) out.append(py_int(x));
  return out;
}

void check_rank(const CayleyGraph& graph, const IntVec& v, const char* name) {
  if (v.size() != graph.rank()) {
    throw std::invalid_argument(std::string(name) + ": expected " +
                                std::to_string(graph.rank()) + " coordinates, got " +
                                std::to_string(v.size()));
  }
}

std::vector<std::size_t> checked_block(const CayleyGraph& graph,
                                       const std::vector<std::size_t>& block) {
  if (block.empty()) throw std::invalid_argument("block: expected at least one generator index");
  for (std::size_t g : block) {
    if (g >= graph.size()) {
      throw std::invalid_argument("block: generator index " + std::to_string(g) +
                                  " out of range (have " + std::to_string(graph.size()) +
                                  " generators)");
    }
  }
  return block;
}

ReportOptions make_options(const Instance& inst, const std::string& route,
                           std::optional<long long> caps,
                           std::optional<long long> perturb) {
  ReportOptions options;
  options.route = route;
  options.caps = caps ? *caps : inst.caps.value_or(2);
  options.perturb = perturb ? perturb : inst.perturb;
  return options;
}

GroebnerBasis basis_for(const Instance& inst, std::optional<long long> perturb) {
  RatVec costs = instance_costs(inst);
  if (perturb) costs = perturb_costs(costs, Int(*perturb));
  return buchberger(lattice_ideal_generators(
                        inst.generators.size(),
                        cayley_lattice(inst.group, inst.generators)),
                    MonomialOrder(costs));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Boundary of the Cayley compactification of a finitely generated abelian "
      "group with weighted generators: exact distances, difference-functional "
      "valuations, the face-lattice route, and the lattice-ideal route.";

  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_ValueError);
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ValueError);
  py::register_exception<RouteInapplicableError>(m, "RouteInapplicableError",
                                                 PyExc_RuntimeError);
  py::register_exception<BudgetExceededError>(m, "BudgetExceededError", PyExc_RuntimeError);
  py::register_exception<MonotonicityError>(m, "MonotonicityError", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance", "A parsed and validated problem instance.")
      .def_property_readonly("rank", [](const Instance& inst) { return inst.group.rank; })
      .def_property_readonly("symmetrize",
                             [](const Instance& inst) { return inst.symmetrize; })
      .def_property_readonly("caps", [](const Instance& inst) { return inst.caps; })
      .def_property_readonly("window", [](const Instance& inst) { return inst.window; })
      .def_property_readonly("budget", [](const Instance& inst) { return inst.budget; })
      .def_property_readonly("perturb", [](const Instance& inst) { return inst.perturb; })
      .def_property_readonly("notes", [](const Instance& inst) { return inst.notes; })
      .def_property_readonly(
          "generators",
          [](const Instance& inst) {
            py::list out;
            for (const WeightedGenerator& g : inst.generators) {
              py::dict entry;
              entry["v"] = coordinates(g.v);
              entry["w"] = py_fraction(g.w);
              out.append(entry);
            }
            return out;
          },
          "Generators after symmetrization, as {'v': [int], 'w': Fraction}.")
      .def("to_json", [](const Instance& inst) { return serialize_instance(inst); },
           "Canonical JSON text; parsing it back reproduces the instance.")
      .def("__repr__", [](const Instance& inst) {
        std::ostringstream out;
        out << "Instance(rank=" << inst.group.rank << ", generators="
            << inst.generators.size() << ")";
        return out.str();
      });

  m.def("parse_instance", &parse_instance, py::arg("text"),
        "Parse instance JSON; raises SchemaError with a field path on bad input.");
  m.def(
      "load_instance",
      [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw SchemaError("cannot open instance file: " + path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return parse_instance(buffer.str());
      },
      py::arg("path"), "Read and parse an instance file.");

  py::class_<DistanceOracle>(m, "Oracle",
                             "Exact word-metric oracle over the instance's Cayley graph.")
      .def(py::init([](const Instance& inst, std::size_t budget) {
             return DistanceOracle(instance_graph(inst), budget);
           }),
           py::arg("instance"), py::arg("budget") = 2000000)
      .def_property_readonly(
          "rank", [](const DistanceOracle& o) { return o.graph().rank(); })
      .def_property_readonly(
          "generator_count", [](const DistanceOracle& o) { return o.graph().size(); })
      .def(
          "distance",
          [](DistanceOracle& o, const std::vector<long long>& x,
             const std::vector<long long>& y) {
            IntVec a = to_int_vec(x), b = to_int_vec(y);
            check_rank(o.graph(), a, "x");
            check_rank(o.graph(), b, "y");
            return py_fraction(o.distance_unbounded(a, b));
          },
          py::arg("x"), py::arg("y"),
          "Exact d(x, y); raises BudgetExceededError when the node budget runs out.")
      .def(
          "phi",
          [](DistanceOracle& o, const std::vector<long long>& y,
             const std::vector<long long>& z, const std::vector<long long>& x) {
            IntVec yy = to_int_vec(y), zz = to_int_vec(z), xx = to_int_vec(x);
            check_rank(o.graph(), yy, "y");
            check_rank(o.graph(), zz, "z");
            check_rank(o.graph(), xx, "x");
            return py_fraction(o.phi_unbounded(yy, zz, xx));
          },
          py::arg("y"), py::arg("z"), py::arg("x"),
          "Difference functional phi_{y,z}(x) = d(x, y) - d(x, z).")
      .def(
          "shortest_path",
          [](DistanceOracle& o, const std::vector<long long>& x,
             const std::vector<long long>& y) {
            IntVec a = to_int_vec(x), b = to_int_vec(y);
            check_rank(o.graph(), a, "x");
            check_rank(o.graph(), b, "y");
            Rat d = o.distance_unbounded(a, b);
            auto path = o.ball(d).path_from_origin(o.graph().canonicalize(vec_sub(b, a)));
            if (!path) throw std::runtime_error("no path despite a finite distance");
            return *path;
          },
          py::arg("x"), py::arg("y"),
          "Generator indices of one minimum-weight word from x to y.")
      .def(
          "valuation",
          [](DistanceOracle& o, const std::vector<long long>& y,
             const std::vector<long long>& z, const std::vector<std::size_t>& block,
             std::optional<std::vector<long long>> base, std::size_t horizon,
             std::optional<std::size_t> window) {
            IntVec yy = to_int_vec(y), zz = to_int_vec(z);
            check_rank(o.graph(), yy, "y");
            check_rank(o.graph(), zz, "z");
            IntVec start(o.graph().rank(), Int(0));
            if (base) {
              start = to_int_vec(*base);
              check_rank(o.graph(), start, "base");
            }
            GeodesicForm form{start, checked_block(o.graph(), block)};
            ValuationOptions options;
            options.horizon_blocks = horizon;
            options.window = window;
            ValuationEstimate estimate = estimate_valuation(o, form, yy, zz, options);
            py::dict out;
            out["value"] = py_fraction(estimate.value);
            out["stabilized"] = estimate.stabilized;
            out["evaluations"] = estimate.evaluations;
            out["window_used"] = estimate.window_used;
            return out;
          },
          py::arg("y"), py::arg("z"), py::arg("block"), py::arg("base") = std::nullopt,
          py::arg("horizon") = 50, py::arg("window") = std::nullopt,
          "Limit of phi_{y,z} along the periodic walk `block` from `base`; raises "
          "MonotonicityError when the walk is not a geodesic ray.");

  m.def(
      "hull",
      [](const Instance& inst) {
        CayleyGraph graph = instance_graph(inst);
        std::vector<IntVec> points;
        for (const WeightedGenerator& g : graph.generators()) points.push_back(g.v);
        Polytope hull = convex_hull(points);
        py::dict out;
        py::list vertices;
        for (const IntVec& v : hull.vertices()) vertices.append(coordinates(v));
        out["vertices"] = vertices;
        py::list faces;
        for (std::size_t id = 0; id < hull.face_lattice().size(); ++id) {
          const Face& face = hull.face_lattice().face(id);
          py::dict entry;
          entry["id"] = id;
          py::list corners;
          for (std::size_t v : face.vertex_indices)
            corners.append(coordinates(hull.vertices()[v]));
          entry["vertices"] = corners;
          entry["dimension"] = face.dimension;
          faces.append(entry);
        }
        out["faces"] = faces;
        return out;
      },
      py::arg("instance"),
      "Convex hull of the generators: vertices and the proper face lattice.");

  m.def(
      "boundary_report",
      [](const Instance& inst, const std::string& route, std::optional<long long> caps,
         std::optional<long long> perturb) {
        BoundaryReport report =
            compute_boundary_report(inst, make_options(inst, route, caps, perturb));
        return json_loads(report_to_json(report));
      },
      py::arg("instance"), py::arg("route") = "both", py::arg("caps") = std::nullopt,
      py::arg("perturb") = std::nullopt,
      "Boundary by the requested route(s) with the cross-route reconciliation.");

  m.def(
      "closure_dot",
      [](const Instance& inst, std::optional<long long> caps) {
        BoundaryReport report =
            compute_boundary_report(inst, make_options(inst, "geo", caps, std::nullopt));
        return export_dot(report);
      },
      py::arg("instance"), py::arg("caps") = std::nullopt,
      "DOT digraph of the closure order on orbits (raises RouteInapplicableError "
      "when the face-lattice route does not apply).");

  m.def(
      "groebner",
      [](const Instance& inst, std::optional<long long> perturb) {
        GroebnerBasis basis = basis_for(inst, perturb);
        MonomialIdeal initial = initial_ideal(basis);
        py::dict out;
        py::list cost_list;
        for (const Rat& c : basis.order.costs()) cost_list.append(py_fraction(c));
        out["costs"] = cost_list;
        out["perturbed"] = perturb.has_value();
        out["generic"] = basis.generic();
        py::list witnesses;
        for (const Binomial& b : basis.tie_witnesses) witnesses.append(b.to_string());
        out["tie_witnesses"] = witnesses;
        py::list elements;
        for (const Binomial& b : basis.elements) elements.append(b.to_string());
        out["basis"] = elements;
        py::list leads;
        for (const Monomial& g : initial.generators) leads.append(g.to_string());
        out["initial_ideal"] = leads;
        py::list pair_list;
        for (const StandardPair& p : standard_pairs(initial)) {
          py::dict entry;
          entry["root"] = p.root.to_string();
          entry["free"] = p.free_vars;
          pair_list.append(entry);
        }
        out["standard_pairs"] = pair_list;
        return out;
      },
      py::arg("instance"), py::arg("perturb") = std::nullopt,
      "Reduced basis of the lattice ideal under the weight order, its initial "
      "ideal, tie witnesses, and the standard pair decomposition.");

  m.def(
      "validate",
      [](const Instance& inst, std::optional<long long> window,
         std::optional<long long> budget, std::optional<long long> perturb) {
        Instance copy = inst;
        if (budget) copy.budget = budget;
        return json_loads(validation_to_json(run_validation(copy, window, perturb)));
      },
      py::arg("instance"), py::arg("window") = std::nullopt,
      py::arg("budget") = std::nullopt, py::arg("perturb") = std::nullopt,
      "Run the oracle cross-checks and property suites against the instance.");
}
