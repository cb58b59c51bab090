#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cayley/report.hpp"
#include "cayley/validation.hpp"
#include "json.hpp"

using namespace cayley;
using nlohmann::ordered_json;

namespace {

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open instance file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

/// Comma-separated integer coordinates, e.g. "3,-4".
IntVec parse_element(const std::string& text, std::size_t rank) {
  IntVec out;
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, ',')) {
    try {
      out.emplace_back(Int(piece));
    } catch (const std::exception&) {
      throw SchemaError("element '" + text + "': '" + piece + "' is not an integer");
    }
  }
  if (out.size() != rank) {
    throw SchemaError("element '" + text + "': expected " + std::to_string(rank) +
                      " coordinates, got " + std::to_string(out.size()));
  }
  return out;
}

std::vector<std::size_t> parse_block(const std::string& text, std::size_t nvars) {
  std::vector<std::size_t> out;
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, ',')) {
    long long index;
    try {
      index = std::stoll(piece);
    } catch (const std::exception&) {
      throw SchemaError("block '" + text + "': '" + piece + "' is not an index");
    }
    if (index < 0 || static_cast<std::size_t>(index) >= nvars) {
      throw SchemaError("block '" + text + "': generator index " + piece +
                        " out of range");
    }
    out.push_back(static_cast<std::size_t>(index));
  }
  if (out.empty()) throw SchemaError("block '" + text + "': expected generator indices");
  return out;
}

ordered_json vector_json(const IntVec& v) {
  ordered_json arr = ordered_json::array();
  for (const Int& x : v) arr.push_back(x.convert_to<long long>());
  return arr;
}

void emit(const std::string& text) { std::cout << text; }

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary of the Cayley compactification of a finitely generated "
               "abelian group with weighted generators"};
  app.require_subcommand(1);

  std::string file;
  std::string route = "both";
  std::string format = "json";
  std::string from_text, to_text, y_text, z_text, base_text, block_text;
  std::optional<long long> caps, window, budget, perturb;
  int status = 0;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("instance", file, "instance description (JSON)")->required();
  };
  auto add_perturb = [&](CLI::App* sub) {
    sub->add_option("--perturb", perturb,
                    "break weight ties with powers of 1/D (D > 0)");
  };
  auto effective = [&](const std::optional<long long>& flag,
                       const std::optional<long long>& field,
                       long long fallback) {
    return flag ? *flag : field ? *field : fallback;
  };
  auto report_options = [&](const Instance& inst, const std::string& wanted) {
    ReportOptions options;
    options.route = wanted;
    options.caps = effective(caps, inst.caps, 2);
    options.perturb = perturb ? perturb : inst.perturb;
    return options;
  };
  auto oracle_for = [&](const Instance& inst) {
    return DistanceOracle{instance_graph(inst),
                          static_cast<std::size_t>(effective(budget, inst.budget, 2000000))};
  };

  CLI::App* hull = app.add_subcommand(
      "hull", "vertices and face lattice of the generator polytope");
  add_file(hull);
  hull->callback([&] {
    Instance inst = load_instance(file);
    CayleyGraph graph = instance_graph(inst);
    std::vector<IntVec> points;
    for (const auto& gen : graph.generators()) points.push_back(gen.v);
    Polytope polytope = convex_hull(points);
    ordered_json doc;
    doc["schema"] = 1;
    ordered_json vertices = ordered_json::array();
    for (const IntVec& v : polytope.vertices()) vertices.push_back(vector_json(v));
    doc["vertices"] = vertices;
    ordered_json faces = ordered_json::array();
    for (std::size_t id = 0; id < polytope.face_lattice().size(); ++id) {
      const Face& face = polytope.face_lattice().face(id);
      ordered_json entry;
      entry["id"] = static_cast<long long>(id);
      ordered_json verts = ordered_json::array();
      for (std::size_t v : face.vertex_indices) {
        verts.push_back(vector_json(polytope.vertices()[v]));
      }
      entry["vertices"] = verts;
      entry["dimension"] = static_cast<long long>(face.dimension);
      faces.push_back(std::move(entry));
    }
    doc["faces"] = faces;
    emit(doc);
  });

  CLI::App* boundary = app.add_subcommand(
      "boundary", "orbit structure of the boundary, by either or both routes");
  add_file(boundary);
  boundary->add_option("--route", route, "geo, alg or both")
      ->check(CLI::IsMember({"geo", "alg", "both"}));
  boundary->add_option("--caps", caps, "free exponents enumerated up to this cap");
  add_perturb(boundary);
  boundary->add_option("--format", format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  boundary->callback([&] {
    Instance inst = load_instance(file);
    BoundaryReport report = compute_boundary_report(inst, report_options(inst, route));
    emit(format == "dot" ? export_dot(report) : report_to_json(report));
  });

  CLI::App* groebner = app.add_subcommand(
      "groebner", "reduced basis of the lattice ideal under the weight order");
  add_file(groebner);
  add_perturb(groebner);
  groebner->callback([&] {
    Instance inst = load_instance(file);
    BoundaryReport report = compute_boundary_report(inst, report_options(inst, "alg"));
    auto full = ordered_json::parse(report_to_json(report));
    ordered_json doc;
    doc["schema"] = 1;
    for (const char* key :
         {"costs", "perturbed", "generic", "tie_witnesses", "groebner", "initial_ideal"}) {
      doc[key] = full["algebraic"][key];
    }
    emit(doc);
  });

  CLI::App* pairs = app.add_subcommand(
      "standard-pairs", "standard pair decomposition of the initial ideal");
  add_file(pairs);
  add_perturb(pairs);
  pairs->callback([&] {
    Instance inst = load_instance(file);
    BoundaryReport report = compute_boundary_report(inst, report_options(inst, "alg"));
    auto full = ordered_json::parse(report_to_json(report));
    ordered_json doc;
    doc["schema"] = 1;
    doc["generic"] = full["algebraic"]["generic"];
    doc["standard_pairs"] = full["algebraic"]["standard_pairs"];
    doc["pair_count"] = static_cast<long long>(full["algebraic"]["standard_pairs"].size());
    emit(doc);
  });

  CLI::App* distance = app.add_subcommand(
      "distance", "exact weighted word distance between two elements");
  add_file(distance);
  distance->add_option("from", from_text, "start element, e.g. 0,0")->required();
  distance->add_option("to", to_text, "end element")->required();
  distance->add_option("--budget", budget, "search node budget");
  distance->callback([&] {
    Instance inst = load_instance(file);
    DistanceOracle oracle = oracle_for(inst);
    IntVec from = parse_element(from_text, inst.group.rank);
    IntVec to = parse_element(to_text, inst.group.rank);
    Rat dist = oracle.distance_unbounded(from, to);
    IntVec step = oracle.graph().canonicalize(vec_sub(to, from));
    auto path = oracle.ball(dist).path_from_origin(step);
    ordered_json doc;
    doc["schema"] = 1;
    doc["from"] = vector_json(from);
    doc["to"] = vector_json(to);
    doc["distance"] = rat_to_string(dist);
    ordered_json steps = ordered_json::array();
    if (path) {
      for (std::size_t g : *path) steps.push_back(static_cast<long long>(g));
    }
    doc["path"] = steps;
    emit(doc);
  });

  CLI::App* valuation = app.add_subcommand(
      "valuation", "limit of phi_{y,z} along an eventually periodic geodesic");
  add_file(valuation);
  valuation->add_option("y", y_text, "first reference element")->required();
  valuation->add_option("z", z_text, "second reference element")->required();
  valuation->add_option("--base", base_text, "walk start element (default origin)");
  valuation->add_option("--block", block_text, "repeated generator indices, e.g. 0,2")
      ->required();
  valuation->add_option("--window", window, "repetitions of the block to walk");
  valuation->add_option("--budget", budget, "search node budget");
  valuation->callback([&] {
    Instance inst = load_instance(file);
    DistanceOracle oracle = oracle_for(inst);
    GeodesicForm form;
    form.base = base_text.empty() ? IntVec(inst.group.rank, Int(0))
                                  : parse_element(base_text, inst.group.rank);
    form.block = parse_block(block_text, inst.generators.size());
    IntVec y = parse_element(y_text, inst.group.rank);
    IntVec z = parse_element(z_text, inst.group.rank);
    ValuationOptions options;
    if (window) options.horizon_blocks = static_cast<std::size_t>(*window);
    ValuationEstimate estimate = estimate_valuation(oracle, form, y, z, options);
    ordered_json doc;
    doc["schema"] = 1;
    doc["base"] = vector_json(form.base);
    ordered_json block = ordered_json::array();
    for (std::size_t g : form.block) block.push_back(static_cast<long long>(g));
    doc["block"] = block;
    doc["y"] = vector_json(y);
    doc["z"] = vector_json(z);
    doc["value"] = rat_to_string(estimate.value);
    doc["stabilized"] = estimate.stabilized;
    doc["evaluations"] = static_cast<long long>(estimate.evaluations);
    emit(doc);
  });

  CLI::App* validate = app.add_subcommand(
      "validate", "cross-checks between the oracle, the order and the ideal");
  add_file(validate);
  validate->add_option("--window", window, "check all elements of weight at most W");
  validate->add_option("--budget", budget, "search node budget");
  add_perturb(validate);
  validate->callback([&] {
    Instance inst = load_instance(file);
    if (budget) inst.budget = budget;
    ValidationReport report = run_validation(inst, window, perturb);
    emit(validation_to_json(report));
    if (report.budget_exhausted) {
      status = 4;
    } else if (!report.all_passed()) {
      status = 2;
    }
  });

  CLI::App* poset = app.add_subcommand(
      "poset", "closure order of the boundary orbits");
  add_file(poset);
  poset->add_option("--format", format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  poset->callback([&] {
    Instance inst = load_instance(file);
    BoundaryReport report = compute_boundary_report(inst, report_options(inst, "geo"));
    if (format == "dot") {
      emit(export_dot(report));
      return;
    }
    auto full = ordered_json::parse(report_to_json(report));
    ordered_json doc;
    doc["schema"] = 1;
    doc["nodes"] = full["geometric"]["poset"]["nodes"];
    doc["covers"] = full["geometric"]["poset"]["covers"];
    emit(doc);
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RouteInapplicableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
