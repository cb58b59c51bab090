#include "cayley/instance.hpp"

#include <algorithm>
#include <utility>

#include "cayley/errors.hpp"
#include "json.hpp"

namespace cayley {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

IntVec parse_vector(const ordered_json& value, std::size_t rank, const std::string& path) {
  if (!value.is_array()) fail(path, "expected an array of integers");
  if (value.size() != rank) {
    fail(path, "expected " + std::to_string(rank) + " coordinates, got " +
                   std::to_string(value.size()));
  }
  IntVec out;
  out.reserve(rank);
  for (std::size_t i = 0; i < value.size(); ++i) {
    const auto& entry = value[i];
    if (!entry.is_number_integer()) {
      fail(path + "[" + std::to_string(i) + "]", "expected an integer");
    }
    out.emplace_back(entry.get<long long>());
  }
  return out;
}

Rat parse_weight(const ordered_json& value, const std::string& path) {
  Rat w;
  if (value.is_string()) {
    try {
      w = rat_from_string(value.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, std::string("not a rational: ") + e.what());
    }
  } else if (value.is_number_integer()) {
    w = Rat(Int(value.get<long long>()));
  } else if (value.is_number_float()) {
    fail(path, "floating point weights are lossy; quote the value as a string");
  } else {
    fail(path, "expected a rational encoded as a string");
  }
  if (w <= 0) fail(path, "weights must be positive");
  return w;
}

std::optional<long long> parse_count(const ordered_json& object, const char* key) {
  if (!object.contains(key)) return std::nullopt;
  const auto& value = object.at(key);
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    fail(key, "expected a nonnegative integer");
  }
  return value.get<long long>();
}

ordered_json vector_json(const IntVec& v) {
  ordered_json arr = ordered_json::array();
  for (const Int& x : v) arr.push_back(x.convert_to<long long>());
  return arr;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("top level: expected an object");
  if (!doc.contains("schema") || !doc["schema"].is_number_integer() ||
      doc["schema"].get<long long>() != 1) {
    fail("schema", "expected the integer 1");
  }

  Instance inst;

  if (!doc.contains("group") || !doc["group"].is_object()) {
    fail("group", "expected an object with rank and relations");
  }
  const auto& group = doc["group"];
  if (!group.contains("rank") || !group["rank"].is_number_integer() ||
      group["rank"].get<long long>() < 1) {
    fail("group.rank", "expected a positive integer");
  }
  inst.group.rank = static_cast<std::size_t>(group["rank"].get<long long>());

  std::vector<IntVec> relators;
  if (group.contains("relations")) {
    if (!group["relations"].is_array()) fail("group.relations", "expected an array");
    for (std::size_t i = 0; i < group["relations"].size(); ++i) {
      relators.push_back(parse_vector(group["relations"][i], inst.group.rank,
                                      "group.relations[" + std::to_string(i) + "]"));
    }
  }
  inst.group.relations = IntMatrix::from_columns(inst.group.rank, relators);

  if (!doc.contains("generators") || !doc["generators"].is_array() ||
      doc["generators"].empty()) {
    fail("generators", "expected a nonempty array");
  }
  for (std::size_t i = 0; i < doc["generators"].size(); ++i) {
    const std::string path = "generators[" + std::to_string(i) + "]";
    const auto& entry = doc["generators"][i];
    if (!entry.is_object() || !entry.contains("v")) {
      fail(path, "expected an object with a vector v");
    }
    WeightedGenerator gen;
    gen.v = parse_vector(entry["v"], inst.group.rank, path + ".v");
    if (entry.contains("w")) {
      gen.w = parse_weight(entry["w"], path + ".w");
    } else {
      gen.w = Rat(1);
      inst.notes.push_back(path + ": weight defaulted to 1");
    }
    inst.generators.push_back(std::move(gen));
  }

  if (doc.contains("symmetrize")) {
    if (!doc["symmetrize"].is_boolean()) fail("symmetrize", "expected a boolean");
    inst.symmetrize = doc["symmetrize"].get<bool>();
  }
  if (doc.contains("directed")) {
    if (!doc["directed"].is_boolean()) fail("directed", "expected a boolean");
    inst.directed = doc["directed"].get<bool>();
  }

  if (inst.symmetrize) {
    const std::size_t listed = inst.generators.size();
    for (std::size_t i = 0; i < listed; ++i) {
      IntVec inverse = vec_neg(inst.generators[i].v);
      bool present = std::any_of(inst.generators.begin(), inst.generators.end(),
                                 [&](const WeightedGenerator& g) { return g.v == inverse; });
      if (!present) inst.generators.push_back({std::move(inverse), inst.generators[i].w});
    }
  }

  inst.caps = parse_count(doc, "caps");
  inst.window = parse_count(doc, "window");
  inst.budget = parse_count(doc, "budget");
  inst.perturb = parse_count(doc, "perturb");

  return inst;
}

std::string serialize_instance(const Instance& instance) {
  ordered_json doc;
  doc["schema"] = 1;
  doc["group"]["rank"] = static_cast<long long>(instance.group.rank);
  ordered_json relations = ordered_json::array();
  for (std::size_t j = 0; j < instance.group.relations.cols(); ++j) {
    relations.push_back(vector_json(instance.group.relations.column(j)));
  }
  doc["group"]["relations"] = relations;
  ordered_json gens = ordered_json::array();
  for (const WeightedGenerator& gen : instance.generators) {
    ordered_json entry;
    entry["v"] = vector_json(gen.v);
    entry["w"] = rat_to_string(gen.w);
    gens.push_back(entry);
  }
  doc["generators"] = gens;
  doc["symmetrize"] = instance.symmetrize;
  doc["directed"] = instance.directed;
  if (instance.caps) doc["caps"] = *instance.caps;
  if (instance.window) doc["window"] = *instance.window;
  if (instance.budget) doc["budget"] = *instance.budget;
  if (instance.perturb) doc["perturb"] = *instance.perturb;
  return doc.dump(2) + "\n";
}

CayleyGraph instance_graph(const Instance& instance) {
  return CayleyGraph{instance.group, instance.generators};
}

RatVec instance_costs(const Instance& instance) {
  RatVec costs;
  costs.reserve(instance.generators.size());
  for (const WeightedGenerator& gen : instance.generators) costs.push_back(gen.w);
  return costs;
}

}  // namespace cayley
