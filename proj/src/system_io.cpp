#include "relcalc/system_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "relcalc/errors.hpp"

namespace relcalc {

using nlohmann::json;

namespace {

ComponentId to_component_id(const json& value, const std::string& where) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw InputError(where + ": component id must be a non-negative integer");
  }
  const auto id = value.get<unsigned long long>();
  if (id >= kMaxComponents) {
    throw InputError(where + ": component id " + std::to_string(id) + " exceeds mask width " +
                     std::to_string(kMaxComponents));
  }
  return static_cast<ComponentId>(id);
}

std::size_t node_index(const DoorNetwork& net, const json& ref, const std::string& where) {
  if (!ref.is_string()) throw InputError(where + ": node reference must be a label string");
  auto idx = net.find_node(ref.get<std::string>());
  if (!idx) throw InputError(where + ": unknown node '" + ref.get<std::string>() + "'");
  return *idx;
}

DoorNetwork parse_network(const json& j) {
  DoorNetwork net;
  for (const auto& node : j.at("nodes")) {
    NetworkNode n;
    n.label = node.at("label").get<std::string>();
    if (node.contains("component") && !node.at("component").is_null()) {
      n.component = to_component_id(node.at("component"), "node '" + n.label + "'");
    }
    if (net.find_node(n.label)) throw InputError("duplicate node label '" + n.label + "'");
    net.nodes.push_back(std::move(n));
  }
  for (const auto& edge : j.at("edges")) {
    NetworkEdge e;
    e.from = node_index(net, edge.at("from"), "edge");
    e.to = node_index(net, edge.at("to"), "edge");
    if (edge.contains("component") && !edge.at("component").is_null()) {
      e.component = to_component_id(edge.at("component"), "edge");
    }
    net.edges.push_back(e);
  }
  for (const auto& t : j.at("terminals")) {
    net.terminals.push_back({node_index(net, t.at("source"), "terminal"),
                             node_index(net, t.at("sink"), "terminal")});
  }
  return net;
}

json network_to_json(const DoorNetwork& net) {
  json nodes = json::array();
  for (const auto& n : net.nodes) {
    json node = {{"label", n.label}};
    if (n.component) node["component"] = *n.component;
    nodes.push_back(std::move(node));
  }
  json edges = json::array();
  for (const auto& e : net.edges) {
    json edge = {{"from", net.nodes.at(e.from).label}, {"to", net.nodes.at(e.to).label}};
    if (e.component) edge["component"] = *e.component;
    edges.push_back(std::move(edge));
  }
  json terminals = json::array();
  for (const auto& t : net.terminals) {
    terminals.push_back({{"source", net.nodes.at(t.source).label}, {"sink", net.nodes.at(t.sink).label}});
  }
  return {{"nodes", nodes}, {"edges", edges}, {"terminals", terminals}};
}

}  // namespace

SystemSpec parse_system(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("system file is not valid JSON: ") + e.what());
  }
  try {
    SystemSpec spec;
    spec.name = doc.value("name", std::string{});
    for (const auto& c : doc.at("components")) {
      Component comp;
      comp.id = to_component_id(c.at("id"), "component");
      comp.reliability = c.at("reliability").get<double>();
      comp.label = c.value("label", std::to_string(comp.id));
      spec.components.push_back(std::move(comp));
    }
    const auto& functions = doc.at("functions");
    if (!functions.is_array()) throw InputError("'functions' must be an array of arrays");
    for (std::size_t i = 0; i < functions.size(); ++i) {
      std::vector<Implementation> family;
      const auto& impls = functions[i];
      if (!impls.is_array()) throw InputError("'functions' must be an array of arrays");
      for (std::size_t j = 0; j < impls.size(); ++j) {
        Implementation impl;
        impl.function_index = i;
        impl.impl_index = j;
        impl.label = impls[j].value("label", "F" + std::to_string(i + 1) + "." + std::to_string(j + 1));
        for (const auto& id : impls[j].at("components")) {
          impl.components.insert(to_component_id(id, "implementation '" + impl.label + "'"));
        }
        family.push_back(std::move(impl));
      }
      spec.functions.push_back(std::move(family));
    }
    if (doc.contains("network") && !doc.at("network").is_null()) {
      spec.network = parse_network(doc.at("network"));
    }
    if (doc.contains("claimed_reliability")) {
      spec.claimed_reliability = doc.at("claimed_reliability").get<double>();
    }
    if (doc.contains("claimed_lower_bound")) {
      spec.claimed_lower_bound = doc.at("claimed_lower_bound").get<double>();
    }
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
    return spec;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed system file: ") + e.what());
  }
}

SystemSpec load_system(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open system file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_system(buffer.str());
}

std::string serialize_system(const SystemSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  json components = json::array();
  for (const auto& c : spec.components) {
    json entry = {{"id", c.id}, {"reliability", c.reliability}};
    if (!c.label.empty()) entry["label"] = c.label;
    components.push_back(std::move(entry));
  }
  doc["components"] = std::move(components);
  json functions = json::array();
  for (const auto& family : spec.functions) {
    json impls = json::array();
    for (const auto& impl : family) {
      impls.push_back({{"label", impl.label}, {"components", impl.components.to_vector()}});
    }
    functions.push_back(std::move(impls));
  }
  doc["functions"] = std::move(functions);
  if (spec.network) doc["network"] = network_to_json(*spec.network);
  if (spec.claimed_reliability) doc["claimed_reliability"] = *spec.claimed_reliability;
  if (spec.claimed_lower_bound) doc["claimed_lower_bound"] = *spec.claimed_lower_bound;
  if (spec.seed) doc["seed"] = *spec.seed;
  return doc.dump(2) + "\n";
}

void save_system(const SystemSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write system file " + path.string());
  out << serialize_system(spec);
}

}  // namespace relcalc
