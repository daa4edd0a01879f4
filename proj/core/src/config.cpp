#include "causalst/config.hpp"

#include <optional>

#include <json.hpp>

namespace causalst {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where, what);
}

const json& member(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + "/" + key, "missing field");
  return *it;
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Rational get_rational(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a rational string like \"1/2\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

std::uint32_t get_uint(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) fail(where, "expected a non-negative integer");
  return j.get<std::uint32_t>();
}

Embedding parse_embedding(const json& j, const std::string& where) {
  const std::string space = get_string(member(j, where, "space"), where + "/space");
  if (space == "minkowski11") {
    const json& locations = member(j, where, "locations");
    if (!locations.is_object()) fail(where + "/locations", "expected an object");
    std::map<std::string, MinkowskiPoint> points;
    for (const auto& [node, coords] : locations.items()) {
      const std::string at = where + "/locations/" + node;
      if (!coords.is_array() || coords.size() != 2) fail(at, "expected [t, x]");
      points[node] = MinkowskiPoint{get_rational(coords[0], at + "/0"),
                                    get_rational(coords[1], at + "/1")};
    }
    return Embedding::minkowski(std::move(points));
  }
  if (space == "poset") {
    const json& elements_j = member(j, where, "elements");
    if (!elements_j.is_array()) fail(where + "/elements", "expected an array");
    std::vector<std::string> elements;
    for (std::size_t i = 0; i < elements_j.size(); ++i)
      elements.push_back(get_string(elements_j[i], where + "/elements/" + std::to_string(i)));
    std::vector<std::pair<std::string, std::string>> covers;
    if (j.contains("covers")) {
      const json& covers_j = j["covers"];
      if (!covers_j.is_array()) fail(where + "/covers", "expected an array");
      for (std::size_t i = 0; i < covers_j.size(); ++i) {
        const std::string at = where + "/covers/" + std::to_string(i);
        if (!covers_j[i].is_array() || covers_j[i].size() != 2)
          fail(at, "expected [below, above]");
        covers.emplace_back(get_string(covers_j[i][0], at + "/0"),
                            get_string(covers_j[i][1], at + "/1"));
      }
    }
    const json& locations = member(j, where, "locations");
    if (!locations.is_object()) fail(where + "/locations", "expected an object");
    std::map<std::string, std::string> loc;
    for (const auto& [node, element] : locations.items())
      loc[node] = get_string(element, where + "/locations/" + node);
    try {
      return Embedding::in_poset(FinitePoset(std::move(elements), covers), std::move(loc));
    } catch (const Error& e) {
      fail(where, e.what());
    }
  }
  fail(where + "/space", "expected \"minkowski11\" or \"poset\"");
}

json embedding_to_json(const Embedding& e) {
  json out;
  if (e.kind() == SpaceKind::minkowski11) {
    out["space"] = "minkowski11";
    json locations = json::object();
    for (const auto& [node, p] : e.minkowski_locations())
      locations[node] = json::array({format_rational(p.t), format_rational(p.x)});
    out["locations"] = std::move(locations);
  } else {
    out["space"] = "poset";
    const FinitePoset& poset = e.poset();
    out["elements"] = poset.elements();
    json covers = json::array();
    for (const auto& [a, b] : poset.covering_pairs()) covers.push_back(json::array({a, b}));
    out["covers"] = std::move(covers);
    json locations = json::object();
    for (const auto& [node, element] : e.poset_locations())
      locations[node] = poset.element(element);
    out["locations"] = std::move(locations);
  }
  return out;
}

}  // namespace

ScenarioSpec parse_scenario_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail("", std::string("not valid JSON: ") + e.what());
  }
  if (root.contains("schema_version") && root["schema_version"] != kSchemaVersion)
    fail("/schema_version", "unsupported schema version");

  // nodes
  const json& nodes_j = member(root, "", "nodes");
  if (!nodes_j.is_array() || nodes_j.empty()) fail("/nodes", "expected a non-empty array");
  std::vector<NodeDecl> decls;
  std::vector<std::pair<std::string, std::uint32_t>> alphabets;
  for (std::size_t i = 0; i < nodes_j.size(); ++i) {
    const std::string at = "/nodes/" + std::to_string(i);
    const json& nj = nodes_j[i];
    const std::string name = get_string(member(nj, at, "name"), at + "/name");
    const std::string role = get_string(member(nj, at, "role"), at + "/role");
    if (role != "observed" && role != "unobserved")
      fail(at + "/role", "expected \"observed\" or \"unobserved\"");
    decls.push_back({name, role == "observed" ? NodeRole::observed : NodeRole::unobserved});
    if (nj.contains("alphabet")) alphabets.emplace_back(name, get_uint(nj["alphabet"], at + "/alphabet"));
  }

  // edges
  std::vector<std::pair<std::string, std::string>> edges;
  if (root.contains("edges")) {
    const json& edges_j = root["edges"];
    if (!edges_j.is_array()) fail("/edges", "expected an array");
    for (std::size_t i = 0; i < edges_j.size(); ++i) {
      const std::string at = "/edges/" + std::to_string(i);
      if (!edges_j[i].is_array() || edges_j[i].size() != 2) fail(at, "expected [from, to]");
      edges.emplace_back(get_string(edges_j[i][0], at + "/0"),
                         get_string(edges_j[i][1], at + "/1"));
    }
  }

  std::optional<CausalStructure> structure;
  try {
    structure.emplace(decls, edges);
  } catch (const Error& e) {
    fail("/nodes", e.what());
  }
  ModelBuilder builder(std::move(*structure));
  std::optional<ClassicalCausalModel> model;
  try {
    for (const auto& [name, size] : alphabets) builder.alphabet(name, size);
    if (root.contains("mechanisms")) {
      const json& mechs = root["mechanisms"];
      if (!mechs.is_object()) fail("/mechanisms", "expected an object");
      for (const auto& [node, mj] : mechs.items()) {
        const std::string at = "/mechanisms/" + node;
        if (mj.contains("op")) {
          const std::string op = get_string(mj["op"], at + "/op");
          const auto primitive = mechanism_primitive_from_name(op);
          if (!primitive) fail(at + "/op", "unknown primitive '" + op + "'");
          builder.mechanism(node, *primitive);
        } else {
          const json& parents_j = member(mj, at, "parents");
          const json& table_j = member(mj, at, "table");
          if (!parents_j.is_array()) fail(at + "/parents", "expected an array");
          if (!table_j.is_array()) fail(at + "/table", "expected an array");
          std::vector<std::string> parents;
          for (std::size_t i = 0; i < parents_j.size(); ++i)
            parents.push_back(get_string(parents_j[i], at + "/parents/" + std::to_string(i)));
          std::vector<std::uint32_t> table;
          for (std::size_t i = 0; i < table_j.size(); ++i)
            table.push_back(get_uint(table_j[i], at + "/table/" + std::to_string(i)));
          builder.mechanism_table(node, parents, std::move(table));
        }
      }
    }
    if (root.contains("exogenous")) {
      const json& exo = root["exogenous"];
      if (!exo.is_object()) fail("/exogenous", "expected an object");
      for (const auto& [node, pmf_j] : exo.items()) {
        const std::string at = "/exogenous/" + node;
        if (!pmf_j.is_array()) fail(at, "expected an array of rational strings");
        std::vector<Rational> pmf;
        for (std::size_t i = 0; i < pmf_j.size(); ++i)
          pmf.push_back(get_rational(pmf_j[i], at + "/" + std::to_string(i)));
        builder.exogenous(node, std::move(pmf));
      }
    }
    model.emplace(builder.build());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail("/mechanisms", e.what());
  }

  ScenarioSpec spec{
      root.contains("name") ? get_string(root["name"], "/name") : std::string("scenario"),
      std::move(*model),
      {},
      {},
      std::nullopt};

  if (root.contains("embeddings")) {
    const json& embeddings = root["embeddings"];
    if (!embeddings.is_object()) fail("/embeddings", "expected an object");
    for (const auto& [name, ej] : embeddings.items())
      spec.embeddings.emplace(name, parse_embedding(ej, "/embeddings/" + name));
  }

  if (root.contains("roles")) {
    const json& roles = root["roles"];
    const std::string at = "/roles";
    spec.roles.a = get_string(member(roles, at, "a"), at + "/a");
    spec.roles.c = get_string(member(roles, at, "c"), at + "/c");
    spec.roles.x = get_string(member(roles, at, "x"), at + "/x");
    spec.roles.z = get_string(member(roles, at, "z"), at + "/z");
    if (roles.contains("b")) spec.roles.b = get_string(roles["b"], at + "/b");
    if (roles.contains("latents")) {
      if (!roles["latents"].is_array()) fail(at + "/latents", "expected an array");
      for (std::size_t i = 0; i < roles["latents"].size(); ++i)
        spec.roles.latents.push_back(
            get_string(roles["latents"][i], at + "/latents/" + std::to_string(i)));
    }
    const CausalStructure& g = spec.model.structure();
    for (const std::string* n : {&spec.roles.a, &spec.roles.c, &spec.roles.x, &spec.roles.z})
      if (!g.has_node(*n)) fail(at, "designated node '" + *n + "' does not exist");
    if (spec.roles.b && !g.has_node(*spec.roles.b))
      fail(at + "/b", "designated node '" + *spec.roles.b + "' does not exist");
    for (const auto& l : spec.roles.latents)
      if (!g.has_node(l)) fail(at + "/latents", "designated node '" + l + "' does not exist");
  }

  if (root.contains("noise")) spec.noise = get_rational(root["noise"], "/noise");
  return spec;
}

std::string scenario_config_to_json(const ScenarioSpec& spec) {
  const CausalStructure& g = spec.model.structure();
  json root;
  root["schema_version"] = kSchemaVersion;
  root["name"] = spec.name;

  json nodes = json::array();
  for (const NodeDecl& decl : g.nodes()) {
    json nj;
    nj["name"] = decl.name;
    nj["role"] = decl.role == NodeRole::observed ? "observed" : "unobserved";
    nj["alphabet"] = spec.model.cardinality(g.node(decl.name));
    nodes.push_back(std::move(nj));
  }
  root["nodes"] = std::move(nodes);

  json edges = json::array();
  for (const Edge& e : g.edges())
    edges.push_back(json::array({g.name(e.from), g.name(e.to)}));
  root["edges"] = std::move(edges);

  json mechanisms = json::object();
  json exogenous = json::object();
  for (const NodeDecl& decl : g.nodes()) {
    const NodeId id = g.node(decl.name);
    if (spec.model.is_exogenous(id)) {
      json pmf = json::array();
      for (const Rational& p : spec.model.exogenous(id).pmf) pmf.push_back(format_rational(p));
      exogenous[decl.name] = std::move(pmf);
    } else {
      const Mechanism& f = spec.model.mechanism(id);
      json mj;
      json parents = json::array();
      for (const NodeId p : f.parent_order()) parents.push_back(g.name(p));
      mj["parents"] = std::move(parents);
      mj["table"] = f.table();
      mechanisms[decl.name] = std::move(mj);
    }
  }
  root["mechanisms"] = std::move(mechanisms);
  root["exogenous"] = std::move(exogenous);

  json embeddings = json::object();
  for (const auto& [name, e] : spec.embeddings) embeddings[name] = embedding_to_json(e);
  root["embeddings"] = std::move(embeddings);

  json roles;
  roles["a"] = spec.roles.a;
  roles["c"] = spec.roles.c;
  roles["x"] = spec.roles.x;
  roles["z"] = spec.roles.z;
  if (spec.roles.b) roles["b"] = *spec.roles.b;
  roles["latents"] = spec.roles.latents;
  root["roles"] = std::move(roles);

  if (spec.noise) root["noise"] = format_rational(*spec.noise);
  return root.dump(2) + "\n";
}

BellBehavior parse_behavior_json(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail("", std::string("not valid JSON: ") + e.what());
  }
  const json& rows = member(root, "", "behavior");
  if (!rows.is_array() || rows.size() != 4) fail("/behavior", "expected 4 rows (settings a,c)");
  std::array<Rational, 16> cells;
  for (unsigned a = 0; a < 2; ++a) {
    for (unsigned c = 0; c < 2; ++c) {
      const unsigned row = a * 2 + c;
      const std::string at = "/behavior/" + std::to_string(row);
      if (!rows[row].is_array() || rows[row].size() != 4)
        fail(at, "expected 4 cells (outcomes x,z)");
      for (unsigned x = 0; x < 2; ++x)
        for (unsigned z = 0; z < 2; ++z)
          cells[BellBehavior::index(x, z, a, c)] =
              get_rational(rows[row][x * 2 + z], at + "/" + std::to_string(x * 2 + z));
    }
  }
  try {
    return BellBehavior::from_table(std::move(cells));
  } catch (const Error& e) {
    fail("/behavior", e.what());
  }
}

std::string behavior_to_json(const BellBehavior& behavior) {
  json rows = json::array();
  for (unsigned a = 0; a < 2; ++a) {
    for (unsigned c = 0; c < 2; ++c) {
      json row = json::array();
      for (unsigned x = 0; x < 2; ++x)
        for (unsigned z = 0; z < 2; ++z) row.push_back(format_rational(behavior.p(x, z, a, c)));
      rows.push_back(std::move(row));
    }
  }
  json root;
  root["schema_version"] = kSchemaVersion;
  root["rows"] = "a,c";
  root["cols"] = "x,z";
  root["behavior"] = std::move(rows);
  return root.dump(2) + "\n";
}

}  // namespace causalst
