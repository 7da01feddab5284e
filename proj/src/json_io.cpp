#include "dlgraph/json_io.hpp"

namespace dlg {

nlohmann::json graph_to_json(const BallGraph& g) {
  nlohmann::json j;
  j["version"] = kLibraryVersion;
  j["params"] = g.params.qs;
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : g.vertices) verts.push_back(to_string(v));
  j["vertices"] = std::move(verts);
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edge_list()) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  j["distances"] = g.distance;
  return j;
}

BallGraph graph_from_json(const nlohmann::json& j) {
  BallGraph g;
  g.params.qs = j.at("params").get<std::vector<int>>();
  g.params.validate();
  for (const auto& s : j.at("vertices")) g.vertices.push_back(parse_dl_vertex(s.get<std::string>()));
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
    validate_vertex(g.params, g.vertices[static_cast<std::size_t>(i)]);
    g.index.emplace(g.vertices[static_cast<std::size_t>(i)], i);
  }
  g.distance = j.at("distances").get<std::vector<int>>();
  if (g.distance.size() != g.vertices.size())
    throw std::invalid_argument("graph_from_json: distances/vertices size mismatch");
  g.adjacency.assign(g.vertices.size(), {});
  for (const auto& e : j.at("edges")) {
    const int a = e.at(0).get<int>(), b = e.at(1).get<int>();
    if (a < 0 || b < 0 || a >= static_cast<int>(g.vertices.size()) ||
        b >= static_cast<int>(g.vertices.size()))
      throw std::invalid_argument("graph_from_json: edge endpoint out of range");
    g.adjacency[static_cast<std::size_t>(a)].push_back(b);
    g.adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& row : g.adjacency) std::sort(row.begin(), row.end());
  return g;
}

}  // namespace dlg
