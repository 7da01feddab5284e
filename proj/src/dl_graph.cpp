#include "dlgraph/dl_graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace dlg {

int DLParams::degree() const {
  const int total = std::accumulate(qs.begin(), qs.end(), 0);
  return (dim() - 1) * total;
}

void DLParams::validate() const {
  if (dim() < 2) throw std::invalid_argument("DLParams: need at least two trees");
  for (int q : qs)
    if (q < 2) throw std::invalid_argument("DLParams: every branching number must be >= 2");
}

std::size_t DLVertexHash::operator()(const DLVertex& v) const {
  TreeVertexHash th;
  std::size_t x = 0x243f6a8885a308d3ULL;
  for (const auto& c : v.coords) x ^= th(c) + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
  return x;
}

DLVertex dl_origin(const DLParams& params) {
  params.validate();
  DLVertex v;
  v.coords.assign(static_cast<std::size_t>(params.dim()), tree_origin());
  return v;
}

void validate_vertex(const DLParams& params, const DLVertex& x) {
  if (static_cast<int>(x.coords.size()) != params.dim())
    throw std::invalid_argument("DLVertex: wrong number of coordinates");
  int sum = 0;
  for (const auto& c : x.coords) sum += c.h;
  if (sum != 0) throw std::invalid_argument("DLVertex: Busemann values must sum to 0");
}

std::vector<int> hor(const DLVertex& x) {
  std::vector<int> h;
  h.reserve(x.coords.size());
  for (const auto& c : x.coords) h.push_back(c.h);
  return h;
}

bool is_neighbor(const DLVertex& x, const DLVertex& y) {
  if (x.coords.size() != y.coords.size()) return false;
  int down = -1, up = -1;
  for (std::size_t k = 0; k < x.coords.size(); ++k) {
    if (x.coords[k] == y.coords[k]) continue;
    if (y.coords[k].h == x.coords[k].h + 1 && predecessor(y.coords[k]) == x.coords[k]) {
      if (down >= 0) return false;
      down = static_cast<int>(k);
    } else if (y.coords[k].h == x.coords[k].h - 1 && predecessor(x.coords[k]) == y.coords[k]) {
      if (up >= 0) return false;
      up = static_cast<int>(k);
    } else {
      return false;
    }
  }
  return down >= 0 && up >= 0;
}

std::vector<DLVertex> neighbors_typed(const DLParams& params, const DLVertex& x, MoveType t) {
  validate_vertex(params, x);
  const int d = params.dim();
  if (t.down < 0 || t.down >= d || t.up < 0 || t.up >= d)
    throw std::invalid_argument("neighbors_typed: coordinate index out of range");
  if (t.down == t.up)
    throw std::invalid_argument("neighbors_typed: move must involve two distinct coordinates");
  std::vector<DLVertex> out;
  const int q = params.qs[static_cast<std::size_t>(t.down)];
  out.reserve(static_cast<std::size_t>(q));
  for (Label label = 0; label < static_cast<Label>(q); ++label) {
    DLVertex y = x;
    y.coords[static_cast<std::size_t>(t.down)] =
        successor(x.coords[static_cast<std::size_t>(t.down)], label, q);
    y.coords[static_cast<std::size_t>(t.up)] = predecessor(x.coords[static_cast<std::size_t>(t.up)]);
    out.push_back(std::move(y));
  }
  return out;
}

std::vector<DLVertex> neighbors(const DLParams& params, const DLVertex& x) {
  std::vector<DLVertex> out;
  out.reserve(static_cast<std::size_t>(params.degree()));
  const int d = params.dim();
  for (int up = 0; up < d; ++up)
    for (int down = 0; down < d; ++down) {
      if (up == down) continue;
      auto part = neighbors_typed(params, x, MoveType{down, up});
      out.insert(out.end(), part.begin(), part.end());
    }
  return out;
}

int BallGraph::index_of(const DLVertex& v) const {
  auto it = index.find(v);
  return it == index.end() ? -1 : it->second;
}

std::vector<std::pair<int, int>> BallGraph::edge_list() const {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    for (int j : adjacency[static_cast<std::size_t>(i)])
      if (i < j) edges.emplace_back(i, j);
  return edges;
}

BallGraph ball(const DLParams& params, const DLVertex& center, int radius, std::size_t cap) {
  validate_vertex(params, center);
  if (radius < 0) throw std::invalid_argument("ball: radius must be >= 0");

  std::unordered_map<DLVertex, int, DLVertexHash> dist;
  dist.emplace(center, 0);
  std::deque<DLVertex> queue{center};
  while (!queue.empty()) {
    DLVertex x = std::move(queue.front());
    queue.pop_front();
    const int dx = dist.at(x);
    if (dx == radius) continue;
    for (auto& y : neighbors(params, x)) {
      if (dist.emplace(y, dx + 1).second) {
        if (dist.size() > cap)
          throw cap_exceeded("ball: vertex count exceeds cap of " + std::to_string(cap) +
                             " at radius " + std::to_string(radius));
        queue.push_back(std::move(y));
      }
    }
  }

  BallGraph g;
  g.params = params;
  g.vertices.reserve(dist.size());
  for (const auto& [v, d] : dist) g.vertices.push_back(v);
  std::sort(g.vertices.begin(), g.vertices.end(),
            [](const DLVertex& a, const DLVertex& b) { return to_string(a) < to_string(b); });
  g.index.reserve(g.vertices.size());
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) g.index.emplace(g.vertices[static_cast<std::size_t>(i)], i);
  g.distance.resize(g.vertices.size());
  g.adjacency.assign(g.vertices.size(), {});
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
    const DLVertex& x = g.vertices[static_cast<std::size_t>(i)];
    g.distance[static_cast<std::size_t>(i)] = dist.at(x);
    for (const auto& y : neighbors(params, x)) {
      auto it = g.index.find(y);
      if (it != g.index.end()) g.adjacency[static_cast<std::size_t>(i)].push_back(it->second);
    }
    auto& row = g.adjacency[static_cast<std::size_t>(i)];
    std::sort(row.begin(), row.end());
  }
  return g;
}

std::vector<std::size_t> growth(const DLParams& params, int radius, std::size_t cap) {
  BallGraph g = ball(params, dl_origin(params), radius, cap);
  std::vector<std::size_t> spheres(static_cast<std::size_t>(radius) + 1, 0);
  for (int d : g.distance) ++spheres[static_cast<std::size_t>(d)];
  return spheres;
}

std::vector<int> LinkGraph::typed_set(int up, int down) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(types.size()); ++i)
    if (types[static_cast<std::size_t>(i)].up == up && types[static_cast<std::size_t>(i)].down == down)
      out.push_back(i);
  return out;
}

std::vector<int> LinkGraph::s_plus(int i) const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(types.size()); ++k)
    if (types[static_cast<std::size_t>(k)].down == i) out.push_back(k);
  return out;
}

std::vector<int> LinkGraph::s_minus(int i) const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(types.size()); ++k)
    if (types[static_cast<std::size_t>(k)].up == i) out.push_back(k);
  return out;
}

LinkGraph link(const DLParams& params, const DLVertex& x) {
  LinkGraph g;
  const int d = params.dim();
  for (int up = 0; up < d; ++up)
    for (int down = 0; down < d; ++down) {
      if (up == down) continue;
      for (auto& y : neighbors_typed(params, x, MoveType{down, up})) {
        g.vertices.push_back(std::move(y));
        g.types.push_back(MoveType{down, up});
      }
    }
  g.adjacency.assign(g.vertices.size(), {});
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(g.vertices.size()); ++j)
      if (is_neighbor(g.vertices[static_cast<std::size_t>(i)], g.vertices[static_cast<std::size_t>(j)])) {
        g.adjacency[static_cast<std::size_t>(i)].push_back(j);
        g.adjacency[static_cast<std::size_t>(j)].push_back(i);
      }
  return g;
}

DLVertex permute_coordinates(const DLParams& params, const std::vector<int>& perm,
                             const DLVertex& x) {
  validate_vertex(params, x);
  const int d = params.dim();
  if (static_cast<int>(perm.size()) != d)
    throw std::invalid_argument("permute_coordinates: permutation has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (int j = 0; j < d; ++j) {
    const int sj = perm[static_cast<std::size_t>(j)];
    if (sj < 0 || sj >= d || seen[static_cast<std::size_t>(sj)])
      throw std::invalid_argument("permute_coordinates: not a permutation");
    seen[static_cast<std::size_t>(sj)] = true;
    if (params.qs[static_cast<std::size_t>(sj)] != params.qs[static_cast<std::size_t>(j)])
      throw std::invalid_argument("permute_coordinates: permutation must preserve branching numbers");
  }
  // (sigma x)_{sigma(j)} = x_j.
  DLVertex y;
  y.coords.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j)
    y.coords[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] = x.coords[static_cast<std::size_t>(j)];
  return y;
}

std::string to_string(const DLVertex& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (i) os << '|';
    os << to_string(v.coords[i]);
  }
  return os.str();
}

DLVertex parse_dl_vertex(const std::string& text) {
  DLVertex v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('|', pos);
    if (next == std::string::npos) next = text.size();
    v.coords.push_back(parse_tree_vertex(text.substr(pos, next - pos)));
    if (next == text.size()) break;
    pos = next + 1;
  }
  return v;
}

}  // namespace dlg
