#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "dlgraph/tree.hpp"

namespace dlg {

/// Branching numbers q_1,...,q_d of the factor trees.
struct DLParams {
  std::vector<int> qs;

  int dim() const { return static_cast<int>(qs.size()); }
  /// Constant vertex degree (d-1)(q_1+...+q_d).
  int degree() const;
  void validate() const;
};

/// Vertex of DL(q_1,...,q_d): one tree vertex per coordinate, Busemann
/// values summing to zero.
struct DLVertex {
  std::vector<TreeVertex> coords;

  bool operator==(const DLVertex& o) const { return coords == o.coords; }
  bool operator!=(const DLVertex& o) const { return !(*this == o); }
};

struct DLVertexHash {
  std::size_t operator()(const DLVertex& v) const;
};

/// One neighbour step: coordinate `down` moves to a successor, coordinate
/// `up` to its predecessor, so Hor changes by e_down - e_up.
struct MoveType {
  int down = 0;
  int up = 0;
};

DLVertex dl_origin(const DLParams& params);

void validate_vertex(const DLParams& params, const DLVertex& x);

/// Busemann vector (h(x_1),...,h(x_d)).
std::vector<int> hor(const DLVertex& x);

bool is_neighbor(const DLVertex& x, const DLVertex& y);

/// Neighbours of x of the given type; there are exactly q_down of them,
/// ordered by the label of the descending edge.
std::vector<DLVertex> neighbors_typed(const DLParams& params, const DLVertex& x, MoveType t);

/// All (d-1)(q_1+...+q_d) neighbours, grouped by (up, down) pair.
std::vector<DLVertex> neighbors(const DLParams& params, const DLVertex& x);

constexpr std::size_t kDefaultBallCap = 5'000'000;

/// Finite BFS ball with exact distances.  Vertices are sorted by their
/// canonical text form so matrices and dumps are reproducible.
struct BallGraph {
  DLParams params;
  std::vector<DLVertex> vertices;
  std::vector<std::vector<int>> adjacency;  // sorted index lists
  std::vector<int> distance;                // BFS distance from the center
  std::unordered_map<DLVertex, int, DLVertexHash> index;

  int index_of(const DLVertex& v) const;
  std::size_t size() const { return vertices.size(); }
  std::vector<std::pair<int, int>> edge_list() const;
};

BallGraph ball(const DLParams& params, const DLVertex& center, int radius,
               std::size_t cap = kDefaultBallCap);

/// Sphere sizes |S_r| around the origin for r = 0..radius.
std::vector<std::size_t> growth(const DLParams& params, int radius,
                                std::size_t cap = kDefaultBallCap);

/// Induced subgraph on the neighbours of a vertex, with the type partition.
struct LinkGraph {
  std::vector<DLVertex> vertices;
  std::vector<MoveType> types;              // types[i] is the move x -> vertices[i]
  std::vector<std::vector<int>> adjacency;  // edges inside the link

  /// Indices with type (down=j, up=i), i.e. the set N_{i,j}(x).
  std::vector<int> typed_set(int up, int down) const;
  /// S_i^+ = neighbours whose i-th coordinate descended.
  std::vector<int> s_plus(int i) const;
  /// S_i^- = neighbours whose i-th coordinate ascended.
  std::vector<int> s_minus(int i) const;
};

LinkGraph link(const DLParams& params, const DLVertex& x);

/// Coordinate permutation isometry; perm[j] = sigma(j) must satisfy
/// q_{sigma(j)} = q_j for all j.
DLVertex permute_coordinates(const DLParams& params, const std::vector<int>& perm,
                             const DLVertex& x);

std::string to_string(const DLVertex& v);
DLVertex parse_dl_vertex(const std::string& text);

}  // namespace dlg
