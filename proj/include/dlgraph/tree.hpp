#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlg {

/// Thrown when an enumeration would exceed a configured size cap.
class cap_exceeded : public std::runtime_error {
 public:
  explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

using Label = std::uint32_t;

/// Vertex of the homogeneous tree T_q, rooted at a fixed end.
///
/// `h` is the Busemann value (negative toward the root end).  `word` holds
/// the edge labels read along the geodesic from the root end down to the
/// vertex: entry i of `word` is the label at index h - word.size() + i, so
/// the last entry sits at index h-1.  All labels at indices below the stored
/// window are zero, and the canonical form trims leading zeros: either the
/// word is empty or its first entry is nonzero.  Two vertices are equal iff
/// their (h, word) pairs coincide, which makes the type hashable.
struct TreeVertex {
  int h = 0;
  std::vector<Label> word;

  bool operator==(const TreeVertex& o) const { return h == o.h && word == o.word; }
  bool operator!=(const TreeVertex& o) const { return !(*this == o); }
};

/// Origin vertex o = (0, empty word).
inline TreeVertex tree_origin() { return TreeVertex{}; }

/// Label at index k (0 outside the stored window).
Label label_at(const TreeVertex& v, int k);

/// Trim leading zero labels so the vertex is in canonical form.
TreeVertex canonicalize(TreeVertex v);

bool is_canonical(const TreeVertex& v);

/// The unique neighbour one step toward the root end.
TreeVertex predecessor(const TreeVertex& v);

/// The child of v reached along the edge carrying `label`; requires 0 <= label < q.
TreeVertex successor(const TreeVertex& v, Label label, int q);

/// v moved toward the root end until it reaches Busemann value k <= v.h.
TreeVertex ancestor_at(const TreeVertex& v, int k);

bool is_ancestor(const TreeVertex& a, const TreeVertex& v);

/// Maximal common ancestor of u and v.
TreeVertex confluent(const TreeVertex& u, const TreeVertex& v);

/// Steps from u up to confluent(u, v).
int up_distance(const TreeVertex& u, const TreeVertex& v);

/// Graph distance d(u, v) = up(u,v) + up(v,u).
int distance(const TreeVertex& u, const TreeVertex& v);

/// Finite stand-in for a boundary point: either the root end itself, or a
/// "lower" end approximated by a deep witness vertex on its ray.
struct BoundaryApproxPoint {
  enum class Kind { omega, lower };
  Kind kind = Kind::omega;
  TreeVertex witness;  // for lower: a vertex with h > 0 on the ray

  static BoundaryApproxPoint omega_end() { return {Kind::omega, TreeVertex{}}; }
  static BoundaryApproxPoint lower_end(TreeVertex w);
};

/// Point on the geodesic from the origin through the boundary point that
/// lies on horocycle k.  For the root end, k must be <= 0.  For a lower end
/// the geodesic ascends from the origin to its bifurcation point and then
/// descends toward the witness; when it meets horocycle k twice (k = 0 on a
/// ray branching above the origin) the descending-side point is returned.
/// Requests beyond the witness depth raise an insufficient-witness error.
TreeVertex ray_point(const BoundaryApproxPoint& xi, int k);

/// Re-reads a T_q vertex whose Busemann value is divisible by s as a vertex
/// of T_{q^s}: label blocks of length s are packed big-endian (highest index
/// = most significant digit) into single base-q^s labels.
TreeVertex coarsen(const TreeVertex& v, int s, int q);

/// Canonical text form "h:l0,l1,..." (lowest index first).
std::string to_string(const TreeVertex& v);

TreeVertex parse_tree_vertex(const std::string& text);

struct TreeVertexHash {
  std::size_t operator()(const TreeVertex& v) const;
};

}  // namespace dlg
