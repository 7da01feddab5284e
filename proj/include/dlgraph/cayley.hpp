#pragma once

#include <map>

#include "dlgraph/dl_graph.hpp"
#include "dlgraph/laurent.hpp"

namespace dlg {

/// Group element: upper-triangular affine matrix with multiplier
/// prod_i (t + l_i)^{k_i} and translation b.
struct AffineElement {
  std::vector<int> k;
  Laurent b;

  bool operator==(const AffineElement& o) const { return k == o.k && b == o.b; }
  bool operator!=(const AffineElement& o) const { return !(*this == o); }
};

struct AffineElementHash {
  std::size_t operator()(const AffineElement& g) const;
};

/// Splitting of a translation b against multiplier exponents k: with
/// m = prod (t + l_i)^{k_i}, the i-th component is m times the principal
/// part of b/m at place i and the last is m times the polynomial part.
/// The components always exist, are unique, sum back to b, and each
/// component agrees with b in the radius-q^{-k_i} ball at its place (its
/// series below k_i is exactly that of b).
struct Decomposition {
  std::vector<Laurent> components;  // size d, summing to the element
  int infinity_cutoff = 0;          // sum of the k_i
};

/// The affine matrix group over a Laurent ring whose Cayley graph is the
/// equal-branching Diestel-Leader graph of dimension d = places + 1.
class AffineGroup {
 public:
  explicit AffineGroup(CoefficientRing ring);

  int dim() const { return laurent_.places() + 1; }
  const LaurentRing& laurent() const { return laurent_; }
  const CoefficientRing& ring() const { return laurent_.coeffs(); }
  DLParams dl_params() const;

  AffineElement identity() const;
  AffineElement mul(const AffineElement& a, const AffineElement& b) const;
  AffineElement inverse(const AffineElement& a) const;

  /// Generator moving the origin to its type e_i - e_j neighbour whose
  /// descending edge carries the given label: multiplier L_i / L_j and
  /// translation label / L_j, where L_i = t + l_i for i < d-1 and L_{d-1} = 1.
  AffineElement generator(int i, int j, RingElem label) const;
  /// All d(d-1)q generators; closed under inverses.
  std::vector<AffineElement> generating_set() const;

  /// Unique component splitting of b against exponents k; throws on an
  /// internal inconsistency (the components must sum back exactly).
  Decomposition decompose(const Laurent& b, const std::vector<int>& k) const;

  /// Vertex of the Diestel-Leader graph corresponding to g (g applied to the
  /// origin): finite places give the first d-1 tree coordinates, the place
  /// at infinity the last.
  DLVertex to_vertex(const AffineElement& g) const;

  std::string to_string(const AffineElement& g) const;

 private:
  LaurentRing laurent_;
};

/// Outcome of comparing the group ball with the graph ball through
/// to_vertex; non-empty mismatches mean the check failed.
struct CayleyBallReport {
  bool isomorphic = false;
  std::size_t group_ball = 0;
  std::size_t graph_ball = 0;
  std::vector<std::string> mismatches;
};

CayleyBallReport cayley_ball_check(const AffineGroup& group, int radius,
                                   std::size_t cap = kDefaultBallCap);

/// Word-metric ball in the group, ordered by the canonical text of the
/// corresponding graph vertices.
std::vector<AffineElement> group_ball(const AffineGroup& group, int radius,
                                      std::size_t cap = kDefaultBallCap);

/// Presentation check: every length-2 and triangle relator must evaluate to
/// the identity, with the counts d(d-1)q and d(d-1)(d-2)(q^2+q).
struct RelatorReport {
  bool all_identities = false;
  std::size_t inverse_relators = 0;
  std::size_t triangle_relators = 0;
  std::vector<std::string> failures;
};

RelatorReport relator_check(const AffineGroup& group);

/// Letter-by-letter affine transformation a + (t + l_place) f of a truncated
/// power series: output letter l*b + a, next state b.  Requires l_place to
/// be invertible so the machine also has an inverse.
std::vector<RingElem> automaton_transform(const CoefficientRing& ring, int place, RingElem a,
                                          const std::vector<RingElem>& input);

}  // namespace dlg
