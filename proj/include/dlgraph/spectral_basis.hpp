#pragma once

#include <unordered_map>

#include "dlgraph/dl_graph.hpp"
#include "dlgraph/lattice_spectrum.hpp"

namespace dlg {

/// Finitely supported real function on the graph.
using SparseFunction = std::unordered_map<DLVertex, double, DLVertexHash>;

double norm(const SparseFunction& f);
double inner(const SparseFunction& f, const SparseFunction& g);

/// Finite induced subgraph where each coordinate descends from its anchor.
struct Polyhedron {
  std::vector<TreeVertex> anchors;

  std::vector<int> hvec() const;
  int height() const;  // -(h(a_1)+...+h(a_d))
};

/// Validates anchors against the parameters and requires height >= 2.
Polyhedron make_polyhedron(const DLParams& params, std::vector<TreeVertex> anchors);

/// Mean-zero unit vector on the label alphabet of one tree:
/// 0 below l-1, a positive spike at l-1, constant negative tail after.
/// The family l = 1..q-1 is mutually orthogonal.
struct PhiFunction {
  int q = 0;
  int l = 0;
  std::vector<double> values;
};

PhiFunction phi(int q, int l);

/// True iff every single-coordinate horocycle slice sum of f vanishes.
bool is_horizontal(const DLParams& params, const SparseFunction& f, double tol = 1e-10);

/// The product function approximating the point mass at the origin built
/// from depth-n off-axis anchors; its l2 error from the point mass is
/// exactly prod_j(q_j^{-n} + 1) - 1.
SparseFunction dense_approx(const DLParams& params, int n);

/// All descendants of v on horocycle k, ordered by canonical text form.
std::vector<TreeVertex> descendants_at(const TreeVertex& v, int k, int q);

/// The single-tree level function: supported on the horocycle-k descendants
/// of the anchor, weighted phi(branch) * q^{(h(a)-k+1)/2}; the zero map for
/// k <= h(a).
std::unordered_map<TreeVertex, double, TreeVertexHash> level_function(
    int q, const TreeVertex& anchor, const PhiFunction& ph, int k);

/// Finitely supported eigenfunction of the walk operator with its origin
/// recorded: polyhedron, interior lattice label, and branch labels.
struct BasisFunction {
  SparseFunction values;
  double eigenvalue = 0.0;
  Polyhedron polyhedron;
  LatticePoint m;
  std::vector<int> labels;
};

/// Assembles the eigenfunction sum_k psi(k) f_{k + hvec + h e_d} for one
/// Dirichlet eigenpair of the polyhedron's shape.  Labels pick the phi
/// function per coordinate (1 <= l_j <= q_j - 1).
BasisFunction g_eigenfunction(const DLParams& params, const Polyhedron& poly,
                              const DirichletEig& eig, int pair_index,
                              const std::vector<int>& labels);

/// One application of the walk operator on the support and its neighbours.
SparseFunction apply_P(const DLParams& params, const SparseFunction& f);

/// Orthonormal basis of the horizontal functions supported by the
/// polyhedron: one eigenfunction per (sub-polyhedron, interior point,
/// label choice), anchors in canonical order, then the interior point,
/// then labels.
std::vector<BasisFunction> basis_for_polyhedron(const DLParams& params, const Polyhedron& poly,
                                                std::size_t cap = 200000);

/// Diagonal spectral weight of one anchor-depth vector r (all entries >= 1):
/// weight prod_j (q_j - 1) q_j^{-r_j} attached to the interior point
/// (r_1,...,r_{d-1}, r_d - h) of B_h, h = sum r_j.
struct PlancherelAtom {
  std::vector<int> r;
  int h = 0;
  LatticePoint k;
  double weight = 0.0;
};

struct PlancherelSet {
  std::vector<PlancherelAtom> atoms;  // ordered by h, then lexicographic r
  double tail_mass = 0.0;             // 1 - sum of listed weights (total mass is exactly 1)
};

PlancherelSet plancherel_atoms(const std::vector<int>& qs, int hmax);

struct ReturnProbability {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Spectral return probabilities p^(n)(o,o) for n = 0..nmax, truncating the
/// diagonal spectral measure at height hmax; the tail bound dominates the
/// truncation error.
std::vector<ReturnProbability> return_probabilities(const std::vector<int>& qs, int nmax,
                                                    int hmax);

ReturnProbability return_probability(const std::vector<int>& qs, int n, int hmax);

/// Exact p^(n)(o,o) for n = 0..nmax by sparse powers of the walk operator on
/// a BFS ball of radius floor(nmax/2)+1, paired through self-adjointness.
std::vector<double> exact_return_probabilities(const DLParams& params, int nmax,
                                               std::size_t cap = kDefaultBallCap);

}  // namespace dlg
