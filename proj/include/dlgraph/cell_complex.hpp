#pragma once

#include "dlgraph/dl_graph.hpp"

namespace dlg {

/// Cell of the complex: per coordinate a singleton tree vertex or a tree
/// edge [x, successor of x].  The dimension is (number of doubled
/// coordinates) - 1; members are the admissible vertex tuples.
struct Cell {
  std::vector<std::vector<TreeVertex>> sets;  // each of size 1 or 2

  int dimension() const;
  /// Sum of Busemann values of the lower choices.
  int base_level() const;
  std::vector<DLVertex> members() const;
  std::string key() const;
};

/// Faces obtained by shrinking one doubled coordinate to an endpoint,
/// keeping only genuine cells (at least two members).
std::vector<Cell> faces(const Cell& cell);

/// Finite chunk of the cell complex over a product region.
struct CellComplex {
  DLParams params;
  std::vector<DLVertex> vertices;        // 0-skeleton inside the region
  std::vector<std::vector<Cell>> cells;  // cells[s-1] = s-dimensional cells

  std::size_t count(int dim) const;
  long euler_characteristic() const;
};

/// All cells whose per-coordinate sets lie inside the given product region.
CellComplex cells_in_region(const DLParams& params,
                            const std::vector<std::vector<TreeVertex>>& region,
                            std::size_t cap = 2'000'000);

/// Bifurcation data for an octahedron: per coordinate two branches from b_i
/// down to t_i and t_i' at depth R, with the b-levels summing to -R.
struct OctahedronSpec {
  std::vector<TreeVertex> bottom;
  std::vector<TreeVertex> tip;
  std::vector<TreeVertex> tip2;
  int radius = 1;
};

/// Validates the octahedron data (level sum, confluent, equal depths).
void validate_octahedron(const DLParams& params, const OctahedronSpec& spec);

/// The subcomplex spanned by tuples following the two branches in every
/// coordinate; homeomorphic to a (d-1)-sphere.
CellComplex octahedron_complex(const DLParams& params, const OctahedronSpec& spec,
                               std::size_t cap = 2'000'000);

/// True iff in every coordinate the second branch word is the first with
/// only its initial label increased by one.
bool is_basic_octahedron(const DLParams& params, const OctahedronSpec& spec);

/// Standard octahedron at the origin: branches along labels 0 and 1 below
/// the ancestor at depth R in the first coordinate's tree, balanced so the
/// bottom levels sum to -R.
OctahedronSpec standard_octahedron(const DLParams& params, int radius);

}  // namespace dlg
