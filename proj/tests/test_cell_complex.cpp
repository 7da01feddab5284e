#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "dlgraph/cayley.hpp"
#include "dlgraph/cell_complex.hpp"

using namespace dlg;

namespace {

std::vector<TreeVertex> tree_patch(const TreeVertex& top, int depth, int q) {
  std::vector<TreeVertex> frontier{top}, all{top};
  for (int r = 0; r < depth; ++r) {
    std::vector<TreeVertex> next;
    for (const auto& v : frontier)
      for (Label l = 0; l < static_cast<Label>(q); ++l) next.push_back(successor(v, l, q));
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return all;
}

}  // namespace

TEST_CASE("two trees: only vertices and edges, matching the graph") {
  const DLParams p{{2, 2}};
  std::vector<std::vector<TreeVertex>> region;
  for (int i = 0; i < 2; ++i) region.push_back(tree_patch(TreeVertex{-2, {}}, 3, 2));
  const CellComplex cx = cells_in_region(p, region);
  CHECK(cx.cells.size() == 1);
  CHECK(cx.count(1) > 0);

  // 1-skeleton equals the neighbour relation inside the region
  std::set<std::string> edge_keys;
  for (const auto& e : cx.cells[0]) edge_keys.insert(e.key());
  std::size_t expected = 0;
  for (std::size_t a = 0; a < cx.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < cx.vertices.size(); ++b)
      if (is_neighbor(cx.vertices[a], cx.vertices[b])) {
        ++expected;
        const std::string key_ab = to_string(cx.vertices[a]) + ';' + to_string(cx.vertices[b]) + ';';
        const std::string key_ba = to_string(cx.vertices[b]) + ';' + to_string(cx.vertices[a]) + ';';
        CHECK((edge_keys.count(key_ab) || edge_keys.count(key_ba)));
      }
  CHECK(edge_keys.size() == expected);
}

TEST_CASE("three trees: triangles come in exactly two kinds") {
  const DLParams p{{2, 2, 2}};
  std::vector<std::vector<TreeVertex>> region;
  for (int i = 0; i < 3; ++i) region.push_back(tree_patch(TreeVertex{-2, {}}, 3, 2));
  const CellComplex cx = cells_in_region(p, region);
  CHECK(cx.count(2) > 0);
  CHECK(cx.cells.size() == 2);
  for (const auto& cell : cx.cells[1]) {
    CHECK(cell.members().size() == 3);
    CHECK((cell.base_level() == -1 || cell.base_level() == -2));
  }
}

TEST_CASE("triangles through a vertex match the presentation relators two-to-one") {
  const DLParams p{{2, 2, 2}};
  const DLVertex o = dl_origin(p);
  std::vector<std::vector<TreeVertex>> region;
  for (int i = 0; i < 3; ++i) {
    std::vector<TreeVertex> r{predecessor(tree_origin()), tree_origin()};
    for (Label l = 0; l < 2; ++l) r.push_back(successor(tree_origin(), l, 2));
    region.push_back(std::move(r));
  }
  const CellComplex cx = cells_in_region(p, region);
  std::map<int, int> kinds;  // base level -> count of triangles containing o
  for (const auto& cell : cx.cells[1]) {
    const auto ms = cell.members();
    if (std::find(ms.begin(), ms.end(), o) != ms.end()) ++kinds[cell.base_level()];
  }
  CHECK(kinds[-1] == 12);  // d(d-1)(d-2)/2 * q^2
  CHECK(kinds[-2] == 6);   // d(d-1)(d-2)/2 * q
  // each geometric triangle reads as two relator words
  const auto relators = relator_check(AffineGroup(CoefficientRing::integers_mod(2, {0, 1})));
  CHECK(relators.triangle_relators == 2u * static_cast<std::size_t>(kinds[-1] + kinds[-2]));
}

TEST_CASE("four trees: three kinds of solid cells") {
  const DLParams p{{2, 2, 2, 2}};
  std::vector<std::vector<TreeVertex>> region;
  for (int i = 0; i < 4; ++i) region.push_back(tree_patch(TreeVertex{-1, {}}, 2, 2));
  const CellComplex cx = cells_in_region(p, region);
  std::map<int, std::set<std::size_t>> sizes_by_level;
  for (const auto& cell : cx.cells[2]) sizes_by_level[cell.base_level()].insert(cell.members().size());
  CHECK(sizes_by_level.size() == 3);
  CHECK(sizes_by_level[-1] == std::set<std::size_t>{4});  // tetrahedron
  CHECK(sizes_by_level[-2] == std::set<std::size_t>{6});  // octahedron
  CHECK(sizes_by_level[-3] == std::set<std::size_t>{4});  // tetrahedron
}

TEST_CASE("faces of a cell are cells of one dimension less") {
  const DLParams p{{2, 2, 2}};
  const CellComplex cx = octahedron_complex(p, standard_octahedron(p, 2));
  std::set<std::string> edge_keys;
  for (const auto& e : cx.cells[0]) edge_keys.insert(e.key());
  for (const auto& tri : cx.cells[1]) {
    const auto fs = faces(tri);
    CHECK(fs.size() == 3);
    for (const auto& f : fs) {
      CHECK(f.dimension() == 1);
      CHECK(edge_keys.count(f.key()) == 1);
    }
  }
}

TEST_CASE("unit octahedra: counts and sphere characteristic") {
  const DLParams p3{{2, 2, 2}};
  const CellComplex oct3 = octahedron_complex(p3, standard_octahedron(p3, 1));
  CHECK(oct3.vertices.size() == 6);
  CHECK(oct3.count(1) == 12);
  CHECK(oct3.count(2) == 8);
  CHECK(oct3.euler_characteristic() == 2);

  const DLParams p2{{2, 2}};
  const CellComplex oct2 = octahedron_complex(p2, standard_octahedron(p2, 1));
  CHECK(oct2.vertices.size() == 4);
  CHECK(oct2.count(1) == 4);
  CHECK(oct2.euler_characteristic() == 0);

  const DLParams p4{{2, 2, 2, 2}};
  const CellComplex oct4 = octahedron_complex(p4, standard_octahedron(p4, 1));
  CHECK(oct4.vertices.size() == 8);
  CHECK(oct4.count(3) == 16);
  CHECK(oct4.euler_characteristic() == 0);
}

TEST_CASE("sphere characteristic for all radii up to three") {
  for (int d : {2, 3, 4}) {
    const DLParams p{std::vector<int>(static_cast<std::size_t>(d), 2)};
    for (int radius = 1; radius <= 3; ++radius) {
      const CellComplex oct = octahedron_complex(p, standard_octahedron(p, radius));
      CHECK(oct.euler_characteristic() == (d % 2 == 0 ? 0 : 2));
    }
  }
  // mixed branching numbers carry the same topology
  const DLParams pm{{2, 3, 2}};
  const CellComplex oct = octahedron_complex(pm, standard_octahedron(pm, 2));
  CHECK(oct.euler_characteristic() == 2);
}

TEST_CASE("radius-2 faces subdivide into unit triangles") {
  const DLParams p{{2, 2, 2}};
  const CellComplex oct = octahedron_complex(p, standard_octahedron(p, 2));
  CHECK(oct.count(2) == 32);  // 2^d faces, each split into radius^2 triangles
  CHECK(oct.euler_characteristic() == 2);
}

TEST_CASE("basic octahedra and branch words") {
  const DLParams p{{2, 2, 2}};
  CHECK(is_basic_octahedron(p, standard_octahedron(p, 1)));
  CHECK(is_basic_octahedron(p, standard_octahedron(p, 3)));

  // swap which branch goes first: 1 -> 0 is not an increase by one
  OctahedronSpec swapped = standard_octahedron(p, 2);
  std::swap(swapped.tip, swapped.tip2);
  CHECK(!is_basic_octahedron(p, swapped));

  // first labels differing by more than one: a valid, non-basic octahedron
  const DLParams p3{{3, 3, 3}};
  OctahedronSpec wide = standard_octahedron(p3, 2);
  wide.tip2[0] = successor(successor(TreeVertex{-2, {}}, 2, 3), 0, 3);
  CHECK(!is_basic_octahedron(p3, wide));
  // branches differing only in a later label do not even form an octahedron:
  // their meet lies below the claimed bottom
  OctahedronSpec crooked = standard_octahedron(p, 2);
  crooked.tip2[0] = successor(successor(TreeVertex{-2, {}}, 0, 2), 1, 2);
  CHECK_THROWS_AS(validate_octahedron(p, crooked), std::invalid_argument);

  OctahedronSpec invalid = standard_octahedron(p, 2);
  invalid.tip[0] = invalid.tip2[0];
  CHECK_THROWS_AS(validate_octahedron(p, invalid), std::invalid_argument);
  OctahedronSpec unbalanced = standard_octahedron(p, 2);
  unbalanced.bottom[1] = TreeVertex{1, {1}};
  CHECK_THROWS_AS(validate_octahedron(p, unbalanced), std::invalid_argument);
}
