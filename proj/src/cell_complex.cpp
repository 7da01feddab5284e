#include "dlgraph/cell_complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dlg {

int Cell::dimension() const {
  int total = 0;
  for (const auto& s : sets) total += static_cast<int>(s.size());
  return total - static_cast<int>(sets.size()) - 1;
}

int Cell::base_level() const {
  int b = 0;
  for (const auto& s : sets) b += s.front().h;
  return b;
}

std::vector<DLVertex> Cell::members() const {
  std::vector<int> doubled;
  for (int i = 0; i < static_cast<int>(sets.size()); ++i)
    if (sets[static_cast<std::size_t>(i)].size() == 2) doubled.push_back(i);
  const int c = -base_level();  // how many coordinates take the upper choice
  std::vector<DLVertex> out;
  if (c < 0 || c > static_cast<int>(doubled.size())) return out;

  std::vector<int> choose(doubled.size(), 0);
  std::fill(choose.begin(), choose.begin() + c, 1);
  std::sort(choose.begin(), choose.end());
  // iterate subsets of size c via permutations of the indicator
  do {
    DLVertex v;
    v.coords.reserve(sets.size());
    std::size_t di = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].size() == 2) {
        v.coords.push_back(sets[i][static_cast<std::size_t>(choose[di])]);
        ++di;
      } else {
        v.coords.push_back(sets[i].front());
      }
    }
    out.push_back(std::move(v));
  } while (std::next_permutation(choose.begin(), choose.end()));
  return out;
}

std::string Cell::key() const {
  std::vector<std::string> names;
  for (const auto& m : members()) names.push_back(to_string(m));
  std::sort(names.begin(), names.end());
  std::ostringstream os;
  for (const auto& n : names) os << n << ';';
  return os.str();
}

std::vector<Cell> faces(const Cell& cell) {
  std::vector<Cell> out;
  for (std::size_t j = 0; j < cell.sets.size(); ++j) {
    if (cell.sets[j].size() != 2) continue;
    for (const auto& pick : cell.sets[j]) {
      Cell face = cell;
      face.sets[j] = {pick};
      if (face.members().size() >= 2) out.push_back(std::move(face));
    }
  }
  return out;
}

std::size_t CellComplex::count(int dim) const {
  if (dim == 0) return vertices.size();
  if (dim < 1 || dim > static_cast<int>(cells.size())) return 0;
  return cells[static_cast<std::size_t>(dim - 1)].size();
}

long CellComplex::euler_characteristic() const {
  long chi = static_cast<long>(vertices.size());
  long sign = -1;
  for (const auto& level : cells) {
    chi += sign * static_cast<long>(level.size());
    sign = -sign;
  }
  return chi;
}

CellComplex cells_in_region(const DLParams& params,
                            const std::vector<std::vector<TreeVertex>>& region,
                            std::size_t cap) {
  params.validate();
  const int d = params.dim();
  if (static_cast<int>(region.size()) != d)
    throw std::invalid_argument("cells_in_region: one vertex set per coordinate required");

  // per-coordinate candidates: singletons and in-region tree edges
  std::vector<std::vector<std::vector<TreeVertex>>> options(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    std::set<std::string> present;
    std::vector<TreeVertex> verts;
    for (const auto& v : region[static_cast<std::size_t>(i)])
      if (present.insert(to_string(v)).second) verts.push_back(v);
    for (const auto& v : verts) options[static_cast<std::size_t>(i)].push_back({v});
    for (const auto& v : verts)
      for (Label l = 0; l < static_cast<Label>(params.qs[static_cast<std::size_t>(i)]); ++l) {
        TreeVertex up = successor(v, l, params.qs[static_cast<std::size_t>(i)]);
        if (present.count(to_string(up)))
          options[static_cast<std::size_t>(i)].push_back({v, std::move(up)});
      }
  }

  CellComplex out;
  out.params = params;
  out.cells.assign(static_cast<std::size_t>(d - 1), {});
  std::set<std::string> seen_cells;
  std::set<std::string> seen_vertices;

  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::size_t visited = 0;
  while (true) {
    if (++visited > cap) throw cap_exceeded("cells_in_region: tuple enumeration exceeds cap");
    Cell cell;
    cell.sets.reserve(static_cast<std::size_t>(d));
    int doubled = 0;
    for (int i = 0; i < d; ++i) {
      const auto& choice = options[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
      doubled += choice.size() == 2 ? 1 : 0;
      cell.sets.push_back(choice);
    }
    if (doubled == 0) {
      if (cell.base_level() == 0) {
        DLVertex v;
        for (const auto& s : cell.sets) v.coords.push_back(s.front());
        if (seen_vertices.insert(to_string(v)).second) out.vertices.push_back(std::move(v));
      }
    } else if (doubled >= 2) {
      const int c = -cell.base_level();
      if (c >= 1 && c <= doubled - 1 && seen_cells.insert(cell.key()).second)
        out.cells[static_cast<std::size_t>(cell.dimension() - 1)].push_back(std::move(cell));
    }
    int i = 0;
    for (; i < d; ++i) {
      if (++idx[static_cast<std::size_t>(i)] < options[static_cast<std::size_t>(i)].size()) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
    if (i == d) break;
  }
  std::sort(out.vertices.begin(), out.vertices.end(),
            [](const DLVertex& a, const DLVertex& b) { return to_string(a) < to_string(b); });
  return out;
}

void validate_octahedron(const DLParams& params, const OctahedronSpec& spec) {
  const int d = params.dim();
  if (static_cast<int>(spec.bottom.size()) != d || static_cast<int>(spec.tip.size()) != d ||
      static_cast<int>(spec.tip2.size()) != d)
    throw std::invalid_argument("octahedron: one branch pair per coordinate required");
  if (spec.radius < 1) throw std::invalid_argument("octahedron: radius must be >= 1");
  int level_sum = 0;
  for (int i = 0; i < d; ++i) {
    const TreeVertex& b = spec.bottom[static_cast<std::size_t>(i)];
    const TreeVertex& t = spec.tip[static_cast<std::size_t>(i)];
    const TreeVertex& t2 = spec.tip2[static_cast<std::size_t>(i)];
    level_sum += b.h;
    if (t.h != b.h + spec.radius || t2.h != b.h + spec.radius)
      throw std::invalid_argument("octahedron: tips must sit radius levels below the bottom");
    if (confluent(t, t2) != b)
      throw std::invalid_argument("octahedron: bottom must be the meet of the two tips");
  }
  if (level_sum != -spec.radius)
    throw std::invalid_argument("octahedron: bottom levels must sum to -radius");
}

CellComplex octahedron_complex(const DLParams& params, const OctahedronSpec& spec,
                               std::size_t cap) {
  validate_octahedron(params, spec);
  const int d = params.dim();
  std::vector<std::vector<TreeVertex>> region(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    // the path from tip to tip2 through the bottom
    TreeVertex cur = spec.tip[static_cast<std::size_t>(i)];
    while (true) {
      region[static_cast<std::size_t>(i)].push_back(cur);
      if (cur == spec.bottom[static_cast<std::size_t>(i)]) break;
      cur = predecessor(cur);
    }
    cur = spec.tip2[static_cast<std::size_t>(i)];
    while (cur != spec.bottom[static_cast<std::size_t>(i)]) {
      region[static_cast<std::size_t>(i)].push_back(cur);
      cur = predecessor(cur);
    }
  }
  return cells_in_region(params, region, cap);
}

bool is_basic_octahedron(const DLParams& params, const OctahedronSpec& spec) {
  validate_octahedron(params, spec);
  for (std::size_t i = 0; i < spec.bottom.size(); ++i) {
    const int base = spec.bottom[i].h;
    const Label first = label_at(spec.tip[i], base);
    const Label first2 = label_at(spec.tip2[i], base);
    if (first2 != first + 1) return false;
    for (int r = 1; r < spec.radius; ++r)
      if (label_at(spec.tip[i], base + r) != label_at(spec.tip2[i], base + r)) return false;
  }
  return true;
}

OctahedronSpec standard_octahedron(const DLParams& params, int radius) {
  params.validate();
  if (radius < 1) throw std::invalid_argument("standard_octahedron: radius must be >= 1");
  const int d = params.dim();
  OctahedronSpec spec;
  spec.radius = radius;
  for (int i = 0; i < d; ++i) {
    const int q = params.qs[static_cast<std::size_t>(i)];
    TreeVertex b{i == 0 ? -radius : 0, {}};
    TreeVertex t = b, t2 = successor(b, 1, q);
    for (int r = 0; r < radius; ++r) t = successor(t, 0, q);
    for (int r = 1; r < radius; ++r) t2 = successor(t2, 0, q);
    spec.bottom.push_back(std::move(b));
    spec.tip.push_back(std::move(t));
    spec.tip2.push_back(std::move(t2));
  }
  return spec;
}

}  // namespace dlg
