#include "dlgraph/tree.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace dlg {

Label label_at(const TreeVertex& v, int k) {
  const int lo = v.h - static_cast<int>(v.word.size());
  if (k < lo || k >= v.h) return 0;
  return v.word[static_cast<std::size_t>(k - lo)];
}

TreeVertex canonicalize(TreeVertex v) {
  std::size_t lead = 0;
  while (lead < v.word.size() && v.word[lead] == 0) ++lead;
  if (lead > 0) v.word.erase(v.word.begin(), v.word.begin() + static_cast<long>(lead));
  return v;
}

bool is_canonical(const TreeVertex& v) {
  return v.word.empty() || v.word.front() != 0;
}

TreeVertex predecessor(const TreeVertex& v) {
  TreeVertex r = v;
  r.h -= 1;
  if (!r.word.empty()) r.word.pop_back();
  return canonicalize(std::move(r));
}

TreeVertex successor(const TreeVertex& v, Label label, int q) {
  if (q < 2) throw std::invalid_argument("successor: branching number must be >= 2");
  if (label >= static_cast<Label>(q))
    throw std::invalid_argument("successor: label " + std::to_string(label) +
                                " out of range for q=" + std::to_string(q));
  TreeVertex r = v;
  r.h += 1;
  if (!(r.word.empty() && label == 0)) r.word.push_back(label);
  return r;
}

TreeVertex ancestor_at(const TreeVertex& v, int k) {
  if (k > v.h) throw std::invalid_argument("ancestor_at: requested level below the vertex");
  TreeVertex r;
  r.h = k;
  const int lo = v.h - static_cast<int>(v.word.size());
  if (k > lo)
    r.word.assign(v.word.begin(), v.word.begin() + static_cast<long>(k - lo));
  return canonicalize(std::move(r));
}

bool is_ancestor(const TreeVertex& a, const TreeVertex& v) {
  return a.h <= v.h && ancestor_at(v, a.h) == a;
}

TreeVertex confluent(const TreeVertex& u, const TreeVertex& v) {
  int k = std::min(u.h, v.h);
  while (ancestor_at(u, k) != ancestor_at(v, k)) --k;
  return ancestor_at(u, k);
}

int up_distance(const TreeVertex& u, const TreeVertex& v) {
  return u.h - confluent(u, v).h;
}

int distance(const TreeVertex& u, const TreeVertex& v) {
  const TreeVertex c = confluent(u, v);
  return (u.h - c.h) + (v.h - c.h);
}

BoundaryApproxPoint BoundaryApproxPoint::lower_end(TreeVertex w) {
  if (w.h <= 0)
    throw std::invalid_argument("lower_end: witness must lie strictly below horocycle 0");
  return {Kind::lower, std::move(w)};
}

TreeVertex ray_point(const BoundaryApproxPoint& xi, int k) {
  if (xi.kind == BoundaryApproxPoint::Kind::omega) {
    if (k > 0)
      throw std::invalid_argument("ray_point: the root-end ray has no points below horocycle 0");
    return TreeVertex{k, {}};
  }
  if (k > xi.witness.h)
    throw std::invalid_argument(
        "ray_point: insufficient witness, requested horocycle " + std::to_string(k) +
        " beyond witness depth " + std::to_string(xi.witness.h));
  const TreeVertex c = confluent(tree_origin(), xi.witness);
  // Descending side wherever it is available; this picks the point furthest
  // from the origin when the geodesic crosses horocycle k twice.
  if (k > c.h) return ancestor_at(xi.witness, k);
  return TreeVertex{k, {}};
}

TreeVertex coarsen(const TreeVertex& v, int s, int q) {
  if (s < 1) throw std::invalid_argument("coarsen: s must be >= 1");
  if (q < 2) throw std::invalid_argument("coarsen: q must be >= 2");
  if (v.h % s != 0)
    throw std::invalid_argument("coarsen: Busemann value " + std::to_string(v.h) +
                                " not divisible by s=" + std::to_string(s));
  if (s == 1) return v;
  TreeVertex r;
  r.h = v.h / s;
  const int lo = v.h - static_cast<int>(v.word.size());
  if (lo < v.h) {
    // Block m packs the labels at indices [m*s, (m+1)*s), big-endian.
    int m_lo = lo >= 0 ? lo / s : -((-lo + s - 1) / s);
    for (int m = m_lo; m < r.h; ++m) {
      std::uint64_t packed = 0;
      for (int t = s - 1; t >= 0; --t)
        packed = packed * static_cast<std::uint64_t>(q) + label_at(v, m * s + t);
      r.word.push_back(static_cast<Label>(packed));
    }
  }
  return canonicalize(std::move(r));
}

std::string to_string(const TreeVertex& v) {
  std::ostringstream os;
  os << v.h << ':';
  for (std::size_t i = 0; i < v.word.size(); ++i) {
    if (i) os << ',';
    os << v.word[i];
  }
  return os.str();
}

TreeVertex parse_tree_vertex(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("parse_tree_vertex: missing ':' in \"" + text + "\"");
  TreeVertex v;
  {
    const char* b = text.data();
    const char* e = text.data() + colon;
    auto res = std::from_chars(b, e, v.h);
    if (res.ec != std::errc{} || res.ptr != e)
      throw std::invalid_argument("parse_tree_vertex: bad Busemann value in \"" + text + "\"");
  }
  std::size_t pos = colon + 1;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    Label lab = 0;
    auto res = std::from_chars(text.data() + pos, text.data() + next, lab);
    if (res.ec != std::errc{} || res.ptr != text.data() + next)
      throw std::invalid_argument("parse_tree_vertex: bad label in \"" + text + "\"");
    v.word.push_back(lab);
    pos = next + 1;
  }
  if (!is_canonical(v))
    throw std::invalid_argument("parse_tree_vertex: word not trimmed in \"" + text + "\"");
  return v;
}

std::size_t TreeVertexHash::operator()(const TreeVertex& v) const {
  std::uint64_t x = static_cast<std::uint64_t>(static_cast<std::int64_t>(v.h)) * 0x9e3779b97f4a7c15ULL;
  for (Label l : v.word) {
    x ^= l + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
  }
  return static_cast<std::size_t>(x);
}

}  // namespace dlg
