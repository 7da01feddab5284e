#include "dlgraph/cayley.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace dlg {

std::size_t AffineElementHash::operator()(const AffineElement& g) const {
  std::uint64_t h = LaurentHash{}(g.b);
  for (int e : g.k) h = (h ^ (static_cast<std::uint64_t>(e) + 0x9e3779b97f4a7c15ULL)) * 0x100000001b3ULL;
  return static_cast<std::size_t>(h);
}

AffineGroup::AffineGroup(CoefficientRing ring) : laurent_(std::move(ring)) {}

DLParams AffineGroup::dl_params() const {
  return DLParams{std::vector<int>(static_cast<std::size_t>(dim()), ring().size())};
}

AffineElement AffineGroup::identity() const {
  return AffineElement{std::vector<int>(static_cast<std::size_t>(laurent_.places()), 0),
                       laurent_.zero()};
}

AffineElement AffineGroup::mul(const AffineElement& a, const AffineElement& b) const {
  AffineElement out;
  out.k.resize(a.k.size());
  for (std::size_t i = 0; i < a.k.size(); ++i) out.k[i] = a.k[i] + b.k[i];
  out.b = laurent_.add(a.b, laurent_.mul(laurent_.monomial(a.k), b.b));
  return out;
}

AffineElement AffineGroup::inverse(const AffineElement& a) const {
  AffineElement out;
  out.k.resize(a.k.size());
  for (std::size_t i = 0; i < a.k.size(); ++i) out.k[i] = -a.k[i];
  out.b = laurent_.neg(laurent_.mul(laurent_.monomial(out.k), a.b));
  return out;
}

AffineElement AffineGroup::generator(int i, int j, RingElem label) const {
  const int d = dim();
  if (i < 0 || j < 0 || i >= d || j >= d || i == j)
    throw std::invalid_argument("generator: need two distinct coordinates");
  AffineElement g = identity();
  if (i < d - 1) g.k[static_cast<std::size_t>(i)] += 1;
  if (j < d - 1) g.k[static_cast<std::size_t>(j)] -= 1;
  // translation label / L_j
  Poly num{label};
  std::vector<int> den(static_cast<std::size_t>(laurent_.places()), 0);
  if (j < d - 1) den[static_cast<std::size_t>(j)] = 1;
  g.b = laurent_.make(std::move(num), std::move(den));
  return g;
}

std::vector<AffineElement> AffineGroup::generating_set() const {
  std::vector<AffineElement> out;
  const int d = dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      for (RingElem label = 0; label < static_cast<RingElem>(ring().size()); ++label)
        out.push_back(generator(i, j, label));
    }
  return out;
}

Decomposition AffineGroup::decompose(const Laurent& b, const std::vector<int>& k) const {
  const int d = dim();
  if (static_cast<int>(k.size()) != d - 1)
    throw std::invalid_argument("decompose: one exponent per finite place required");
  Decomposition dec;
  dec.components.assign(static_cast<std::size_t>(d), laurent_.zero());
  dec.infinity_cutoff = std::accumulate(k.begin(), k.end(), 0);

  const Laurent m = laurent_.monomial(k);
  std::vector<int> neg_k(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) neg_k[i] = -k[i];
  const Laurent scaled = laurent_.mul(laurent_.monomial(neg_k), b);

  // principal parts of b/m at every finite place
  Laurent finite_sum = laurent_.zero();
  for (int i = 0; i < d - 1; ++i) {
    const int order = scaled.den[static_cast<std::size_t>(i)];
    if (order == 0) continue;
    const auto coeffs = laurent_.series_at_place(scaled, i, -order, 0);
    Laurent part = laurent_.zero();
    std::vector<int> expo(static_cast<std::size_t>(d - 1), 0);
    for (int e = -order; e < 0; ++e) {
      const RingElem c = coeffs[static_cast<std::size_t>(e + order)];
      if (c == ring().zero()) continue;
      expo[static_cast<std::size_t>(i)] = e;
      part = laurent_.add(part, laurent_.mul(laurent_.constant(c), laurent_.monomial(expo)));
    }
    dec.components[static_cast<std::size_t>(i)] = laurent_.mul(m, part);
    finite_sum = laurent_.add(finite_sum, part);
  }

  // what remains of b/m must be a plain polynomial
  const Laurent poly_part = laurent_.sub(scaled, finite_sum);
  for (int e : poly_part.den)
    if (e != 0)
      throw std::runtime_error("decompose: principal parts left a non-polynomial remainder");
  dec.components[static_cast<std::size_t>(d - 1)] = laurent_.mul(m, poly_part);

  Laurent audit = laurent_.zero();
  for (const auto& c : dec.components) audit = laurent_.add(audit, c);
  if (audit != b)
    throw std::runtime_error("decompose: components do not sum back to the element");
  return dec;
}

DLVertex AffineGroup::to_vertex(const AffineElement& g) const {
  const int d = dim();
  DLVertex x;
  x.coords.resize(static_cast<std::size_t>(d));
  int cutoff = 0;
  for (int i = 0; i < d - 1; ++i) {
    const int cut = g.k[static_cast<std::size_t>(i)];
    cutoff += cut;
    TreeVertex v;
    v.h = cut;
    const int val = laurent_.valuation(g.b, i);
    if (val < cut) {
      const auto coeffs = laurent_.series_at_place(g.b, i, val, cut);
      v.word.assign(coeffs.begin(), coeffs.end());
    }
    x.coords[static_cast<std::size_t>(i)] = canonicalize(std::move(v));
  }
  {
    // place at infinity: the label at word index m is the coefficient of
    // t^{-(m+1)} in the series of the translation, so high t-exponents
    // come first; the coordinate sits on horocycle -sum(k).
    TreeVertex v;
    v.h = -cutoff;
    if (!g.b.is_zero()) {
      const int top = -laurent_.valuation_at_infinity(g.b);
      if (top >= cutoff) {
        const auto coeffs = laurent_.series_at_infinity(g.b, cutoff, top + 1);
        v.word.assign(coeffs.rbegin(), coeffs.rend());
      }
    }
    x.coords[static_cast<std::size_t>(d - 1)] = canonicalize(std::move(v));
  }
  return x;
}

std::string AffineGroup::to_string(const AffineElement& g) const {
  std::ostringstream os;
  os << "k=(";
  for (std::size_t i = 0; i < g.k.size(); ++i) os << (i ? "," : "") << g.k[i];
  os << ") b=" << laurent_.to_string(g.b);
  return os.str();
}

CayleyBallReport cayley_ball_check(const AffineGroup& group, int radius, std::size_t cap) {
  CayleyBallReport report;
  const auto gens = group.generating_set();

  std::unordered_map<AffineElement, int, AffineElementHash> dist;
  std::deque<AffineElement> queue;
  dist.emplace(group.identity(), 0);
  queue.push_back(group.identity());
  while (!queue.empty()) {
    const AffineElement g = std::move(queue.front());
    queue.pop_front();
    const int dg = dist.at(g);
    if (dg == radius) continue;
    for (const auto& s : gens) {
      AffineElement h = group.mul(g, s);
      if (dist.emplace(h, dg + 1).second) {
        if (dist.size() > cap)
          throw cap_exceeded("cayley_ball_check: group ball exceeds cap");
        queue.push_back(std::move(h));
      }
    }
  }
  report.group_ball = dist.size();

  const DLParams params = group.dl_params();
  const BallGraph graph = ball(params, dl_origin(params), radius, cap);
  report.graph_ball = graph.size();
  if (report.graph_ball != report.group_ball)
    report.mismatches.push_back("ball sizes differ: group " + std::to_string(report.group_ball) +
                                " vs graph " + std::to_string(report.graph_ball));

  std::unordered_map<DLVertex, const AffineElement*, DLVertexHash> image;
  for (const auto& [g, dg] : dist) {
    const DLVertex x = group.to_vertex(g);
    const int idx = graph.index_of(x);
    if (idx < 0) {
      report.mismatches.push_back("image outside graph ball: " + group.to_string(g) + " -> " +
                                  to_string(x));
      continue;
    }
    if (graph.distance[static_cast<std::size_t>(idx)] != dg)
      report.mismatches.push_back("distance mismatch at " + group.to_string(g) + ": group " +
                                  std::to_string(dg) + " vs graph " +
                                  std::to_string(graph.distance[static_cast<std::size_t>(idx)]));
    auto [it, fresh] = image.emplace(x, &g);
    if (!fresh)
      report.mismatches.push_back("two group elements map to " + to_string(x) + ": " +
                                  group.to_string(*it->second) + " and " + group.to_string(g));
  }

  // adjacency preservation: inner vertices must reproduce their full
  // neighbour set through the generators
  for (const auto& [g, dg] : dist) {
    if (dg >= radius) continue;
    const DLVertex x = group.to_vertex(g);
    std::set<std::string> group_side, graph_side;
    for (const auto& s : gens) group_side.insert(to_string(group.to_vertex(group.mul(g, s))));
    for (const auto& y : neighbors(params, x)) graph_side.insert(to_string(y));
    if (group_side != graph_side)
      report.mismatches.push_back("neighbour sets differ at " + group.to_string(g));
    if (report.mismatches.size() > 32) break;
  }

  report.isomorphic = report.mismatches.empty();
  return report;
}

std::vector<AffineElement> group_ball(const AffineGroup& group, int radius, std::size_t cap) {
  const auto gens = group.generating_set();
  std::unordered_map<AffineElement, int, AffineElementHash> dist;
  std::deque<AffineElement> queue;
  dist.emplace(group.identity(), 0);
  queue.push_back(group.identity());
  while (!queue.empty()) {
    const AffineElement g = std::move(queue.front());
    queue.pop_front();
    const int dg = dist.at(g);
    if (dg == radius) continue;
    for (const auto& s : gens) {
      AffineElement h = group.mul(g, s);
      if (dist.emplace(h, dg + 1).second) {
        if (dist.size() > cap) throw cap_exceeded("group_ball: ball exceeds cap");
        queue.push_back(std::move(h));
      }
    }
  }
  std::vector<std::pair<std::string, AffineElement>> keyed;
  keyed.reserve(dist.size());
  for (const auto& [g, dg] : dist) keyed.emplace_back(to_string(group.to_vertex(g)), g);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<AffineElement> out;
  out.reserve(keyed.size());
  for (auto& [key, g] : keyed) out.push_back(std::move(g));
  return out;
}

RelatorReport relator_check(const AffineGroup& group) {
  const int d = group.dim();
  if (d < 3) throw std::invalid_argument("relator_check: the presentation needs d >= 3");
  const CoefficientRing& ring = group.ring();
  const LaurentRing& laurent = group.laurent();
  const int q = ring.size();
  RelatorReport report;

  auto lambda_poly = [&](int i) {
    // L_i = t + l_i for finite places, 1 for the last coordinate
    return i < d - 1 ? laurent.linear(i) : laurent.one();
  };

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      for (RingElem a = 0; a < static_cast<RingElem>(q); ++a) {
        const AffineElement w =
            group.mul(group.generator(i, j, a), group.generator(j, i, ring.neg(a)));
        ++report.inverse_relators;
        if (!(w == group.identity()))
          report.failures.push_back("inverse relator failed: (" + std::to_string(i) + "," +
                                    std::to_string(j) + "," + ring.element_name(a) + ")");
      }
    }

  // first kind: g_{j,i,a} g_{k,j,b} g_{i,k,c} with a + b + c = 0
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int kk = 0; kk < d; ++kk) {
        if (i == j || j == kk || i == kk) continue;
        for (RingElem a = 0; a < static_cast<RingElem>(q); ++a)
          for (RingElem b = 0; b < static_cast<RingElem>(q); ++b) {
            const RingElem c = ring.neg(ring.add(a, b));
            ++report.triangle_relators;
            const AffineElement w =
                group.mul(group.mul(group.generator(j, i, a), group.generator(kk, j, b)),
                          group.generator(i, kk, c));
            if (!(w == group.identity()))
              report.failures.push_back("sum-zero triangle relator failed: (" +
                                        std::to_string(i) + "," + std::to_string(j) + "," +
                                        std::to_string(kk) + ") labels (" + ring.element_name(a) +
                                        "," + ring.element_name(b) + "," + ring.element_name(c) +
                                        ")");
          }
      }

  // second kind: g_{i,j,a} g_{j,k,b} g_{k,i,c} with a L_k + b L_i + c L_j = 0
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int kk = 0; kk < d; ++kk) {
        if (i == j || j == kk || i == kk) continue;
        for (RingElem a = 0; a < static_cast<RingElem>(q); ++a)
          for (RingElem b = 0; b < static_cast<RingElem>(q); ++b)
            for (RingElem c = 0; c < static_cast<RingElem>(q); ++c) {
              // side condition a L_k + b L_i + c L_j = 0
              Laurent side = laurent.mul(laurent.constant(a), lambda_poly(kk));
              side = laurent.add(side, laurent.mul(laurent.constant(b), lambda_poly(i)));
              side = laurent.add(side, laurent.mul(laurent.constant(c), lambda_poly(j)));
              if (!side.is_zero()) continue;
              ++report.triangle_relators;
              const AffineElement w = group.mul(
                  group.mul(group.generator(i, j, a), group.generator(j, kk, b)),
                  group.generator(kk, i, c));
              if (!(w == group.identity()))
                report.failures.push_back(
                    "triangle relator failed: (" + std::to_string(i) + "," + std::to_string(j) +
                    "," + std::to_string(kk) + ") labels (" + ring.element_name(a) + "," +
                    ring.element_name(b) + "," + ring.element_name(c) + ")");
            }
      }

  report.all_identities = report.failures.empty();
  return report;
}

std::vector<RingElem> automaton_transform(const CoefficientRing& ring, int place, RingElem a,
                                          const std::vector<RingElem>& input) {
  const RingElem l = ring.ell(place);
  if (!ring.is_invertible(l))
    throw std::invalid_argument(
        "automaton_transform: the distinguished element must be invertible");
  std::vector<RingElem> out;
  out.reserve(input.size());
  RingElem state = a;
  for (RingElem letter : input) {
    out.push_back(ring.add(ring.mul(l, letter), state));
    state = letter;
  }
  return out;
}

}  // namespace dlg
