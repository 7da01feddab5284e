#include "dlgraph/spectral_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace dlg {

double norm(const SparseFunction& f) {
  double s = 0.0;
  for (const auto& [v, x] : f) s += x * x;
  return std::sqrt(s);
}

double inner(const SparseFunction& f, const SparseFunction& g) {
  const SparseFunction& small = f.size() <= g.size() ? f : g;
  const SparseFunction& large = f.size() <= g.size() ? g : f;
  double s = 0.0;
  for (const auto& [v, x] : small) {
    auto it = large.find(v);
    if (it != large.end()) s += x * it->second;
  }
  return s;
}

std::vector<int> Polyhedron::hvec() const {
  std::vector<int> h;
  h.reserve(anchors.size());
  for (const auto& a : anchors) h.push_back(a.h);
  return h;
}

int Polyhedron::height() const {
  int s = 0;
  for (const auto& a : anchors) s += a.h;
  return -s;
}

Polyhedron make_polyhedron(const DLParams& params, std::vector<TreeVertex> anchors) {
  params.validate();
  if (static_cast<int>(anchors.size()) != params.dim())
    throw std::invalid_argument("make_polyhedron: one anchor per coordinate required");
  Polyhedron p{std::move(anchors)};
  if (p.height() < 2) throw std::invalid_argument("make_polyhedron: height must be >= 2");
  return p;
}

PhiFunction phi(int q, int l) {
  if (q < 2) throw std::invalid_argument("phi: q must be >= 2");
  if (l < 1 || l > q - 1) throw std::invalid_argument("phi: label index out of range");
  PhiFunction p{q, l, std::vector<double>(static_cast<std::size_t>(q), 0.0)};
  const double denom = std::sqrt(static_cast<double>(q - l) * (q + 1 - l));
  p.values[static_cast<std::size_t>(l - 1)] = (q - l) / denom;
  for (int s = l; s < q; ++s) p.values[static_cast<std::size_t>(s)] = -1.0 / denom;
  return p;
}

bool is_horizontal(const DLParams& params, const SparseFunction& f, double tol) {
  const int d = params.dim();
  for (int j = 0; j < d; ++j) {
    std::unordered_map<std::string, double> slice_sums;
    for (const auto& [v, x] : f) {
      std::ostringstream key;
      for (int i = 0; i < d; ++i)
        if (i != j) key << to_string(v.coords[static_cast<std::size_t>(i)]) << '|';
      slice_sums[key.str()] += x;
    }
    for (const auto& [key, s] : slice_sums)
      if (std::abs(s) > tol) return false;
  }
  return true;
}

std::vector<TreeVertex> descendants_at(const TreeVertex& v, int k, int q) {
  if (k < v.h) throw std::invalid_argument("descendants_at: level above the vertex");
  std::vector<TreeVertex> cur{v};
  for (int lvl = v.h; lvl < k; ++lvl) {
    std::vector<TreeVertex> next;
    next.reserve(cur.size() * static_cast<std::size_t>(q));
    for (const auto& x : cur)
      for (Label l = 0; l < static_cast<Label>(q); ++l) next.push_back(successor(x, l, q));
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end(),
            [](const TreeVertex& a, const TreeVertex& b) { return to_string(a) < to_string(b); });
  return cur;
}

SparseFunction dense_approx(const DLParams& params, int n) {
  if (n < 1) throw std::invalid_argument("dense_approx: n must be >= 1");
  const int d = params.dim();
  // Per coordinate: value 1 at the origin, -q^{-n} on the horocycle-0
  // descendants of an off-axis anchor at depth n.
  std::vector<std::vector<std::pair<TreeVertex, double>>> factors;
  for (int j = 0; j < d; ++j) {
    const int q = params.qs[static_cast<std::size_t>(j)];
    std::vector<std::pair<TreeVertex, double>> f{{tree_origin(), 1.0}};
    const TreeVertex b{-n, {1}};  // not an ancestor of the origin
    const double mass = -std::pow(static_cast<double>(q), -n);
    for (const auto& x : descendants_at(b, 0, q)) f.emplace_back(x, mass);
    factors.push_back(std::move(f));
  }
  SparseFunction out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    DLVertex v;
    double val = 1.0;
    for (int j = 0; j < d; ++j) {
      const auto& [tv, x] = factors[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
      v.coords.push_back(tv);
      val *= x;
    }
    out.emplace(std::move(v), val);
    int j = 0;
    for (; j < d; ++j) {
      if (++idx[static_cast<std::size_t>(j)] < factors[static_cast<std::size_t>(j)].size()) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
    if (j == d) break;
  }
  return out;
}

std::unordered_map<TreeVertex, double, TreeVertexHash> level_function(
    int q, const TreeVertex& anchor, const PhiFunction& ph, int k) {
  if (ph.q != q) throw std::invalid_argument("level_function: phi built for a different alphabet");
  std::unordered_map<TreeVertex, double, TreeVertexHash> out;
  if (k <= anchor.h) return out;
  const double scale = std::pow(static_cast<double>(q), 0.5 * (anchor.h - k + 1));
  for (Label l = 0; l < static_cast<Label>(q); ++l) {
    const double val = ph.values[l] * scale;
    if (val == 0.0) continue;
    for (auto& x : descendants_at(successor(anchor, l, q), k, q)) out.emplace(std::move(x), val);
  }
  return out;
}

BasisFunction g_eigenfunction(const DLParams& params, const Polyhedron& poly,
                              const DirichletEig& eig, int pair_index,
                              const std::vector<int>& labels) {
  const int d = params.dim();
  const int h = poly.height();
  if (eig.domain.d != d || eig.domain.h != h)
    throw std::invalid_argument("g_eigenfunction: eigensystem shape does not match the polyhedron");
  if (pair_index < 0 || pair_index >= static_cast<int>(eig.pairs.size()))
    throw std::invalid_argument("g_eigenfunction: eigenpair index out of range");
  if (static_cast<int>(labels.size()) != d)
    throw std::invalid_argument("g_eigenfunction: one label per coordinate required");

  std::vector<PhiFunction> phis;
  for (int j = 0; j < d; ++j)
    phis.push_back(phi(params.qs[static_cast<std::size_t>(j)], labels[static_cast<std::size_t>(j)]));

  // Per coordinate, cache the level functions f^j_K for the levels that the
  // interior of B_h maps onto.
  std::vector<std::map<int, std::unordered_map<TreeVertex, double, TreeVertexHash>>> cache(
      static_cast<std::size_t>(d));
  const std::vector<int> hv = poly.hvec();

  const SpectralPair& pair = eig.pairs[static_cast<std::size_t>(pair_index)];
  BasisFunction out;
  out.eigenvalue = pair.eigenvalue;
  out.polyhedron = poly;
  out.m = eig.domain.points[static_cast<std::size_t>(
      eig.domain.interior_indices[static_cast<std::size_t>(pair_index)])];
  out.labels = labels;

  for (std::size_t r = 0; r < eig.domain.interior_indices.size(); ++r) {
    const double coeff = pair.eigenvector[r];
    if (coeff == 0.0) continue;
    const LatticePoint& k =
        eig.domain.points[static_cast<std::size_t>(eig.domain.interior_indices[r])];
    // Level inside the polyhedron: K = k + hvec + h e_d.
    std::vector<int> level(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      level[static_cast<std::size_t>(j)] =
          k.k[static_cast<std::size_t>(j)] + hv[static_cast<std::size_t>(j)] + (j == d - 1 ? h : 0);
    }
    std::vector<const std::unordered_map<TreeVertex, double, TreeVertexHash>*> factor(
        static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      auto& slot = cache[static_cast<std::size_t>(j)];
      auto it = slot.find(level[static_cast<std::size_t>(j)]);
      if (it == slot.end())
        it = slot
                 .emplace(level[static_cast<std::size_t>(j)],
                          level_function(params.qs[static_cast<std::size_t>(j)],
                                         poly.anchors[static_cast<std::size_t>(j)],
                                         phis[static_cast<std::size_t>(j)],
                                         level[static_cast<std::size_t>(j)]))
                 .first;
      factor[static_cast<std::size_t>(j)] = &it->second;
    }
    // Tensor over the level sets.
    std::vector<std::unordered_map<TreeVertex, double, TreeVertexHash>::const_iterator> its;
    its.reserve(static_cast<std::size_t>(d));
    bool empty = false;
    for (int j = 0; j < d; ++j) {
      if (factor[static_cast<std::size_t>(j)]->empty()) {
        empty = true;
        break;
      }
      its.push_back(factor[static_cast<std::size_t>(j)]->begin());
    }
    if (empty) continue;
    while (true) {
      DLVertex v;
      double val = coeff;
      for (int j = 0; j < d; ++j) {
        v.coords.push_back(its[static_cast<std::size_t>(j)]->first);
        val *= its[static_cast<std::size_t>(j)]->second;
      }
      out.values[std::move(v)] += val;
      int j = 0;
      for (; j < d; ++j) {
        if (++its[static_cast<std::size_t>(j)] != factor[static_cast<std::size_t>(j)]->end()) break;
        its[static_cast<std::size_t>(j)] = factor[static_cast<std::size_t>(j)]->begin();
      }
      if (j == d) break;
    }
  }
  return out;
}

SparseFunction apply_P(const DLParams& params, const SparseFunction& f) {
  const double D = params.degree();
  SparseFunction out;
  out.reserve(f.size() * static_cast<std::size_t>(params.degree()));
  for (const auto& [x, val] : f) {
    const double share = val / D;
    for (auto& y : neighbors(params, x)) out[std::move(y)] += share;
  }
  return out;
}

namespace {

void enumerate_anchor_tuples(const DLParams& params, const Polyhedron& poly, int budget,
                             std::size_t coord, std::vector<TreeVertex>& cur,
                             std::vector<std::vector<TreeVertex>>& out, std::size_t cap) {
  const std::size_t d = static_cast<std::size_t>(params.dim());
  if (coord == d) {
    out.push_back(cur);
    if (out.size() > cap)
      throw cap_exceeded("basis_for_polyhedron: sub-polyhedron count exceeds cap");
    return;
  }
  const int q = params.qs[coord];
  for (int depth = 0; depth <= budget; ++depth)
    for (const auto& a : descendants_at(poly.anchors[coord], poly.anchors[coord].h + depth, q)) {
      cur[coord] = a;
      enumerate_anchor_tuples(params, poly, budget - depth, coord + 1, cur, out, cap);
    }
}

}  // namespace

std::vector<BasisFunction> basis_for_polyhedron(const DLParams& params, const Polyhedron& poly,
                                                std::size_t cap) {
  const int d = params.dim();
  const int h = poly.height();

  std::vector<std::vector<TreeVertex>> tuples;
  std::vector<TreeVertex> cur(static_cast<std::size_t>(d));
  enumerate_anchor_tuples(params, poly, h - 2, 0, cur, tuples, cap);
  std::sort(tuples.begin(), tuples.end(),
            [](const std::vector<TreeVertex>& a, const std::vector<TreeVertex>& b) {
              std::string ka, kb;
              for (const auto& v : a) ka += to_string(v) + '|';
              for (const auto& v : b) kb += to_string(v) + '|';
              return ka < kb;
            });

  std::map<int, DirichletEig> eigs;
  std::vector<BasisFunction> out;
  for (const auto& anchors : tuples) {
    Polyhedron sub{anchors};
    const int sub_h = sub.height();
    auto it = eigs.find(sub_h);
    if (it == eigs.end()) it = eigs.emplace(sub_h, eig_dirichlet(params.qs, sub_h)).first;
    const DirichletEig& eig = it->second;
    for (int pair = 0; pair < static_cast<int>(eig.pairs.size()); ++pair) {
      std::vector<int> labels(static_cast<std::size_t>(d), 1);
      while (true) {
        out.push_back(g_eigenfunction(params, sub, eig, pair, labels));
        if (out.size() > cap) throw cap_exceeded("basis_for_polyhedron: basis size exceeds cap");
        int j = 0;
        for (; j < d; ++j) {
          if (++labels[static_cast<std::size_t>(j)] <= params.qs[static_cast<std::size_t>(j)] - 1)
            break;
          labels[static_cast<std::size_t>(j)] = 1;
        }
        if (j == d) break;
      }
    }
  }
  return out;
}

PlancherelSet plancherel_atoms(const std::vector<int>& qs, int hmax) {
  const int d = static_cast<int>(qs.size());
  if (d < 2) throw std::invalid_argument("plancherel_atoms: need at least two trees");
  if (hmax < 2) throw std::invalid_argument("plancherel_atoms: need hmax >= 2");
  PlancherelSet set;
  long double total = 0.0L;
  std::vector<int> r(static_cast<std::size_t>(d), 1);
  for (int h = d; h <= hmax; ++h) {
    // compositions of h into d parts >= 1, lexicographic
    std::vector<std::vector<int>> comps;
    std::vector<int> comp(static_cast<std::size_t>(d));
    std::function<void(int, int)> rec = [&](int pos, int rest) {
      if (pos == d - 1) {
        comp[static_cast<std::size_t>(pos)] = rest;
        comps.push_back(comp);
        return;
      }
      for (int v = 1; v <= rest - (d - 1 - pos); ++v) {
        comp[static_cast<std::size_t>(pos)] = v;
        rec(pos + 1, rest - v);
      }
    };
    rec(0, h);
    for (auto& c : comps) {
      PlancherelAtom atom;
      atom.r = c;
      atom.h = h;
      long double w = 1.0L;
      for (int j = 0; j < d; ++j)
        w *= (qs[static_cast<std::size_t>(j)] - 1) *
             std::pow(static_cast<long double>(qs[static_cast<std::size_t>(j)]),
                      static_cast<long double>(-c[static_cast<std::size_t>(j)]));
      atom.weight = static_cast<double>(w);
      total += w;
      atom.k.k.assign(c.begin(), c.end());
      atom.k.k[static_cast<std::size_t>(d - 1)] -= h;
      set.atoms.push_back(std::move(atom));
    }
  }
  set.tail_mass = static_cast<double>(1.0L - total);
  return set;
}

namespace {

// Sparse interior operator: per row the (column, weight) pairs.
struct SparseDirichlet {
  SimplexDomain domain;
  std::vector<int> interior_pos;  // domain point index -> interior row
  std::vector<std::vector<std::pair<int, double>>> rows;
};

SparseDirichlet sparse_dirichlet(const std::vector<int>& qs, int h) {
  const int d = static_cast<int>(qs.size());
  SparseDirichlet s;
  s.domain = simplex_domain(d, h);
  const double D = DLParams{qs}.degree();
  const int n = static_cast<int>(s.domain.interior_size());
  s.interior_pos.assign(s.domain.size(), -1);
  for (int r = 0; r < n; ++r)
    s.interior_pos[static_cast<std::size_t>(s.domain.interior_indices[static_cast<std::size_t>(r)])] = r;
  s.rows.resize(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    const LatticePoint& k =
        s.domain.points[static_cast<std::size_t>(s.domain.interior_indices[static_cast<std::size_t>(r)])];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        std::vector<int> target = k.k;
        target[static_cast<std::size_t>(i)] += 1;
        target[static_cast<std::size_t>(j)] -= 1;
        auto it = s.domain.lookup.find(target);
        if (it == s.domain.lookup.end()) continue;
        const int pos = s.interior_pos[static_cast<std::size_t>(it->second)];
        if (pos < 0) continue;
        s.rows[static_cast<std::size_t>(r)].emplace_back(
            pos, std::sqrt(static_cast<double>(qs[static_cast<std::size_t>(i)]) *
                           static_cast<double>(qs[static_cast<std::size_t>(j)])) /
                     D);
      }
  }
  return s;
}

}  // namespace

std::vector<ReturnProbability> return_probabilities(const std::vector<int>& qs, int nmax,
                                                    int hmax) {
  if (nmax < 0) throw std::invalid_argument("return_probabilities: need nmax >= 0");
  const PlancherelSet set = plancherel_atoms(qs, hmax);
  std::vector<ReturnProbability> out(static_cast<std::size_t>(nmax) + 1);

  // The diagonal heat-kernel entries (Q_h^n)_{kk} come from exact sparse
  // powers applied to unit vectors, one per atom point.
  int current_h = -1;
  SparseDirichlet op;
  std::vector<double> vec, next;
  for (const auto& atom : set.atoms) {
    if (atom.h != current_h) {
      current_h = atom.h;
      op = sparse_dirichlet(qs, current_h);
    }
    const int idx = op.domain.index_of(atom.k);
    const int col = idx < 0 ? -1 : op.interior_pos[static_cast<std::size_t>(idx)];
    if (col < 0) throw std::runtime_error("return_probabilities: atom point is not interior");
    const std::size_t n_rows = op.rows.size();
    vec.assign(n_rows, 0.0);
    vec[static_cast<std::size_t>(col)] = 1.0;
    out[0].value += atom.weight;
    for (int n = 1; n <= nmax; ++n) {
      next.assign(n_rows, 0.0);
      for (std::size_t r = 0; r < n_rows; ++r) {
        double acc = 0.0;
        for (const auto& [c, w] : op.rows[r]) acc += w * vec[static_cast<std::size_t>(c)];
        next[r] = acc;
      }
      vec.swap(next);
      out[static_cast<std::size_t>(n)].value += atom.weight * vec[static_cast<std::size_t>(col)];
    }
  }
  const SpectrumInterval interval = spec_interval(qs);
  const double decay = std::max(1.0, std::abs(interval.rho_prime));
  double bound = set.tail_mass;
  for (int n = 0; n <= nmax; ++n) {
    out[static_cast<std::size_t>(n)].tail_bound = bound;
    bound *= decay;
  }
  return out;
}

ReturnProbability return_probability(const std::vector<int>& qs, int n, int hmax) {
  return return_probabilities(qs, n, hmax)[static_cast<std::size_t>(n)];
}

std::vector<double> exact_return_probabilities(const DLParams& params, int nmax,
                                               std::size_t cap) {
  if (nmax < 0) throw std::invalid_argument("exact_return_probabilities: need nmax >= 0");
  const int half = (nmax + 1) / 2;
  const BallGraph g = ball(params, dl_origin(params), half + 1, cap);
  const double D = params.degree();
  const int n_vertices = static_cast<int>(g.size());

  std::vector<std::vector<double>> powers;
  std::vector<double> cur(static_cast<std::size_t>(n_vertices), 0.0);
  cur[static_cast<std::size_t>(g.index_of(dl_origin(params)))] = 1.0;
  powers.push_back(cur);
  for (int m = 1; m <= half; ++m) {
    std::vector<double> next(static_cast<std::size_t>(n_vertices), 0.0);
    for (int i = 0; i < n_vertices; ++i) {
      const double share = cur[static_cast<std::size_t>(i)] / D;
      if (share == 0.0) continue;
      for (int j : g.adjacency[static_cast<std::size_t>(i)])
        next[static_cast<std::size_t>(j)] += share;
    }
    cur = std::move(next);
    powers.push_back(cur);
  }

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    const int a = n / 2, b = n - n / 2;
    double s = 0.0;
    const auto& va = powers[static_cast<std::size_t>(a)];
    const auto& vb = powers[static_cast<std::size_t>(b)];
    for (int i = 0; i < n_vertices; ++i)
      s += va[static_cast<std::size_t>(i)] * vb[static_cast<std::size_t>(i)];
    out.push_back(s);
  }
  return out;
}

}  // namespace dlg
