#include "dlgraph/lattice_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace dlg {

namespace {

int total_degree(const std::vector<int>& qs) {
  const int d = static_cast<int>(qs.size());
  if (d < 2) throw std::invalid_argument("need at least two branching numbers");
  for (int q : qs)
    if (q < 2) throw std::invalid_argument("branching numbers must be >= 2");
  return (d - 1) * std::accumulate(qs.begin(), qs.end(), 0);
}

void enumerate_rec(int d, int h, int pos, int remaining, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (pos == d - 1) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[static_cast<std::size_t>(pos)] = v;
    enumerate_rec(d, h, pos + 1, remaining - v, cur, out);
  }
}

}  // namespace

int SimplexDomain::index_of(const LatticePoint& p) const {
  auto it = lookup.find(p.k);
  return it == lookup.end() ? -1 : it->second;
}

bool SimplexDomain::is_interior(const LatticePoint& p) const {
  const int idx = index_of(p);
  return idx >= 0 && interior[static_cast<std::size_t>(idx)];
}

SimplexDomain simplex_domain(int d, int h) {
  if (d < 2) throw std::invalid_argument("simplex_domain: need d >= 2");
  if (h < 0) throw std::invalid_argument("simplex_domain: need h >= 0");
  SimplexDomain dom;
  dom.d = d;
  dom.h = h;
  std::vector<std::vector<int>> firsts;
  std::vector<int> cur(static_cast<std::size_t>(d - 1), 0);
  enumerate_rec(d, h, 0, h, cur, firsts);
  std::sort(firsts.begin(), firsts.end());
  for (const auto& f : firsts) {
    LatticePoint p;
    p.k = f;
    const int sum = std::accumulate(f.begin(), f.end(), 0);
    p.k.push_back(-sum);
    bool inner = sum <= h - 1;
    for (int v : f) inner = inner && v >= 1;
    dom.lookup.emplace(p.k, static_cast<int>(dom.points.size()));
    if (inner) dom.interior_indices.push_back(static_cast<int>(dom.points.size()));
    dom.interior.push_back(inner);
    dom.points.push_back(std::move(p));
  }
  return dom;
}

double q_apply(const std::function<double(const LatticePoint&)>& f, const LatticePoint& k,
               const std::vector<int>& qs) {
  const int d = static_cast<int>(qs.size());
  const double D = total_degree(qs);
  if (static_cast<int>(k.k.size()) != d)
    throw std::invalid_argument("q_apply: point dimension mismatch");
  double acc = 0.0;
  LatticePoint shifted = k;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      shifted.k = k.k;
      shifted.k[static_cast<std::size_t>(i)] += 1;
      shifted.k[static_cast<std::size_t>(j)] -= 1;
      acc += std::sqrt(static_cast<double>(qs[static_cast<std::size_t>(i)]) *
                       static_cast<double>(qs[static_cast<std::size_t>(j)])) *
             f(shifted);
    }
  return acc / D;
}

Matrix dirichlet_matrix(const std::vector<int>& qs, int h) {
  const int d = static_cast<int>(qs.size());
  const double D = total_degree(qs);
  if (h < 2) throw std::invalid_argument("dirichlet_matrix: need h >= 2");
  SimplexDomain dom = simplex_domain(d, h);
  const int n = static_cast<int>(dom.interior_size());
  Matrix m(n);
  std::vector<int> interior_pos(dom.size(), -1);
  for (int r = 0; r < n; ++r)
    interior_pos[static_cast<std::size_t>(dom.interior_indices[static_cast<std::size_t>(r)])] = r;
  for (int r = 0; r < n; ++r) {
    const LatticePoint& k = dom.points[static_cast<std::size_t>(dom.interior_indices[static_cast<std::size_t>(r)])];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        std::vector<int> target = k.k;
        target[static_cast<std::size_t>(i)] += 1;
        target[static_cast<std::size_t>(j)] -= 1;
        auto it = dom.lookup.find(target);
        if (it == dom.lookup.end()) continue;
        const int pos = interior_pos[static_cast<std::size_t>(it->second)];
        if (pos < 0) continue;
        m.at(r, pos) = std::sqrt(static_cast<double>(qs[static_cast<std::size_t>(i)]) *
                                 static_cast<double>(qs[static_cast<std::size_t>(j)])) /
                       D;
      }
  }
  return m;
}

std::vector<SpectralPair> eig_sym(const Matrix& m) {
  const int n = m.n;
  if (n == 0) return {};

  double max_abs = 0.0;
  for (double v : m.a) max_abs = std::max(max_abs, std::abs(v));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-12 * std::max(1.0, max_abs))
        throw std::invalid_argument("eig_sym: matrix is not symmetric");

  Matrix a = m;
  std::vector<double> v(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = 1.0;

  double norm = 0.0;
  for (double x : a.a) norm += x * x;
  norm = std::sqrt(norm);

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * a.at(i, j) * a.at(i, j);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= 1e-12 * std::max(norm, 1e-300)) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (apq == 0.0) continue;
        const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = a.at(p, p), aqq = a.at(q, q);
        a.at(p, p) = app - t * apq;
        a.at(q, q) = aqq + t * apq;
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a.at(r, p), arq = a.at(r, q);
          a.at(r, p) = arp - s * (arq + tau * arp);
          a.at(r, q) = arq + s * (arp - tau * arq);
          a.at(p, r) = a.at(r, p);
          a.at(q, r) = a.at(r, q);
        }
        double* vp = v.data() + p;
        double* vq = v.data() + q;
        for (int r = 0; r < n; ++r) {
          const double vrp = vp[static_cast<std::size_t>(r) * static_cast<std::size_t>(n)];
          const double vrq = vq[static_cast<std::size_t>(r) * static_cast<std::size_t>(n)];
          vp[static_cast<std::size_t>(r) * static_cast<std::size_t>(n)] = vrp - s * (vrq + tau * vrp);
          vq[static_cast<std::size_t>(r) * static_cast<std::size_t>(n)] = vrq + s * (vrp - tau * vrq);
        }
      }
  }
  if (sweep == kMaxSweeps) throw std::runtime_error("eig_sym: Jacobi sweeps did not converge");

  std::vector<std::pair<double, int>> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order.emplace_back(a.at(i, i), i);
  std::sort(order.begin(), order.end());

  std::vector<SpectralPair> out(static_cast<std::size_t>(n));
  for (int idx = 0; idx < n; ++idx) {
    const int col = order[static_cast<std::size_t>(idx)].second;
    SpectralPair& pair = out[static_cast<std::size_t>(idx)];
    pair.eigenvalue = order[static_cast<std::size_t>(idx)].first;
    pair.eigenvector.resize(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
      pair.eigenvector[static_cast<std::size_t>(r)] = v[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) + static_cast<std::size_t>(col)];
    for (double x : pair.eigenvector) {
      if (std::abs(x) > 1e-12) {
        if (x < 0)
          for (double& y : pair.eigenvector) y = -y;
        break;
      }
    }
  }
  return out;
}

DirichletEig eig_dirichlet(const std::vector<int>& qs, int h) {
  DirichletEig e;
  e.domain = simplex_domain(static_cast<int>(qs.size()), h);
  e.pairs = eig_sym(dirichlet_matrix(qs, h));
  return e;
}

double lambda_d3(const LatticePoint& m, int h) {
  if (m.k.size() != 3) throw std::invalid_argument("lambda_d3: point must have 3 coordinates");
  if (h < 2) throw std::invalid_argument("lambda_d3: need h >= 2");
  const int m1 = m.k[0], m2 = m.k[1], m3 = m.k[2];
  if (m1 + m2 + m3 != 0) throw std::invalid_argument("lambda_d3: coordinates must sum to 0");
  if (m1 < 1 || m2 < 1 || m3 <= -h)
    throw std::invalid_argument("lambda_d3: point is not interior to the simplex");
  const double w = 2.0 * std::numbers::pi / (3.0 * h);
  return (std::cos(w * (m1 - m2)) + std::cos(w * (m2 - m3)) + std::cos(w * (m3 - m1))) / 3.0;
}

std::complex<double> psi_d3(const LatticePoint& m, int h, const LatticePoint& k) {
  if (m.k.size() != 3 || k.k.size() != 3)
    throw std::invalid_argument("psi_d3: points must have 3 coordinates");
  static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                  {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  static const int signs[6] = {1, 1, 1, -1, -1, -1};
  const double w = 2.0 * std::numbers::pi / (3.0 * h);
  std::complex<double> acc = 0.0;
  for (int p = 0; p < 6; ++p) {
    // (sigma k)_i = k_{sigma^{-1}(i)}; perms[p] stores sigma^{-1}.
    long dot = 0;
    for (int i = 0; i < 3; ++i) dot += static_cast<long>(m.k[static_cast<std::size_t>(i)]) * k.k[static_cast<std::size_t>(perms[p][i])];
    const double phase = signs[p] * w * static_cast<double>(dot);
    acc += static_cast<double>(signs[p]) * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  // The 1/(sqrt(3) h) prefactor makes the family orthonormal over B_h; the
  // alternating sum alone carries squared mass 3h^2 on the interior.
  return acc / (std::sqrt(3.0) * h);
}

namespace {

double symbol_value(const std::vector<int>& qs, const std::vector<double>& t) {
  double re = 0.0, im = 0.0, sumq = 0.0;
  for (std::size_t j = 0; j < qs.size(); ++j) {
    const double r = std::sqrt(static_cast<double>(qs[j]));
    const double tj = j + 1 < qs.size() ? t[j] : 0.0;
    re += r * std::cos(tj);
    im += r * std::sin(tj);
    sumq += qs[j];
  }
  const double D = (static_cast<double>(qs.size()) - 1.0) * sumq;
  return (re * re + im * im - sumq) / D;
}

double minimize_symbol(const std::vector<int>& qs) {
  const std::size_t dim = qs.size() - 1;
  const int grid = dim <= 3 ? 64 : 16;
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> t(dim, 0.0), best_t(dim, 0.0);
  double best = symbol_value(qs, t);
  std::vector<int> idx(dim, 0);
  while (true) {
    for (std::size_t j = 0; j < dim; ++j) t[j] = two_pi * idx[j] / grid;
    const double val = symbol_value(qs, t);
    if (val < best) {
      best = val;
      best_t = t;
    }
    std::size_t j = 0;
    for (; j < dim; ++j) {
      if (++idx[j] < grid) break;
      idx[j] = 0;
    }
    if (j == dim) break;
  }
  double step = two_pi / grid;
  t = best_t;
  while (step > 1e-10) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t j = 0; j < dim; ++j) {
        for (double dir : {-1.0, 1.0}) {
          std::vector<double> cand = t;
          cand[j] += dir * step;
          const double val = symbol_value(qs, cand);
          if (val < best - 1e-16) {
            best = val;
            t = cand;
            improved = true;
          }
        }
      }
    }
    step *= 0.5;
  }
  return best;
}

}  // namespace

SpectrumInterval spec_interval(const std::vector<int>& qs) {
  const int d = static_cast<int>(qs.size());
  const double D = total_degree(qs);
  double rho = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j)
        rho += std::sqrt(static_cast<double>(qs[static_cast<std::size_t>(i)]) *
                         static_cast<double>(qs[static_cast<std::size_t>(j)]));
  rho /= D;

  SpectrumInterval s;
  s.rho = rho;
  if (d == 2) {
    s.rho_prime = -rho;
    return s;
  }
  bool matched = true;
  for (int i = 0; i < d && matched; ++i) {
    bool twin = false;
    for (int j = 0; j < d; ++j) twin = twin || (j != i && qs[static_cast<std::size_t>(j)] == qs[static_cast<std::size_t>(i)]);
    matched = twin;
  }
  if (matched) {
    s.rho_prime = -1.0 / (d - 1);
    return s;
  }
  s.rho_prime = minimize_symbol(qs);
  return s;
}

std::vector<double> spec_union(const std::vector<int>& qs, int hmax, double dedup_tol) {
  if (hmax < 2) throw std::invalid_argument("spec_union: need hmax >= 2");
  std::vector<double> all;
  for (int h = 2; h <= hmax; ++h)
    for (const auto& pair : eig_sym(dirichlet_matrix(qs, h))) all.push_back(pair.eigenvalue);
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double v : all)
    if (out.empty() || v - out.back() > dedup_tol) out.push_back(v);
  return out;
}

}  // namespace dlg
