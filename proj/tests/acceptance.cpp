// Acceptance suite: one self-contained check per shipping criterion, each
// printing a single pass/fail line.  Exits with the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "dlgraph/cayley.hpp"
#include "dlgraph/cell_complex.hpp"
#include "dlgraph/random_walk.hpp"
#include "dlgraph/spectral_basis.hpp"

using namespace dlg;

namespace {

struct Check {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <typename T>
  void equal(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream os;
      os << what << " (got " << got << ", want " << want << ")";
      failures.push_back(os.str());
    }
  }
  void close(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream os;
      os.precision(15);
      os << what << " (got " << got << ", want " << want << " +- " << tol << ")";
      failures.push_back(os.str());
    }
  }
};

// ---------------------------------------------------------------- criterion 1

void degree_and_type_counts(Check& c) {
  for (const DLParams& p : {DLParams{{2, 3}}, DLParams{{2, 2, 2}}, DLParams{{2, 3, 4}}}) {
    const BallGraph g = ball(p, dl_origin(p), 3);
    for (const auto& x : g.vertices) {
      std::set<std::string> uniq;
      for (const auto& y : neighbors(p, x)) uniq.insert(to_string(y));
      c.require(static_cast<int>(uniq.size()) == p.degree(),
                "degree mismatch at " + to_string(x));
      for (int up = 0; up < p.dim(); ++up)
        for (int down = 0; down < p.dim(); ++down) {
          if (up == down) continue;
          const auto typed = neighbors_typed(p, x, MoveType{down, up});
          c.require(static_cast<int>(typed.size()) == p.qs[static_cast<std::size_t>(down)],
                    "typed neighbour count mismatch at " + to_string(x));
        }
    }
  }
}

// ---------------------------------------------------------------- criterion 2

void closed_form_spectrum_d3(Check& c) {
  for (int q : {2, 3})
    for (int h = 2; h <= 8; ++h) {
      const SimplexDomain dom = simplex_domain(3, h);
      std::vector<double> closed;
      for (int idx : dom.interior_indices)
        closed.push_back(lambda_d3(dom.points[static_cast<std::size_t>(idx)], h));
      std::sort(closed.begin(), closed.end());
      const auto pairs = eig_sym(dirichlet_matrix({q, q, q}, h));
      c.require(pairs.size() == closed.size(), "eigenvalue count mismatch");
      for (std::size_t i = 0; i < closed.size(); ++i)
        c.require(std::abs(pairs[i].eigenvalue - closed[i]) <= 1e-9,
                  "eigenvalue off closed form at h=" + std::to_string(h));
    }
  for (int h = 2; h <= 8; ++h) {
    const SimplexDomain dom = simplex_domain(3, h);
    for (int mi : dom.interior_indices) {
      const LatticePoint& m = dom.points[static_cast<std::size_t>(mi)];
      for (std::size_t pidx = 0; pidx < dom.size(); ++pidx)
        if (!dom.interior[pidx])
          c.require(std::abs(psi_d3(m, h, dom.points[pidx])) <= 1e-10,
                    "eigenfunction does not vanish on the boundary");
      for (int mj : dom.interior_indices) {
        std::complex<double> acc = 0.0;
        for (std::size_t pidx = 0; pidx < dom.size(); ++pidx)
          acc += psi_d3(m, h, dom.points[pidx]) *
                 std::conj(psi_d3(dom.points[static_cast<std::size_t>(mj)], h, dom.points[pidx]));
        c.require(std::abs(acc - (mi == mj ? 1.0 : 0.0)) <= 1e-10,
                  "eigenfunction family not orthonormal at h=" + std::to_string(h));
      }
    }
  }
}

// ---------------------------------------------------------------- criterion 3

void spectrum_containment(Check& c) {
  for (int q : {2, 3, 4}) {
    const std::vector<int> qs{q, q, q};
    double prev = -2.0;
    for (int h = 2; h <= 12; ++h) {
      const auto vals = spec_union(qs, h);
      for (double v : vals)
        c.require(v >= -0.5 - 1e-9 && v <= 1.0 + 1e-9, "eigenvalue escapes [-1/2, 1]");
      if (!vals.empty()) {
        c.require(vals.back() >= prev - 1e-12, "maximum eigenvalue not monotone");
        prev = vals.back();
      }
    }
    // exact closed-form gap at h = 12 is (2 - sqrt(3))/3, about 0.0893
    c.close(prev, (1.0 + std::sqrt(3.0)) / 3.0, 1e-9, "top of the h=12 spectrum");
    c.require(1.0 - prev < 0.09, "approach to the spectral radius too slow");
  }
  const auto interval = spec_interval({2, 3});
  const double rho = 2.0 * std::sqrt(6.0) / 5.0;
  c.close(interval.rho, rho, 1e-12, "spectral radius of the (2,3) graph");
  const auto vals = spec_union({2, 3}, 12);
  for (double v : vals)
    c.require(v >= -rho - 1e-9 && v <= rho + 1e-9, "eigenvalue escapes the (2,3) interval");
  c.require(rho - vals.back() <= 0.05, "(2,3) maximum not within 0.05 of the radius");
}

// ---------------------------------------------------------------- criterion 4

TreeVertex random_tree_vertex(std::mt19937_64& rng, int q, int target_h) {
  TreeVertex v{target_h, {}};
  const int len = static_cast<int>(rng() % 4);
  for (int i = 0; i < len; ++i)
    v.word.push_back(static_cast<Label>(rng() % static_cast<unsigned>(q)));
  return canonicalize(std::move(v));
}

void eigenfunctions_on_the_graph(Check& c) {
  {
    const DLParams p{{2, 2, 2}};
    const Polyhedron poly = make_polyhedron(
        p, {TreeVertex{-1, {}}, TreeVertex{-1, {}}, TreeVertex{-1, {}}});
    const DirichletEig eig = eig_dirichlet(p.qs, 3);
    const BasisFunction g = g_eigenfunction(p, poly, eig, 0, {1, 1, 1});
    for (const auto& [v, x] : apply_P(p, g.values))
      c.require(std::abs(x) <= 1e-12, "height-3 kernel vector has nonzero image");
  }
  std::mt19937_64 rng(20260811);
  for (const DLParams& p : {DLParams{{2, 2}}, DLParams{{2, 3, 2}}}) {
    std::vector<BasisFunction> pool;
    std::set<std::string> provenance;
    while (pool.size() < 20) {
      const int d = p.dim();
      const int height = 2 + static_cast<int>(rng() % 3);
      std::vector<int> hv(static_cast<std::size_t>(d), 0);
      for (int j = 0; j + 1 < d; ++j) hv[static_cast<std::size_t>(j)] = -static_cast<int>(rng() % 3);
      int partial = 0;
      for (int j = 0; j + 1 < d; ++j) partial += hv[static_cast<std::size_t>(j)];
      hv[static_cast<std::size_t>(d - 1)] = -height - partial;
      std::vector<TreeVertex> anchors;
      bool ok = true;
      for (int j = 0; j < d; ++j) {
        anchors.push_back(random_tree_vertex(rng, p.qs[static_cast<std::size_t>(j)],
                                             hv[static_cast<std::size_t>(j)]));
        ok = ok && anchors.back().h == hv[static_cast<std::size_t>(j)];
      }
      if (!ok) continue;
      const Polyhedron poly = make_polyhedron(p, std::move(anchors));
      const DirichletEig eig = eig_dirichlet(p.qs, poly.height());
      if (eig.pairs.empty()) continue;
      const int idx = static_cast<int>(rng() % eig.pairs.size());
      std::vector<int> labels;
      for (int j = 0; j < d; ++j)
        labels.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(
                                 p.qs[static_cast<std::size_t>(j)] - 1)));
      std::ostringstream key;
      for (const auto& a : poly.anchors) key << to_string(a) << '|';
      key << idx;
      for (int l : labels) key << ',' << l;
      if (!provenance.insert(key.str()).second) continue;
      pool.push_back(g_eigenfunction(p, poly, eig, idx, labels));
    }
    for (std::size_t a = 0; a < pool.size(); ++a) {
      double res = 0.0;
      const auto pg = apply_P(p, pool[a].values);
      for (const auto& [v, x] : pg) {
        auto it = pool[a].values.find(v);
        const double want = pool[a].eigenvalue * (it == pool[a].values.end() ? 0.0 : it->second);
        res = std::max(res, std::abs(x - want));
      }
      c.require(res <= 1e-10, "eigen-residual too large on a random eigenfunction");
      for (std::size_t b = a; b < pool.size(); ++b)
        c.require(std::abs(inner(pool[a].values, pool[b].values) - (a == b ? 1.0 : 0.0)) <= 1e-9,
                  "random eigenfunctions are not orthonormal");
    }
  }
}

// ---------------------------------------------------------------- criterion 5

void plancherel_and_returns(Check& c) {
  for (const std::vector<int>& qs :
       {std::vector<int>{2, 2}, std::vector<int>{2, 3}, std::vector<int>{2, 2, 2}}) {
    const auto set = plancherel_atoms(qs, 80);
    long double mass = 0.0L;
    for (const auto& a : set.atoms) mass += a.weight;
    c.require(std::abs(static_cast<double>(mass - 1.0L)) <= 1e-12, "atom mass does not reach 1");

    const auto spectral = return_probabilities(qs, 10, 40);
    const auto exact = exact_return_probabilities(DLParams{qs}, 10);
    for (int n = 0; n <= 10; ++n)
      c.require(std::abs(spectral[static_cast<std::size_t>(n)].value -
                         exact[static_cast<std::size_t>(n)]) <=
                    spectral[static_cast<std::size_t>(n)].tail_bound + 1e-8,
                "spectral return probability misses the exact value at n=" + std::to_string(n));
  }
  // pullback of the diagonal spectral measure at ((1,1,-2), 3) for q = 2
  const int q = 2, h = 3;
  long double pullback = 0.0L;
  for (int ell = 1; ell <= 12; ++ell) {
    const SimplexDomain dom = simplex_domain(3, ell * h);
    const LatticePoint m{{ell, ell, -2 * ell}};
    long double mass = 0.0L;
    for (std::size_t pidx = 0; pidx < dom.size(); ++pidx)
      mass += std::norm(psi_d3(m, ell * h, dom.points[pidx]));
    pullback += std::pow(static_cast<long double>(q), -ell * h) * (q - 1) * (q - 1) * (q - 1) * mass;
  }
  c.close(static_cast<double>(pullback), 1.0 / 7.0, 1e-9, "pullback weight at ((1,1,-2),3)");
}

// ---------------------------------------------------------------- criterion 6

void asymptotic_type(Check& c) {
  // closed-form spectral sum for three equal trees
  const int q = 2, hmax = 80;
  std::vector<std::vector<double>> lambdas;  // per height
  std::vector<double> weights;
  for (int h = 2; h <= hmax; ++h) {
    const SimplexDomain dom = simplex_domain(3, h);
    std::vector<double> lams;
    for (int idx : dom.interior_indices)
      lams.push_back(lambda_d3(dom.points[static_cast<std::size_t>(idx)], h));
    lambdas.push_back(std::move(lams));
    weights.push_back((q - 1) * (q - 1) * (q - 1) * std::pow(static_cast<double>(q), -h));
  }
  auto p2n = [&](int n) {
    long double acc = 0.0L;
    for (std::size_t hi = 0; hi < lambdas.size(); ++hi) {
      long double trace = 0.0L;
      for (double lam : lambdas[hi]) trace += std::pow(static_cast<long double>(lam), 2 * n);
      acc += weights[hi] * trace;
    }
    return static_cast<double>(acc);
  };

  // consistency with the generic spectral machinery at small n
  const auto spectral = return_probabilities({2, 2, 2}, 10, 40);
  for (int n = 1; n <= 5; ++n)
    c.require(std::abs(p2n(n) - spectral[static_cast<std::size_t>(2 * n)].value) <= 2e-8,
              "closed-form trace sum disagrees with the spectral machinery");

  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  int count = 0;
  for (int n = 10; n <= 500; ++n) {
    const double x = std::cbrt(static_cast<double>(n));
    const double p = p2n(n);
    c.require(p > 0.0, "return probability vanished");
    const double y = std::log(p);
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
    ++count;
  }
  const double cov = sxy - sx * sy / count;
  const double vx = sxx - sx * sx / count;
  const double vy = syy - sy * sy / count;
  const double corr = cov / std::sqrt(vx * vy);
  c.require(corr <= -0.99, "log p^(2n) vs n^(1/3) correlation is " + std::to_string(corr));
}

// ---------------------------------------------------------------- criterion 7

void cayley_is_the_graph(Check& c) {
  struct Case {
    std::string name;
    CoefficientRing ring;
  };
  const std::vector<Case> cases = {
      {"d=2 Z_2", CoefficientRing::integers_mod(2, {0})},
      {"d=2 Z_3", CoefficientRing::integers_mod(3, {0})},
      {"d=3 Z_2", CoefficientRing::integers_mod(2, {0, 1})},
      {"d=3 Z_6", CoefficientRing::integers_mod(6, {0, 1})},
      {"d=3 F_4", CoefficientRing::field_product_default({FieldSpec{2, 2}}, 3)},
  };
  for (const auto& cs : cases) {
    const AffineGroup group(cs.ring);
    const auto report = cayley_ball_check(group, 3);
    c.require(report.isomorphic, "ball isomorphism fails for " + cs.name);
    c.require(report.group_ball == report.graph_ball, "ball sizes differ for " + cs.name);
  }
}

// ---------------------------------------------------------------- criterion 8

void presentation_relators(Check& c) {
  for (int q : {2, 3, 5}) {
    const AffineGroup group(CoefficientRing::integers_mod(q, {0, 1}));
    const auto report = relator_check(group);
    c.require(report.all_identities, "relator fails for q=" + std::to_string(q));
    c.equal(report.triangle_relators, static_cast<std::size_t>(6 * (q * q + q)),
            "triangle relator count for q=" + std::to_string(q));
    c.equal(report.inverse_relators, static_cast<std::size_t>(6 * q),
            "inverse relator count for q=" + std::to_string(q));
  }
}

// ---------------------------------------------------------------- criterion 9

void decomposition_uniqueness(Check& c) {
  std::mt19937_64 rng(424242);
  for (const auto& ring : {CoefficientRing::integers_mod(2, {0, 1}),
                           CoefficientRing::field_product_default({FieldSpec{2, 2}}, 3)}) {
    const AffineGroup g(ring);
    const LaurentRing& lr = g.laurent();
    for (int trial = 0; trial < 1000; ++trial) {
      Poly num(static_cast<std::size_t>(1 + rng() % 6));
      for (RingElem& x : num)
        x = static_cast<RingElem>(rng() % static_cast<unsigned>(ring.size()));
      std::vector<int> den{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
      const Laurent p = lr.make(std::move(num), std::move(den));
      const std::vector<int> k{static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3};

      const auto dec = g.decompose(p, k);
      Laurent sum = lr.zero();
      for (const auto& comp : dec.components) sum = lr.add(sum, comp);
      c.require(sum == p, "components do not sum to the element");
      for (int i = 0; i < 2; ++i) {
        c.require(lr.valuation(lr.sub(p, dec.components[static_cast<std::size_t>(i)]), i) >=
                      k[static_cast<std::size_t>(i)],
                  "component is not a ball representative at its place");
        for (int j = 0; j < 3; ++j)
          if (j != i)
            c.require(lr.valuation(dec.components[static_cast<std::size_t>(j)], i) >=
                          k[static_cast<std::size_t>(i)],
                      "foreign component visible below the cutoff");
        c.require(lr.valuation_at_infinity(dec.components[static_cast<std::size_t>(i)]) >=
                      1 - dec.infinity_cutoff,
                  "finite component visible at infinity");
      }
      const auto again = g.decompose(p, k);
      c.require(again.components == dec.components, "decomposition is not deterministic");
    }
  }
}

// --------------------------------------------------------------- criterion 10

void octahedron_topology(Check& c) {
  for (int d : {2, 3, 4}) {
    const DLParams p{std::vector<int>(static_cast<std::size_t>(d), 2)};
    for (int radius = 1; radius <= 3; ++radius) {
      const auto cx = octahedron_complex(p, standard_octahedron(p, radius));
      c.equal(cx.euler_characteristic(), static_cast<long>(d % 2 == 0 ? 0 : 2),
              "sphere characteristic for d=" + std::to_string(d) +
                  " R=" + std::to_string(radius));
      if (radius == 1) {
        c.equal(cx.vertices.size(), static_cast<std::size_t>(2 * d), "unit octahedron vertices");
        c.equal(cx.count(d - 1), static_cast<std::size_t>(1) << d, "unit octahedron top cells");
      }
    }
  }
}

// --------------------------------------------------------------- criterion 11

void drift_monte_carlo(Check& c) {
  WalkConfig cfg{DLParams{{2, 3}}, 1000, 10000, 97531, {}, false};
  const DriftReport r = drift(cfg);
  long num_sum = 0;
  for (long n : r.alpha_num) num_sum += n;
  c.equal(num_sum, 0L, "exact drift numerators must cancel");
  c.close(r.alpha[0], -0.2, 1e-15, "closed-form drift of the first coordinate");
  for (int j = 0; j < 2; ++j)
    c.require(std::abs(r.empirical[static_cast<std::size_t>(j)] -
                       r.alpha[static_cast<std::size_t>(j)]) <=
                  3.0 * r.standard_error[static_cast<std::size_t>(j)],
              "empirical drift outside three standard errors");
}

// --------------------------------------------------------------- criterion 12

void coarsening_metric(Check& c) {
  const int q = 2, s = 3;
  std::vector<TreeVertex> frontier{TreeVertex{-3, {}}};
  std::vector<TreeVertex> sample;
  if (frontier.front().h % s == 0) sample.push_back(frontier.front());
  for (int depth = 1; depth <= 6; ++depth) {
    std::vector<TreeVertex> next;
    for (const auto& v : frontier)
      for (Label l = 0; l < static_cast<Label>(q); ++l) next.push_back(successor(v, l, q));
    for (const auto& v : next)
      if (v.h % s == 0) sample.push_back(v);
    frontier = std::move(next);
  }
  c.require(sample.size() == 73, "depth-6 test set has the wrong size");
  for (const auto& u : sample)
    for (const auto& v : sample) {
      const TreeVertex cu = coarsen(u, s, q), cv = coarsen(v, s, q);
      c.require(cu.h * s == u.h, "coarsening must divide the Busemann value");
      const int fine = distance(u, v);
      const int scaled = distance(cu, cv) * s;
      c.require(fine <= scaled && scaled <= fine + 2 * (s - 1),
                "rescaled distance outside the exact quasi-isometry window");
      const bool aligned = confluent(u, v).h % s == 0;
      c.require((scaled == fine) == aligned,
                "rescaled distance exact iff the meet level is divisible by s");
    }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "degree and neighbour-type counts on radius-3 balls", degree_and_type_counts},
      {2, "closed-form spectrum of the three-tree Dirichlet blocks", closed_form_spectrum_d3},
      {3, "spectrum containment and approach to the radius", spectrum_containment},
      {4, "eigenfunctions of the walk operator on the graph", eigenfunctions_on_the_graph},
      {5, "spectral atom mass and return probabilities", plancherel_and_returns},
      {6, "stretched-exponential decay of return probabilities", asymptotic_type},
      {7, "group balls are isomorphic to graph balls", cayley_is_the_graph},
      {8, "presentation relators evaluate to the identity", presentation_relators},
      {9, "translation decomposition: supports, sum, determinism", decomposition_uniqueness},
      {10, "octahedra are spheres: counts and characteristic", octahedron_topology},
      {11, "Monte-Carlo drift matches the closed form", drift_monte_carlo},
      {12, "tree coarsening rescales the metric exactly", coarsening_metric},
  };

  int failed = 0;
  for (const auto& crit : criteria) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      crit.run(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (check.failures.empty()) {
      std::printf("[PASS] criterion %2d (%6.2fs) %s\n", crit.id, dt, crit.title);
    } else {
      ++failed;
      std::printf("[FAIL] criterion %2d (%6.2fs) %s\n", crit.id, dt, crit.title);
      std::size_t shown = 0;
      for (const auto& f : check.failures) {
        if (++shown > 5) {
          std::printf("         ... %zu further failures\n", check.failures.size() - 5);
          break;
        }
        std::printf("         - %s\n", f.c_str());
      }
    }
  }
  return failed;
}
