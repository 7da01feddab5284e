#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

namespace dlg {

/// Point of the simplicial lattice A_{d-1}: integer coordinates summing to 0.
struct LatticePoint {
  std::vector<int> k;

  bool operator==(const LatticePoint& o) const { return k == o.k; }
  bool operator<(const LatticePoint& o) const { return k < o.k; }
};

/// The simplex B_h = {k in A_{d-1} : k_1,...,k_{d-1} >= 0, k_d >= -h},
/// together with its interior mask.  Points are ordered lexicographically on
/// (k_1,...,k_{d-1}).
struct SimplexDomain {
  int d = 0;
  int h = 0;
  std::vector<LatticePoint> points;
  std::vector<bool> interior;
  std::vector<int> interior_indices;  // positions of interior points in `points`
  std::map<std::vector<int>, int> lookup;

  std::size_t size() const { return points.size(); }
  std::size_t interior_size() const { return interior_indices.size(); }
  int index_of(const LatticePoint& p) const;
  bool is_interior(const LatticePoint& p) const;
};

SimplexDomain simplex_domain(int d, int h);

/// Dense row-major matrix, just large enough for the small Dirichlet blocks.
struct Matrix {
  int n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0) {}
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
};

struct SpectralPair {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;
};

/// One application of the projected walk operator at a single point:
/// (1/D) sum_{i != j} sqrt(q_i q_j) f(k + e_i - e_j).
double q_apply(const std::function<double(const LatticePoint&)>& f, const LatticePoint& k,
               const std::vector<int>& qs);

/// Matrix of the walk operator with zero boundary values, restricted to the
/// interior of B_h; rows/columns follow `interior_indices` order.  The
/// interior may be empty (0x0 matrix).
Matrix dirichlet_matrix(const std::vector<int>& qs, int h);

/// Full eigensystem of a symmetric matrix via cyclic Jacobi rotations.
/// Deterministic: fixed sweep order, eigenvalues ascending, and the first
/// significantly nonzero entry of each eigenvector made positive.
std::vector<SpectralPair> eig_sym(const Matrix& m);

/// Domain plus eigensystem of the height-h Dirichlet block.
struct DirichletEig {
  SimplexDomain domain;
  std::vector<SpectralPair> pairs;  // indexed like domain.interior_indices
};

DirichletEig eig_dirichlet(const std::vector<int>& qs, int h);

/// Closed-form eigenvalue for three equal branching numbers:
/// (1/3)(cos(2pi(m1-m2)/3h) + cos(2pi(m2-m3)/3h) + cos(2pi(m3-m1)/3h)).
double lambda_d3(const LatticePoint& m, int h);

/// The alternating exponential sum eigenfunction for three equal branching
/// numbers; vanishes on the boundary of B_h and is orthonormal over it.
std::complex<double> psi_d3(const LatticePoint& m, int h, const LatticePoint& k);

struct SpectrumInterval {
  double rho_prime = 0.0;
  double rho = 0.0;
};

/// Endpoints of the spectrum of the projected operator.  The top is always
/// sum_{i != j} sqrt(q_i q_j)/D; the bottom uses the closed cases (d = 2,
/// matched branching numbers) and otherwise minimizes the symbol over the
/// torus numerically.
SpectrumInterval spec_interval(const std::vector<int>& qs);

/// Sorted, deduplicated union of the Dirichlet spectra for 2 <= h <= hmax.
std::vector<double> spec_union(const std::vector<int>& qs, int hmax, double dedup_tol = 1e-9);

}  // namespace dlg
