#pragma once

#include <climits>
#include <cstddef>
#include <string>
#include <vector>

#include "dlgraph/ring.hpp"

namespace dlg {

/// Polynomial over the coefficient ring, ascending powers of t, trimmed.
using Poly = std::vector<RingElem>;

/// Canonical fraction N(t) / prod_i (t + l_i)^{den_i} with den_i >= 0
/// minimal: no (t + l_i) factor of N can be cancelled.  Zero is the empty
/// numerator with zero denominator exponents, so structural equality decides
/// ring equality.
struct Laurent {
  Poly num;
  std::vector<int> den;

  bool operator==(const Laurent& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }
  bool is_zero() const { return num.empty(); }
};

struct LaurentHash {
  std::size_t operator()(const Laurent& x) const;
};

inline constexpr int kValuationInfinity = INT_MAX;

/// Arithmetic and local expansions for Laurent fractions over one ring.
class LaurentRing {
 public:
  explicit LaurentRing(CoefficientRing ring);

  const CoefficientRing& coeffs() const { return ring_; }
  int places() const { return ring_.num_places(); }

  Laurent zero() const;
  Laurent one() const;
  Laurent constant(RingElem a) const;
  Laurent variable() const;         // t
  Laurent linear(int place) const;  // t + l_place
  /// prod_i (t + l_i)^{k_i} for signed exponents k.
  Laurent monomial(const std::vector<int>& k) const;
  /// Builds the canonical form from a raw numerator and denominator.
  Laurent make(Poly num, std::vector<int> den = {}) const;

  Laurent add(const Laurent& a, const Laurent& b) const;
  Laurent neg(const Laurent& a) const;
  Laurent sub(const Laurent& a, const Laurent& b) const;
  Laurent mul(const Laurent& a, const Laurent& b) const;

  /// Order of vanishing at t = -l_place (negative at a pole), or the
  /// infinity sentinel for zero.
  int valuation(const Laurent& a, int place) const;
  /// Valuation in the t^{-1} series: -deg(num) + sum(den).
  int valuation_at_infinity(const Laurent& a) const;

  /// Coefficients of the (t + l_place)-series of a at exponents [lo, hi).
  std::vector<RingElem> series_at_place(const Laurent& a, int place, int lo, int hi) const;
  /// Coefficients of the t^{-1}-series of a, reported by t-exponent e in
  /// [lo, hi) ascending.
  std::vector<RingElem> series_at_infinity(const Laurent& a, int lo, int hi) const;

  std::string to_string(const Laurent& a) const;

  Poly poly_add(const Poly& a, const Poly& b) const;
  Poly poly_mul(const Poly& a, const Poly& b) const;
  Poly poly_neg(const Poly& a) const;
  /// Coefficients of p rewritten as a polynomial in u = t + c.
  Poly poly_shift(const Poly& p, RingElem c) const;
  RingElem poly_eval(const Poly& p, RingElem x) const;

 private:
  Poly trim(Poly p) const;
  CoefficientRing ring_;
};

}  // namespace dlg
