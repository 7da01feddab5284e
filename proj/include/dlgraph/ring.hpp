#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dlg {

using RingElem = std::uint32_t;

struct FieldSpec {
  int p = 2;  // prime
  int s = 1;  // extension degree
};

/// Finite commutative coefficient ring with unit: either Z_q or a product of
/// finite fields, together with distinguished elements l_1,...,l_{d-1} whose
/// pairwise differences are invertible.  Elements are dense indices
/// 0..size-1 (0 is the zero element) and arithmetic is table-driven, so the
/// two kinds share one representation.
class CoefficientRing {
 public:
  static CoefficientRing integers_mod(int q, std::vector<RingElem> ells);
  static CoefficientRing field_product(std::vector<FieldSpec> factors,
                                       std::vector<RingElem> ells);

  /// Default distinguished elements for a DL dimension d (d-1 of them):
  /// 0,1,...,d-2 when invertible, falling back to 0,1,-1 for d = 4 and odd q.
  static CoefficientRing integers_mod_default(int q, int d);
  /// Per-factor element lists (0,1,...,d-2), requiring p^s >= d-1.
  static CoefficientRing field_product_default(std::vector<FieldSpec> factors, int d);

  int size() const { return q_; }
  int num_places() const { return static_cast<int>(ells_.size()); }
  RingElem ell(int place) const;

  RingElem zero() const { return 0; }
  RingElem one() const { return one_; }
  RingElem add(RingElem a, RingElem b) const { return table(add_, a, b); }
  RingElem mul(RingElem a, RingElem b) const { return table(mul_, a, b); }
  RingElem neg(RingElem a) const { return neg_[a]; }
  RingElem sub(RingElem a, RingElem b) const { return add(a, neg(b)); }
  bool is_invertible(RingElem a) const { return inv_[a] >= 0; }
  std::optional<RingElem> inverse(RingElem a) const;

  /// Human-readable summary (kind, modulus polynomials, distinguished
  /// elements); stable, embedded in outputs for reproducibility.
  const std::string& describe() const { return desc_; }
  std::string element_name(RingElem a) const;

  bool operator==(const CoefficientRing& o) const { return desc_ == o.desc_; }

 private:
  CoefficientRing() = default;
  void finish(std::vector<RingElem> ells);
  RingElem table(const std::vector<RingElem>& t, RingElem a, RingElem b) const {
    return t[static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + b];
  }

  int q_ = 0;
  RingElem one_ = 0;
  std::vector<RingElem> add_, mul_, neg_;
  std::vector<std::int64_t> inv_;  // -1 when not invertible
  std::vector<RingElem> ells_;
  std::vector<std::string> names_;
  std::string desc_;
};

}  // namespace dlg
