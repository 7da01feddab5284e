#include "dlgraph/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dlg {

std::size_t LaurentHash::operator()(const Laurent& x) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
  };
  for (RingElem c : x.num) mix(c + 1);
  mix(0xabcdef);
  for (int d : x.den) mix(static_cast<std::uint64_t>(d) + 1);
  return static_cast<std::size_t>(h);
}

LaurentRing::LaurentRing(CoefficientRing ring) : ring_(std::move(ring)) {
  if (ring_.num_places() < 1)
    throw std::invalid_argument("LaurentRing: ring must carry at least one distinguished element");
}

Poly LaurentRing::trim(Poly p) const {
  while (!p.empty() && p.back() == ring_.zero()) p.pop_back();
  return p;
}

Laurent LaurentRing::zero() const { return Laurent{{}, std::vector<int>(static_cast<std::size_t>(places()), 0)}; }

Laurent LaurentRing::one() const { return constant(ring_.one()); }

Laurent LaurentRing::constant(RingElem a) const {
  if (a == ring_.zero()) return zero();
  return Laurent{{a}, std::vector<int>(static_cast<std::size_t>(places()), 0)};
}

Laurent LaurentRing::variable() const {
  return Laurent{{ring_.zero(), ring_.one()}, std::vector<int>(static_cast<std::size_t>(places()), 0)};
}

Laurent LaurentRing::linear(int place) const {
  return Laurent{{ring_.ell(place), ring_.one()},
                 std::vector<int>(static_cast<std::size_t>(places()), 0)};
}

Laurent LaurentRing::monomial(const std::vector<int>& k) const {
  if (static_cast<int>(k.size()) != places())
    throw std::invalid_argument("monomial: one exponent per place required");
  Poly num{ring_.one()};
  std::vector<int> den(static_cast<std::size_t>(places()), 0);
  for (int i = 0; i < places(); ++i) {
    const int e = k[static_cast<std::size_t>(i)];
    if (e >= 0) {
      const Poly lin{ring_.ell(i), ring_.one()};
      for (int r = 0; r < e; ++r) num = poly_mul(num, lin);
    } else {
      den[static_cast<std::size_t>(i)] = -e;
    }
  }
  return make(std::move(num), std::move(den));
}

Laurent LaurentRing::make(Poly num, std::vector<int> den) const {
  if (den.empty()) den.assign(static_cast<std::size_t>(places()), 0);
  if (static_cast<int>(den.size()) != places())
    throw std::invalid_argument("make: one denominator exponent per place required");
  for (int e : den)
    if (e < 0) throw std::invalid_argument("make: denominator exponents must be >= 0");
  num = trim(std::move(num));
  if (num.empty()) return zero();
  // cancel (t + l_i) factors while the numerator vanishes at -l_i
  for (int i = 0; i < places(); ++i) {
    auto& e = den[static_cast<std::size_t>(i)];
    const RingElem root = ring_.neg(ring_.ell(i));
    while (e > 0 && poly_eval(num, root) == ring_.zero()) {
      // exact synthetic division by (t + l_i)
      Poly quot(num.size() - 1);
      RingElem carry = num.back();
      for (int idx = static_cast<int>(num.size()) - 2; idx >= 0; --idx) {
        quot[static_cast<std::size_t>(idx)] = carry;
        carry = ring_.add(num[static_cast<std::size_t>(idx)], ring_.mul(root, carry));
      }
      num = std::move(quot);
      --e;
    }
    if (num.empty()) return zero();
  }
  return Laurent{std::move(num), std::move(den)};
}

Laurent LaurentRing::add(const Laurent& a, const Laurent& b) const {
  std::vector<int> den(static_cast<std::size_t>(places()));
  Poly na = a.num, nb = b.num;
  for (int i = 0; i < places(); ++i) {
    const int ma = a.den[static_cast<std::size_t>(i)], mb = b.den[static_cast<std::size_t>(i)];
    den[static_cast<std::size_t>(i)] = std::max(ma, mb);
    const Poly lin{ring_.ell(i), ring_.one()};
    for (int r = ma; r < den[static_cast<std::size_t>(i)]; ++r) na = poly_mul(na, lin);
    for (int r = mb; r < den[static_cast<std::size_t>(i)]; ++r) nb = poly_mul(nb, lin);
  }
  return make(poly_add(na, nb), std::move(den));
}

Laurent LaurentRing::neg(const Laurent& a) const { return Laurent{poly_neg(a.num), a.den}; }

Laurent LaurentRing::sub(const Laurent& a, const Laurent& b) const { return add(a, neg(b)); }

Laurent LaurentRing::mul(const Laurent& a, const Laurent& b) const {
  std::vector<int> den(static_cast<std::size_t>(places()));
  for (int i = 0; i < places(); ++i)
    den[static_cast<std::size_t>(i)] = a.den[static_cast<std::size_t>(i)] + b.den[static_cast<std::size_t>(i)];
  return make(poly_mul(a.num, b.num), std::move(den));
}

int LaurentRing::valuation(const Laurent& a, int place) const {
  if (place < 0 || place >= places()) throw std::invalid_argument("valuation: bad place");
  if (a.is_zero()) return kValuationInfinity;
  const Poly shifted = poly_shift(a.num, ring_.ell(place));
  int v = 0;
  while (shifted[static_cast<std::size_t>(v)] == ring_.zero()) ++v;
  return v - a.den[static_cast<std::size_t>(place)];
}

int LaurentRing::valuation_at_infinity(const Laurent& a) const {
  if (a.is_zero()) return kValuationInfinity;
  int total = 0;
  for (int e : a.den) total += e;
  return -(static_cast<int>(a.num.size()) - 1) + total;
}

std::vector<RingElem> LaurentRing::series_at_place(const Laurent& a, int place, int lo,
                                                   int hi) const {
  if (hi < lo) throw std::invalid_argument("series_at_place: empty window bounds");
  std::vector<RingElem> out(static_cast<std::size_t>(hi - lo), ring_.zero());
  if (a.is_zero() || hi == lo) return out;

  Poly work = poly_shift(a.num, ring_.ell(place));
  int v = -a.den[static_cast<std::size_t>(place)];
  // drop leading zeros so the series starts at its valuation
  std::size_t lead = 0;
  while (lead < work.size() && work[lead] == ring_.zero()) ++lead;
  work.erase(work.begin(), work.begin() + static_cast<long>(lead));
  v += static_cast<int>(lead);
  if (v >= hi) return out;

  const std::size_t len = static_cast<std::size_t>(hi - v);
  work.resize(len, ring_.zero());
  for (int j = 0; j < places(); ++j) {
    if (j == place) continue;
    const int e = a.den[static_cast<std::size_t>(j)];
    if (e == 0) continue;
    const RingElem c = ring_.sub(ring_.ell(j), ring_.ell(place));
    const RingElem cinv = *ring_.inverse(c);
    // inverse series of (u + c): cinv, -cinv^2 u, ...
    std::vector<RingElem> inv(len);
    inv[0] = cinv;
    for (std::size_t r = 1; r < len; ++r) inv[r] = ring_.mul(inv[r - 1], ring_.neg(cinv));
    for (int rep = 0; rep < e; ++rep) {
      std::vector<RingElem> next(len, ring_.zero());
      for (std::size_t i = 0; i < len; ++i) {
        if (work[i] == ring_.zero()) continue;
        for (std::size_t r = 0; i + r < len; ++r)
          next[i + r] = ring_.add(next[i + r], ring_.mul(work[i], inv[r]));
      }
      work = std::move(next);
    }
  }
  for (int e = std::max(lo, v); e < hi; ++e)
    out[static_cast<std::size_t>(e - lo)] = work[static_cast<std::size_t>(e - v)];
  return out;
}

std::vector<RingElem> LaurentRing::series_at_infinity(const Laurent& a, int lo, int hi) const {
  if (hi < lo) throw std::invalid_argument("series_at_infinity: empty window bounds");
  std::vector<RingElem> out(static_cast<std::size_t>(hi - lo), ring_.zero());
  if (a.is_zero() || hi == lo) return out;

  // In s = t^{-1}: a = s^{sum(den) - deg} * reversed(num) / prod (1 + l_j s)^{den_j}.
  const int v = valuation_at_infinity(a);  // lowest s-exponent
  const int top = -lo;                     // highest s-exponent needed
  if (top < v) return out;
  const std::size_t len = static_cast<std::size_t>(top - v + 1);
  std::vector<RingElem> work(len, ring_.zero());
  for (std::size_t i = 0; i < a.num.size() && i < len; ++i)
    work[i] = a.num[a.num.size() - 1 - i];
  for (int j = 0; j < places(); ++j) {
    const int e = a.den[static_cast<std::size_t>(j)];
    if (e == 0) continue;
    const RingElem l = ring_.ell(j);
    // inverse series of (1 + l s): 1, -l, l^2, ...
    std::vector<RingElem> inv(len);
    inv[0] = ring_.one();
    for (std::size_t r = 1; r < len; ++r) inv[r] = ring_.mul(inv[r - 1], ring_.neg(l));
    for (int rep = 0; rep < e; ++rep) {
      std::vector<RingElem> next(len, ring_.zero());
      for (std::size_t i = 0; i < len; ++i) {
        if (work[i] == ring_.zero()) continue;
        for (std::size_t r = 0; i + r < len; ++r)
          next[i + r] = ring_.add(next[i + r], ring_.mul(work[i], inv[r]));
      }
      work = std::move(next);
    }
  }
  // t-exponent e corresponds to s-exponent -e
  for (int e = lo; e < hi; ++e) {
    const int s_exp = -e;
    if (s_exp >= v && s_exp <= top)
      out[static_cast<std::size_t>(e - lo)] = work[static_cast<std::size_t>(s_exp - v)];
  }
  return out;
}

std::string LaurentRing::to_string(const Laurent& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(a.num.size()) - 1; i >= 0; --i) {
    const RingElem c = a.num[static_cast<std::size_t>(i)];
    if (c == ring_.zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != ring_.one()) os << ring_.element_name(c);
    if (i == 1) os << "t";
    if (i >= 2) os << "t^" << i;
  }
  std::string denom;
  for (int i = 0; i < places(); ++i) {
    const int e = a.den[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    denom += "(t+" + ring_.element_name(ring_.ell(i)) + ")";
    if (e > 1) denom += "^" + std::to_string(e);
  }
  if (denom.empty()) return os.str();
  return "(" + os.str() + ")/" + denom;
}

Poly LaurentRing::poly_add(const Poly& a, const Poly& b) const {
  Poly out(std::max(a.size(), b.size()), ring_.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = ring_.add(out[i], b[i]);
  return trim(std::move(out));
}

Poly LaurentRing::poly_mul(const Poly& a, const Poly& b) const {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, ring_.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == ring_.zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = ring_.add(out[i + j], ring_.mul(a[i], b[j]));
  }
  return trim(std::move(out));
}

Poly LaurentRing::poly_neg(const Poly& a) const {
  Poly out = a;
  for (RingElem& c : out) c = ring_.neg(c);
  return out;
}

Poly LaurentRing::poly_shift(const Poly& p, RingElem c) const {
  // repeated synthetic division by (t + c); remainders are the coefficients
  Poly rem = p;
  Poly out;
  out.reserve(p.size());
  const RingElem root = ring_.neg(c);
  while (!rem.empty()) {
    RingElem carry = ring_.zero();
    for (int i = static_cast<int>(rem.size()) - 1; i >= 0; --i) {
      const RingElem cur = ring_.add(rem[static_cast<std::size_t>(i)], ring_.mul(root, carry));
      rem[static_cast<std::size_t>(i)] = carry;
      carry = cur;
    }
    out.push_back(carry);  // p(-c)
    rem = trim(std::move(rem));
  }
  return trim(std::move(out));
}

RingElem LaurentRing::poly_eval(const Poly& p, RingElem x) const {
  RingElem acc = ring_.zero();
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    acc = ring_.add(ring_.mul(acc, x), p[static_cast<std::size_t>(i)]);
  return acc;
}

}  // namespace dlg
