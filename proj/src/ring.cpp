#include "dlgraph/ring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dlg {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

// Polynomials over Z_p encoded base-p, constant coefficient first.
std::vector<int> decode_poly(int code, int p, int len) {
  std::vector<int> c(static_cast<std::size_t>(len), 0);
  for (int i = 0; i < len && code > 0; ++i) {
    c[static_cast<std::size_t>(i)] = code % p;
    code /= p;
  }
  return c;
}

// Multiply two coefficient vectors mod p, reduce by the monic modulus.
std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b,
                             const std::vector<int>& modulus, int p) {
  const int s = static_cast<int>(modulus.size()) - 1;  // degree
  std::vector<int> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (int deg = static_cast<int>(prod.size()) - 1; deg >= s; --deg) {
    const int lead = prod[static_cast<std::size_t>(deg)];
    if (lead == 0) continue;
    for (int i = 0; i <= s; ++i) {
      auto& slot = prod[static_cast<std::size_t>(deg - s + i)];
      slot = ((slot - lead * modulus[static_cast<std::size_t>(i)]) % p + p) % p;
    }
  }
  prod.resize(static_cast<std::size_t>(s));
  return prod;
}

int encode_poly(const std::vector<int>& c, int p) {
  int code = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    code = code * p + c[static_cast<std::size_t>(i)];
  return code;
}

// Lowest (by base-p encoding of the non-leading coefficients) monic
// irreducible polynomial of degree s over Z_p.
std::vector<int> lowest_irreducible(int p, int s) {
  if (s == 1) return {0, 1};  // x itself; unused (plain prime field)
  const int count = 1;
  (void)count;
  std::vector<bool> reducible;
  // candidate = x^s + tail, tail encoded 0..p^s-1
  int total = 1;
  for (int i = 0; i < s; ++i) total *= p;
  for (int tail = 0; tail < total; ++tail) {
    std::vector<int> cand = decode_poly(tail, p, s);
    cand.push_back(1);
    // irreducible iff no monic factor of degree 1..s/2 divides it
    bool irred = true;
    for (int fd = 1; irred && fd <= s / 2; ++fd) {
      int fcount = 1;
      for (int i = 0; i < fd; ++i) fcount *= p;
      for (int fc = 0; irred && fc < fcount; ++fc) {
        std::vector<int> f = decode_poly(fc, p, fd);
        f.push_back(1);
        // remainder of cand by f
        std::vector<int> r = cand;
        for (int deg = static_cast<int>(r.size()) - 1; deg >= fd; --deg) {
          const int lead = r[static_cast<std::size_t>(deg)];
          if (lead == 0) continue;
          for (int i = 0; i <= fd; ++i) {
            auto& slot = r[static_cast<std::size_t>(deg - fd + i)];
            slot = ((slot - lead * f[static_cast<std::size_t>(i)]) % p + p) % p;
          }
        }
        bool zero = true;
        for (int i = 0; i < fd; ++i) zero = zero && r[static_cast<std::size_t>(i)] == 0;
        if (zero) irred = false;
      }
    }
    if (irred) return cand;
  }
  throw std::logic_error("lowest_irreducible: no irreducible polynomial found");
}

std::string poly_name(const std::vector<int>& c) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    const int v = c[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || v != 1) os << v;
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace

void CoefficientRing::finish(std::vector<RingElem> ells) {
  inv_.assign(static_cast<std::size_t>(q_), -1);
  for (RingElem a = 0; a < static_cast<RingElem>(q_); ++a)
    for (RingElem b = 0; b < static_cast<RingElem>(q_); ++b)
      if (mul(a, b) == one_) inv_[a] = static_cast<std::int64_t>(b);

  for (RingElem l : ells)
    if (l >= static_cast<RingElem>(q_))
      throw std::invalid_argument("ring: distinguished element out of range");
  for (std::size_t i = 0; i < ells.size(); ++i)
    for (std::size_t j = i + 1; j < ells.size(); ++j) {
      const RingElem diff = sub(ells[i], ells[j]);
      if (!is_invertible(diff))
        throw std::invalid_argument("ring: difference " + element_name(ells[i]) + "-" +
                                    element_name(ells[j]) + " is not invertible");
    }
  ells_ = std::move(ells);
  std::ostringstream os;
  os << desc_ << " ells=(";
  for (std::size_t i = 0; i < ells_.size(); ++i)
    os << (i ? "," : "") << element_name(ells_[i]);
  os << ")";
  desc_ = os.str();
}

CoefficientRing CoefficientRing::integers_mod(int q, std::vector<RingElem> ells) {
  if (q < 2) throw std::invalid_argument("ring: modulus must be >= 2");
  CoefficientRing r;
  r.q_ = q;
  r.one_ = 1 % q;
  r.add_.resize(static_cast<std::size_t>(q) * static_cast<std::size_t>(q));
  r.mul_.resize(r.add_.size());
  r.neg_.resize(static_cast<std::size_t>(q));
  for (int a = 0; a < q; ++a) {
    r.neg_[static_cast<std::size_t>(a)] = static_cast<RingElem>((q - a) % q);
    for (int b = 0; b < q; ++b) {
      r.add_[static_cast<std::size_t>(a) * static_cast<std::size_t>(q) + static_cast<std::size_t>(b)] =
          static_cast<RingElem>((a + b) % q);
      r.mul_[static_cast<std::size_t>(a) * static_cast<std::size_t>(q) + static_cast<std::size_t>(b)] =
          static_cast<RingElem>((a * b) % q);
    }
  }
  r.names_.resize(static_cast<std::size_t>(q));
  for (int a = 0; a < q; ++a) r.names_[static_cast<std::size_t>(a)] = std::to_string(a);
  r.desc_ = "Z_" + std::to_string(q);
  r.finish(std::move(ells));
  return r;
}

CoefficientRing CoefficientRing::field_product(std::vector<FieldSpec> factors,
                                               std::vector<RingElem> ells) {
  if (factors.empty()) throw std::invalid_argument("ring: need at least one field factor");
  struct Factor {
    int size;
    std::vector<int> modulus;  // for s >= 2
    FieldSpec spec;
  };
  std::vector<Factor> fs;
  int q = 1;
  for (const auto& spec : factors) {
    if (!is_prime(spec.p)) throw std::invalid_argument("ring: field characteristic must be prime");
    if (spec.s < 1) throw std::invalid_argument("ring: field degree must be >= 1");
    Factor f;
    f.spec = spec;
    f.size = 1;
    for (int i = 0; i < spec.s; ++i) f.size *= spec.p;
    if (spec.s >= 2) f.modulus = lowest_irreducible(spec.p, spec.s);
    q *= f.size;
    fs.push_back(std::move(f));
  }

  auto split = [&](RingElem a) {
    std::vector<int> parts;
    for (const auto& f : fs) {
      parts.push_back(static_cast<int>(a) % f.size);
      a /= static_cast<RingElem>(f.size);
    }
    return parts;
  };
  auto join = [&](const std::vector<int>& parts) {
    RingElem a = 0;
    for (int i = static_cast<int>(fs.size()) - 1; i >= 0; --i)
      a = a * static_cast<RingElem>(fs[static_cast<std::size_t>(i)].size) +
          static_cast<RingElem>(parts[static_cast<std::size_t>(i)]);
    return a;
  };

  CoefficientRing r;
  r.q_ = q;
  std::vector<int> ones;
  for (const auto& f : fs) {
    (void)f;
    ones.push_back(1);
  }
  r.one_ = join(ones);
  r.add_.resize(static_cast<std::size_t>(q) * static_cast<std::size_t>(q));
  r.mul_.resize(r.add_.size());
  r.neg_.resize(static_cast<std::size_t>(q));
  for (int a = 0; a < q; ++a) {
    const auto pa = split(static_cast<RingElem>(a));
    std::vector<int> na;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const int p = fs[i].spec.p;
      // negate componentwise, coefficientwise
      std::vector<int> c = decode_poly(pa[i], p, fs[i].spec.s);
      for (int& x : c) x = (p - x) % p;
      na.push_back(encode_poly(c, p));
    }
    r.neg_[static_cast<std::size_t>(a)] = join(na);
    for (int b = 0; b < q; ++b) {
      const auto pb = split(static_cast<RingElem>(b));
      std::vector<int> sum, prod;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        const int p = fs[i].spec.p;
        const int s = fs[i].spec.s;
        std::vector<int> ca = decode_poly(pa[i], p, s);
        std::vector<int> cb = decode_poly(pb[i], p, s);
        std::vector<int> cs(static_cast<std::size_t>(s));
        for (int k = 0; k < s; ++k)
          cs[static_cast<std::size_t>(k)] =
              (ca[static_cast<std::size_t>(k)] + cb[static_cast<std::size_t>(k)]) % p;
        sum.push_back(encode_poly(cs, p));
        if (s == 1) {
          prod.push_back((ca[0] * cb[0]) % p);
        } else {
          prod.push_back(encode_poly(poly_mulmod(ca, cb, fs[i].modulus, p), p));
        }
      }
      r.add_[static_cast<std::size_t>(a) * static_cast<std::size_t>(q) + static_cast<std::size_t>(b)] = join(sum);
      r.mul_[static_cast<std::size_t>(a) * static_cast<std::size_t>(q) + static_cast<std::size_t>(b)] = join(prod);
    }
  }

  r.names_.resize(static_cast<std::size_t>(q));
  for (int a = 0; a < q; ++a) {
    const auto pa = split(static_cast<RingElem>(a));
    std::ostringstream os;
    for (std::size_t i = 0; i < fs.size(); ++i) os << (i ? ";" : "") << pa[i];
    r.names_[static_cast<std::size_t>(a)] = fs.size() == 1 ? os.str() : "(" + os.str() + ")";
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) os << "x";
    os << "F_" << fs[i].size;
    if (fs[i].spec.s >= 2) os << "[" << poly_name(fs[i].modulus) << "]";
  }
  r.desc_ = os.str();
  r.finish(std::move(ells));
  return r;
}

CoefficientRing CoefficientRing::integers_mod_default(int q, int d) {
  if (d < 2) throw std::invalid_argument("ring: need d >= 2");
  std::vector<std::vector<RingElem>> candidates;
  {
    std::vector<RingElem> seq;
    for (int i = 0; i < d - 1; ++i) seq.push_back(static_cast<RingElem>(i % q));
    candidates.push_back(seq);
  }
  if (d == 4)
    candidates.push_back({0, 1, static_cast<RingElem>(q - 1)});
  for (const auto& ells : candidates) {
    try {
      return integers_mod(q, ells);
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::invalid_argument("ring: no default distinguished elements for Z_" +
                              std::to_string(q) + " with d=" + std::to_string(d));
}

CoefficientRing CoefficientRing::field_product_default(std::vector<FieldSpec> factors, int d) {
  if (d < 2) throw std::invalid_argument("ring: need d >= 2");
  // element with per-factor index i is the i-th polynomial in each factor;
  // distinct indices give invertible (nonzero) differences in every field
  std::vector<int> sizes;
  int q = 1;
  for (const auto& f : factors) {
    int size = 1;
    for (int i = 0; i < f.s; ++i) size *= f.p;
    if (size < d - 1)
      throw std::invalid_argument("ring: field factor too small for d-1 distinct elements");
    sizes.push_back(size);
    q *= size;
  }
  std::vector<RingElem> ells;
  for (int i = 0; i < d - 1; ++i) {
    RingElem e = 0;
    for (int fi = static_cast<int>(sizes.size()) - 1; fi >= 0; --fi)
      e = e * static_cast<RingElem>(sizes[static_cast<std::size_t>(fi)]) + static_cast<RingElem>(i);
    ells.push_back(e);
  }
  return field_product(std::move(factors), std::move(ells));
}

RingElem CoefficientRing::ell(int place) const {
  if (place < 0 || place >= num_places())
    throw std::invalid_argument("ring: place index out of range");
  return ells_[static_cast<std::size_t>(place)];
}

std::optional<RingElem> CoefficientRing::inverse(RingElem a) const {
  if (inv_[a] < 0) return std::nullopt;
  return static_cast<RingElem>(inv_[a]);
}

std::string CoefficientRing::element_name(RingElem a) const {
  return names_[static_cast<std::size_t>(a)];
}

}  // namespace dlg
