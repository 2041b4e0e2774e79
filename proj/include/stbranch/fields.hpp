#pragma once

// Arithmetic for the tower F_p c F_q c F_{q^2}, q = p^n with p an odd prime.
//
// F_q is F_p[x]/(f) for the first monic irreducible f of degree n in the
// enumeration order below; F_{q^2} is F_q[t]/(t^2 - delta) for the first
// non-square delta of F_q.  Elements of either level are stored as small
// integer codes and all operations are table lookups, so everything
// downstream (group enumeration, orbit closures, character sums) runs on
// plain integers.
//
// Encoding: the F_q element with coefficient vector (c_0,...,c_{n-1}),
// meaning c_0 + c_1 x + ..., has code c_0 + c_1 p + ... + c_{n-1} p^{n-1}.
// The F_{q^2} element a + b t has code a + q b.  Codes double as enumeration
// order; "first" always refers to this order.

#include <cstdint>
#include <vector>

#include "stbranch/errors.hpp"

namespace stbranch {

using felem = std::uint16_t;  // element code within one field level

// A finite field of given size with all arithmetic precomputed.
struct SmallField {
  std::uint32_t p = 0;    // characteristic
  std::uint32_t deg = 0;  // degree over F_p
  std::uint32_t size = 0; // p^deg

  std::vector<felem> add_tab, mul_tab, neg_tab, inv_tab;

  felem add(felem a, felem b) const { return add_tab[std::size_t(a) * size + b]; }
  felem mul(felem a, felem b) const { return mul_tab[std::size_t(a) * size + b]; }
  felem neg(felem a) const { return neg_tab[a]; }
  felem sub(felem a, felem b) const { return add(a, neg(b)); }
  felem inv(felem a) const {
    if (a == 0) throw error(errc::zero_input, "inverse of zero");
    return inv_tab[a];
  }
  felem div(felem a, felem b) const { return mul(a, inv(b)); }

  felem pow(felem a, std::uint64_t e) const {
    felem r = 1, x = a;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }

  std::uint32_t mult_order(felem a) const {
    if (a == 0) throw error(errc::zero_input, "order of zero");
    std::uint32_t o = 1;
    felem x = a;
    while (x != 1) {
      x = mul(x, a);
      ++o;
    }
    return o;
  }

  // Least code generating the multiplicative group.
  felem primitive_element() const {
    for (felem a = 1; a < size; ++a)
      if (mult_order(a) == size - 1) return a;
    throw error(errc::internal_mismatch, "no primitive element");
  }
};

// Typed element views.  FqElem/Fq2Elem are canonical by construction: codes
// are in bijection with reduced coefficient vectors, so structural equality
// is field equality.
struct FqElem {
  felem v = 0;
  friend bool operator==(FqElem, FqElem) = default;
};
struct Fq2Elem {
  FqElem a, b;  // a + b t
  friend bool operator==(Fq2Elem, Fq2Elem) = default;
};

namespace detail {

inline bool is_prime_u32(std::uint32_t m) {
  if (m < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

// Dense little-endian polynomial arithmetic over F_p, used only while
// constructing the base-field tables.
using Poly = std::vector<std::uint32_t>;

inline Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus, std::uint32_t p) {
  std::size_t n = modulus.size() - 1;  // modulus monic of degree n
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t d = prod.size(); d-- > n;) {
    std::uint32_t c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    for (std::size_t k = 0; k < n; ++k)
      prod[d - n + k] = (prod[d - n + k] + (p - 1) * c % p * modulus[k]) % p;
  }
  prod.resize(n);
  return prod;
}

inline Poly poly_pow_mod(Poly base, std::uint64_t e, const Poly& modulus, std::uint32_t p) {
  Poly r{1};
  r.resize(modulus.size() - 1, 0);
  base.resize(modulus.size() - 1, 0);
  while (e) {
    if (e & 1) r = poly_mul_mod(r, base, modulus, p);
    base = poly_mul_mod(base, base, modulus, p);
    e >>= 1;
  }
  return r;
}

// Rabin irreducibility test: f of degree n is irreducible over F_p iff
// x^(p^n) = x mod f and gcd-degree conditions x^(p^(n/r)) != x hold for
// every prime r | n.  Since we only ever need gcd(x^(p^m) - x, f) != 1
// versus trivial, and f is a candidate modulus, we test equality of the
// Frobenius iterates directly.
inline bool poly_irreducible(const Poly& f, std::uint32_t p) {
  std::size_t n = f.size() - 1;
  if (n == 1) return true;
  auto frob_iter = [&](std::uint32_t m) {
    std::uint64_t e = 1;
    for (std::uint32_t i = 0; i < m; ++i) e *= p;
    Poly x{0, 1};
    return poly_pow_mod(x, e, f, p);
  };
  Poly xn(n, 0);
  if (n >= 2) xn[1] = 1;  // the polynomial x reduced mod f
  if (frob_iter(std::uint32_t(n)) != xn) return false;
  for (std::uint32_t r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime_u32(r)) continue;
    Poly it = frob_iter(std::uint32_t(n / r));
    if (it == xn) return false;
    // x^(p^(n/r)) - x must be coprime to f; since f would otherwise have an
    // irreducible factor of degree dividing n/r, and f has no such factor iff
    // gcd is 1.  Compute the gcd properly.
    Poly g = it;
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;  // subtract x
    // gcd(g, f)
    Poly A = f, B = g;
    auto deg = [](const Poly& q) {
      std::size_t d = q.size();
      while (d > 0 && q[d - 1] == 0) --d;
      return d;  // 0 means zero polynomial, else degree+1
    };
    while (deg(B) > 0) {
      // A mod B
      std::size_t db = deg(B);
      std::uint32_t lead = B[db - 1];
      std::uint32_t lead_inv = 1;
      for (std::uint32_t t = 1; t < p; ++t)
        if (lead * t % p == 1) { lead_inv = t; break; }
      Poly R = A;
      while (deg(R) >= db && deg(R) > 0) {
        std::size_t dr = deg(R);
        std::uint32_t c = R[dr - 1] * lead_inv % p;
        for (std::size_t k = 0; k < db; ++k)
          R[dr - db + k] = (R[dr - db + k] + (p - c) * B[k]) % p;
      }
      A = B;
      B = R;
    }
    if (deg(A) != 1) return false;  // nontrivial gcd
  }
  return true;
}

}  // namespace detail

// The full tower.  Immutable after construction; all operations are pure.
class FieldTower {
 public:
  // The first monic irreducible of degree n and the first non-square of F_q
  // are chosen in code order, so towers are reproducible across runs.
  static FieldTower build(std::uint32_t p, std::uint32_t n, std::uint32_t q_cap = 13) {
    if (p == 2) throw error(errc::even_characteristic, "p must be odd");
    if (!detail::is_prime_u32(p)) throw error(errc::not_prime, "p = " + std::to_string(p));
    if (n < 1) throw error(errc::usage_error, "n must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      q *= p;
      if (q > q_cap)
        throw error(errc::size_cap_exceeded,
                    "q = p^n exceeds cap " + std::to_string(q_cap));
    }
    if (q > 255)  // element codes at the quadratic level are 16-bit
      throw error(errc::size_cap_exceeded, "q > 255 unsupported");

    FieldTower t;
    t.p_ = p;
    t.n_ = n;
    t.q_ = std::uint32_t(q);
    t.q_cap_ = q_cap;
    t.find_modulus();
    t.build_base();
    t.pick_delta();
    t.build_ext();
    return t;
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t q_cap() const { return q_cap_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  FqElem delta() const { return {delta_}; }
  Fq2Elem tau() const { return {{0}, {1}}; }

  const SmallField& base() const { return base_; }
  const SmallField& ext() const { return ext_; }

  // Coefficient vector (c_0,...,c_{n-1}) of a base element.
  std::vector<std::uint32_t> coeffs(FqElem x) const {
    std::vector<std::uint32_t> c(n_);
    std::uint32_t v = x.v;
    for (std::uint32_t i = 0; i < n_; ++i) {
      c[i] = v % p_;
      v /= p_;
    }
    return c;
  }

  felem ext_code(Fq2Elem x) const { return felem(x.a.v + q_ * x.b.v); }
  Fq2Elem ext_elem(felem code) const {
    return {{felem(code % q_)}, {felem(code / q_)}};
  }
  Fq2Elem embed(FqElem x) const { return {x, {0}}; }

  // x -> x^q; in coordinates (a,b) -> (a,-b) since t^q = -t.
  Fq2Elem frobenius(Fq2Elem x) const { return ext_elem(frob_tab_[ext_code(x)]); }
  felem frobenius_code(felem code) const { return frob_tab_[code]; }

  // x -> x x^q = a^2 - delta b^2.
  FqElem norm(Fq2Elem x) const { return {norm_tab_[ext_code(x)]}; }

  // x -> x + x^q = 2a.
  FqElem trace(Fq2Elem x) const { return {base_.add(x.a.v, x.a.v)}; }

  // x^((q-1)/2) in {+1,-1}; +1 iff x is a nonzero square.
  int quadratic_character(FqElem x) const {
    if (x.v == 0) throw error(errc::zero_input, "quadratic character of zero");
    felem r = base_.pow(x.v, (q_ - 1) / 2);
    if (r == 1) return +1;
    if (r == base_.neg(1)) return -1;
    throw error(errc::internal_mismatch, "character value not +-1");
  }

  // ker(norm): the q+1 elements of F_{q^2}^x of norm 1, in code order.
  std::vector<Fq2Elem> norm_one_subgroup() const {
    std::vector<Fq2Elem> out;
    out.reserve(q_ + 1);
    for (std::uint32_t code = 1; code < ext_.size; ++code)
      if (norm_tab_[code] == 1) out.push_back(ext_elem(felem(code)));
    if (out.size() != q_ + 1)
      throw error(errc::internal_mismatch, "norm-one subgroup has wrong size");
    return out;
  }

 private:
  void find_modulus() {
    modulus_.assign(n_ + 1, 0);
    modulus_[n_] = 1;
    if (n_ == 1) return;  // f = x
    for (std::uint32_t code = 0; code < q_; ++code) {
      detail::Poly f(n_ + 1, 0);
      f[n_] = 1;
      std::uint32_t v = code;
      for (std::uint32_t i = 0; i < n_; ++i) {
        f[i] = v % p_;
        v /= p_;
      }
      if (detail::poly_irreducible(f, p_)) {
        for (std::uint32_t i = 0; i <= n_; ++i) modulus_[i] = f[i];
        return;
      }
    }
    throw error(errc::internal_mismatch, "no irreducible modulus found");
  }

  void build_base() {
    base_.p = p_;
    base_.deg = n_;
    base_.size = q_;
    const std::uint32_t q = q_;
    base_.add_tab.resize(std::size_t(q) * q);
    base_.mul_tab.resize(std::size_t(q) * q);
    base_.neg_tab.resize(q);
    base_.inv_tab.assign(q, 0);

    detail::Poly mod(modulus_.begin(), modulus_.end());
    auto decode = [&](std::uint32_t code) {
      detail::Poly c(n_);
      for (std::uint32_t i = 0; i < n_; ++i) {
        c[i] = code % p_;
        code /= p_;
      }
      return c;
    };
    auto encode = [&](const detail::Poly& c) {
      std::uint32_t code = 0, w = 1;
      for (std::uint32_t i = 0; i < n_; ++i) {
        code += c[i] * w;
        w *= p_;
      }
      return code;
    };

    for (std::uint32_t a = 0; a < q; ++a) {
      detail::Poly ca = decode(a);
      detail::Poly na(n_);
      for (std::uint32_t i = 0; i < n_; ++i) na[i] = (p_ - ca[i]) % p_;
      base_.neg_tab[a] = felem(encode(na));
      for (std::uint32_t b = 0; b < q; ++b) {
        detail::Poly cb = decode(b);
        detail::Poly s(n_);
        for (std::uint32_t i = 0; i < n_; ++i) s[i] = (ca[i] + cb[i]) % p_;
        base_.add_tab[std::size_t(a) * q + b] = felem(encode(s));
        base_.mul_tab[std::size_t(a) * q + b] =
            felem(encode(detail::poly_mul_mod(ca, cb, mod, p_)));
      }
    }
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 1; b < q; ++b)
        if (base_.mul_tab[std::size_t(a) * q + b] == 1) {
          base_.inv_tab[a] = felem(b);
          break;
        }
  }

  void pick_delta() {
    std::vector<bool> is_square(q_, false);
    for (std::uint32_t a = 1; a < q_; ++a) is_square[base_.mul(felem(a), felem(a))] = true;
    for (std::uint32_t a = 1; a < q_; ++a)
      if (!is_square[a]) {
        delta_ = felem(a);
        return;
      }
    throw error(errc::internal_mismatch, "no non-square in F_q (q even?)");
  }

  void build_ext() {
    const std::uint32_t q = q_, m = q * q;
    ext_.p = p_;
    ext_.deg = 2 * n_;
    ext_.size = m;
    ext_.add_tab.resize(std::size_t(m) * m);
    ext_.mul_tab.resize(std::size_t(m) * m);
    ext_.neg_tab.resize(m);
    ext_.inv_tab.assign(m, 0);
    frob_tab_.resize(m);
    norm_tab_.resize(m);

    const SmallField& F = base_;
    for (std::uint32_t x = 0; x < m; ++x) {
      felem a = felem(x % q), b = felem(x / q);
      ext_.neg_tab[x] = felem(F.neg(a) + q * F.neg(b));
      frob_tab_[x] = felem(a + q * F.neg(b));
      norm_tab_[x] = F.sub(F.mul(a, a), F.mul(delta_, F.mul(b, b)));
      for (std::uint32_t y = 0; y < m; ++y) {
        felem c = felem(y % q), d = felem(y / q);
        ext_.add_tab[std::size_t(x) * m + y] = felem(F.add(a, c) + q * F.add(b, d));
        felem re = F.add(F.mul(a, c), F.mul(delta_, F.mul(b, d)));
        felem im = F.add(F.mul(a, d), F.mul(b, c));
        ext_.mul_tab[std::size_t(x) * m + y] = felem(re + q * im);
      }
    }
    // x^-1 = frob(x)/norm(x)
    for (std::uint32_t x = 1; x < m; ++x) {
      felem ni = F.inv(norm_tab_[x]);
      felem fx = frob_tab_[x];
      ext_.inv_tab[x] = felem(F.mul(felem(fx % q), ni) + q * F.mul(felem(fx / q), ni));
    }
  }

  std::uint32_t p_ = 0, n_ = 0, q_ = 0, q_cap_ = 0;
  std::vector<std::uint32_t> modulus_;  // little-endian, monic
  felem delta_ = 0;
  SmallField base_, ext_;
  std::vector<felem> frob_tab_, norm_tab_;
};

inline FieldTower build_tower(std::uint32_t p, std::uint32_t n, std::uint32_t q_cap = 13) {
  return FieldTower::build(p, n, q_cap);
}

}  // namespace stbranch
