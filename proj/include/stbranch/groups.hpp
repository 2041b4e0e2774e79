#pragma once

// Rank-one matrix groups over a SmallField: exhaustive enumeration of
// SL2/PGL2 in canonical form, conjugacy classes, class multiplication
// coefficients, stabilizers and subgroup closures.
//
// A CanonMat is four element codes (a,b,c,d).  For SL2 the matrix itself is
// canonical (det = 1); for PGL2 the representative is scaled so the first
// nonzero entry in scan order a,b,c,d equals 1, making group equality
// structural equality.

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "stbranch/errors.hpp"
#include "stbranch/fields.hpp"

namespace stbranch {

enum class Family { SL2, PGL2 };

inline const char* family_name(Family f) { return f == Family::SL2 ? "sl2" : "pgl2"; }

using CanonMat = std::array<felem, 4>;

inline std::uint64_t pack_mat(const CanonMat& m) {
  return std::uint64_t(m[0]) | std::uint64_t(m[1]) << 16 | std::uint64_t(m[2]) << 32 |
         std::uint64_t(m[3]) << 48;
}

inline CanonMat mat_mul(const SmallField& F, const CanonMat& x, const CanonMat& y) {
  return {F.add(F.mul(x[0], y[0]), F.mul(x[1], y[2])),
          F.add(F.mul(x[0], y[1]), F.mul(x[1], y[3])),
          F.add(F.mul(x[2], y[0]), F.mul(x[3], y[2])),
          F.add(F.mul(x[2], y[1]), F.mul(x[3], y[3]))};
}

inline felem mat_det(const SmallField& F, const CanonMat& m) {
  return F.sub(F.mul(m[0], m[3]), F.mul(m[1], m[2]));
}

inline felem mat_trace(const SmallField& F, const CanonMat& m) { return F.add(m[0], m[3]); }

// Inverse scaled by det; exact inverse for SL2, projectively correct always.
inline CanonMat mat_inv_proj(const SmallField& F, const CanonMat& m) {
  felem di = F.inv(mat_det(F, m));
  return {F.mul(m[3], di), F.mul(F.neg(m[1]), di), F.mul(F.neg(m[2]), di), F.mul(m[0], di)};
}

inline CanonMat canonicalize(Family fam, const SmallField& F, CanonMat m) {
  if (fam == Family::SL2) return m;
  for (int k = 0; k < 4; ++k)
    if (m[k] != 0) {
      felem s = F.inv(m[k]);
      return {F.mul(m[0], s), F.mul(m[1], s), F.mul(m[2], s), F.mul(m[3], s)};
    }
  throw error(errc::internal_mismatch, "zero matrix has no canonical form");
}

// Standard generators: unipotents over an F_p-basis plus, for PGL2, the Weyl
// element and a primitive diagonal twist (Bruhat decomposition covers the
// rest).  Verified against the full enumeration at table build time.
inline std::vector<CanonMat> family_generators(Family fam, const SmallField& F) {
  std::vector<CanonMat> gens;
  felem basis = 1;
  for (std::uint32_t k = 0; k < F.deg; ++k) {
    gens.push_back(canonicalize(fam, F, {1, basis, 0, 1}));
    if (fam == Family::SL2) gens.push_back(canonicalize(fam, F, {1, 0, basis, 1}));
    basis = felem(basis * F.p);  // code of x^k, valid since codes are base-p digits
  }
  if (fam == Family::PGL2) {
    gens.push_back(canonicalize(fam, F, {0, 1, 1, 0}));
    gens.push_back(canonicalize(fam, F, {F.primitive_element(), 0, 0, 1}));
  }
  return gens;
}

struct GroupTable {
  Family family = Family::SL2;
  SmallField field;                 // owned copy; the table is self-contained
  std::vector<CanonMat> elems;      // sorted by packed key
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::uint32_t> inv_of;
  std::vector<std::uint32_t> gens;  // indices of the family generators
  std::uint32_t identity = 0;

  std::uint32_t size() const { return std::uint32_t(elems.size()); }

  std::uint32_t lookup(const CanonMat& m) const {
    auto it = index.find(pack_mat(m));
    if (it == index.end()) throw error(errc::internal_mismatch, "element not in table");
    return it->second;
  }

  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const {
    return lookup(canonicalize(family, field, mat_mul(field, elems[i], elems[j])));
  }
  std::uint32_t inv(std::uint32_t i) const { return inv_of[i]; }

  std::uint32_t element_order(std::uint32_t i) const {
    std::uint32_t o = 1, x = i;
    while (x != identity) {
      x = mul(x, i);
      ++o;
    }
    return o;
  }
};

// Complete duplicate-free enumeration in canonical form.
inline GroupTable enumerate_group(Family fam, const SmallField& F,
                                  std::uint64_t order_cap = 20000) {
  const std::uint64_t m = F.size;
  const std::uint64_t order = m * m * m - m;
  if (order > order_cap)
    throw error(errc::size_cap_exceeded,
                "group order " + std::to_string(order) + " exceeds cap");

  GroupTable g;
  g.family = fam;
  g.field = F;

  std::vector<std::uint64_t> keys;
  keys.reserve(order);
  CanonMat mat;
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t c = 0; c < m; ++c)
        for (std::uint32_t d = 0; d < m; ++d) {
          mat = {felem(a), felem(b), felem(c), felem(d)};
          felem det = mat_det(F, mat);
          if (fam == Family::SL2) {
            if (det != 1) continue;
            keys.push_back(pack_mat(mat));
          } else {
            if (det == 0) continue;
            keys.push_back(pack_mat(canonicalize(fam, F, mat)));
          }
        }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  if (keys.size() != order)
    throw error(errc::internal_mismatch, "enumeration size mismatch");

  g.elems.reserve(keys.size());
  g.index.reserve(keys.size() * 2);
  for (std::uint64_t k : keys) {
    CanonMat e = {felem(k & 0xffff), felem(k >> 16 & 0xffff), felem(k >> 32 & 0xffff),
                  felem(k >> 48 & 0xffff)};
    g.index.emplace(k, std::uint32_t(g.elems.size()));
    g.elems.push_back(e);
  }
  g.identity = g.lookup({1, 0, 0, 1});
  g.inv_of.resize(g.size());
  for (std::uint32_t i = 0; i < g.size(); ++i)
    g.inv_of[i] = g.lookup(canonicalize(fam, F, mat_inv_proj(F, g.elems[i])));

  for (const CanonMat& gen : family_generators(fam, F)) g.gens.push_back(g.lookup(gen));

  // The generators must reach the whole table; everything downstream closes
  // orbits under them.
  std::vector<char> seen(g.size(), 0);
  std::vector<std::uint32_t> stack{g.identity};
  seen[g.identity] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::uint32_t x = stack.back();
    stack.pop_back();
    for (std::uint32_t gen : g.gens) {
      std::uint32_t y = g.mul(x, gen);
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != g.size())
    throw error(errc::internal_mismatch, "generators do not generate the group");
  return g;
}

struct ConjData {
  std::vector<std::uint32_t> reps;       // least element index per class
  std::vector<std::uint32_t> sizes;
  std::vector<std::uint32_t> class_of;   // element index -> class index
  std::vector<std::uint32_t> inverse_class;  // k -> k* with rep(k*) ~ rep(k)^-1
  std::uint32_t num_classes() const { return std::uint32_t(reps.size()); }
};

// Conjugation orbits by closure under the table generators.
inline ConjData conjugacy_data(const GroupTable& g) {
  ConjData cd;
  cd.class_of.assign(g.size(), UINT32_MAX);
  std::vector<std::uint32_t> gen_inv;
  for (std::uint32_t gen : g.gens) gen_inv.push_back(g.inv(gen));

  std::vector<std::uint32_t> stack;
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    if (cd.class_of[i] != UINT32_MAX) continue;
    std::uint32_t k = cd.num_classes();
    cd.reps.push_back(i);
    cd.sizes.push_back(0);
    cd.class_of[i] = k;
    stack.assign(1, i);
    std::uint32_t count = 1;
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      for (std::size_t s = 0; s < g.gens.size(); ++s) {
        std::uint32_t y = g.mul(g.mul(g.gens[s], x), gen_inv[s]);
        if (cd.class_of[y] == UINT32_MAX) {
          cd.class_of[y] = k;
          ++count;
          stack.push_back(y);
        }
      }
    }
    cd.sizes[k] = count;
  }

  std::uint64_t total = std::accumulate(cd.sizes.begin(), cd.sizes.end(), std::uint64_t(0));
  if (total != g.size()) throw error(errc::internal_mismatch, "class sizes do not sum to |G|");
  for (std::uint32_t k = 0; k < cd.num_classes(); ++k) {
    if (g.size() % cd.sizes[k] != 0)
      throw error(errc::internal_mismatch, "class size does not divide |G|");
    cd.inverse_class.push_back(cd.class_of[g.inv(cd.reps[k])]);
  }
  for (std::uint32_t k = 0; k < cd.num_classes(); ++k)
    if (cd.inverse_class[cd.inverse_class[k]] != k)
      throw error(errc::internal_mismatch, "inverse-class map is not an involution");
  return cd;
}

// a(i,j,k) = #{(x,y) in C_i x C_j : xy = rep(k)}.
struct ClassMultTable {
  std::uint32_t t = 0;
  std::vector<std::int64_t> a;  // flattened (i*t + j)*t + k
  std::int64_t at(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    return a[(std::size_t(i) * t + j) * t + k];
  }
};

inline ClassMultTable class_mult_coeffs(const GroupTable& g, const ConjData& cd) {
  ClassMultTable cm;
  cm.t = cd.num_classes();
  cm.a.assign(std::size_t(cm.t) * cm.t * cm.t, 0);
  // xy = z forces y = x^-1 z, so one pass over x per target class suffices.
  for (std::uint32_t k = 0; k < cm.t; ++k) {
    std::uint32_t z = cd.reps[k];
    for (std::uint32_t x = 0; x < g.size(); ++x) {
      std::uint32_t i = cd.class_of[x];
      std::uint32_t j = cd.class_of[g.mul(g.inv(x), z)];
      ++cm.a[(std::size_t(i) * cm.t + j) * cm.t + k];
    }
  }
  return cm;
}

struct Subgroup {
  std::vector<std::uint32_t> elems;  // sorted element indices
  std::uint32_t order() const { return std::uint32_t(elems.size()); }
};

template <typename Action>
Subgroup stabilizer(const GroupTable& g, Action&& act, std::uint32_t point) {
  Subgroup s;
  for (std::uint32_t i = 0; i < g.size(); ++i)
    if (act(i, point) == point) s.elems.push_back(i);
  return s;
}

inline Subgroup subgroup_closure(const GroupTable& g, const std::vector<std::uint32_t>& gens) {
  if (gens.empty()) throw error(errc::usage_error, "empty generating set");
  std::vector<char> seen(g.size(), 0);
  std::vector<std::uint32_t> stack{g.identity};
  seen[g.identity] = 1;
  while (!stack.empty()) {
    std::uint32_t x = stack.back();
    stack.pop_back();
    for (std::uint32_t gen : gens) {
      std::uint32_t y = g.mul(x, gen);
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  Subgroup s;
  for (std::uint32_t i = 0; i < g.size(); ++i)
    if (seen[i]) s.elems.push_back(i);
  if (g.size() % s.order() != 0)
    throw error(errc::internal_mismatch, "subgroup order violates Lagrange");
  return s;
}

inline std::uint64_t exponent(const GroupTable& g) {
  std::uint64_t e = 1;
  for (std::uint32_t i = 0; i < g.size(); ++i)
    e = std::lcm(e, std::uint64_t(g.element_order(i)));
  return e;
}

}  // namespace stbranch
