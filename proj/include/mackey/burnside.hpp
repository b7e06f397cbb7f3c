#pragma once

#include <string>
#include <vector>

#include "mackey/gset.hpp"
#include "mackey/module.hpp"
#include "mackey/sparse_homology.hpp"

namespace mackey {

/// Element of the Burnside ring, coordinates over orbit classes [G/H]
/// ordered as in the subgroup lattice (subgroup order, then element list).
struct BurnsideElement {
  Group group;
  std::vector<Integer> coords;

  bool operator==(const BurnsideElement& o) const { return coords == o.coords; }
  bool operator!=(const BurnsideElement& o) const { return coords != o.coords; }

  BurnsideElement operator+(const BurnsideElement& o) const {
    BurnsideElement r = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
  }
  BurnsideElement scaled(const Integer& c) const {
    BurnsideElement r = *this;
    for (auto& x : r.coords) x *= c;
    return r;
  }
};

inline BurnsideElement burnside_zero(const Group& G) {
  return {G, std::vector<Integer>(G.lattice().class_count(), 0)};
}

/// The basis element [G/H] for the class with index c.
inline BurnsideElement burnside_basis(const Group& G, int c) {
  auto b = burnside_zero(G);
  b.coords.at(c) = 1;
  return b;
}

inline BurnsideElement burnside_unit(const Group& G) { return burnside_basis(G, G.lattice().class_count() - 1); }

inline BurnsideElement from_gset(const GSet& S) {
  BurnsideElement b = burnside_zero(S.group());
  auto mult = orbit_decomposition(S);
  for (std::size_t i = 0; i < mult.size(); ++i) b.coords[i] = mult[i];
  return b;
}

inline void check_same_group(const BurnsideElement& a, const BurnsideElement& b) {
  if (!a.group.same_as(b.group) || a.coords.size() != b.coords.size())
    throw DomainError("burnside: elements belong to different groups");
}

/// [G/H] * [G/K] = sum over H\G/K of [G/(H ∩ gKg^-1)], extended bilinearly.
inline BurnsideElement multiply_geometric(const BurnsideElement& a, const BurnsideElement& b) {
  check_same_group(a, b);
  const Group& G = a.group;
  const auto& L = G.lattice();
  BurnsideElement r = burnside_zero(G);
  for (int i = 0; i < L.class_count(); ++i) {
    if (a.coords[i] == 0) continue;
    for (int j = 0; j < L.class_count(); ++j) {
      if (b.coords[j] == 0) continue;
      Integer c = a.coords[i] * b.coords[j];
      for (auto& dc : double_cosets(G, L.subgroup(L.class_rep(i)), L.subgroup(L.class_rep(j))))
        r.coords[L.class_of(L.index_of(dc.intersection))] += c;
    }
  }
  return r;
}

/// m[i][j] = |[G/K_j]^{H_i}| over class representatives. Nonzero entries need
/// H_i subconjugate to K_j, so the matrix is upper triangular in the class order.
inline Matrix table_of_marks(const Group& G) {
  const auto& L = G.lattice();
  const int c = L.class_count();
  Matrix m(c, c);
  for (int i = 0; i < c; ++i) {
    const Subgroup& H = L.subgroup(L.class_rep(i));
    for (int j = 0; j < c; ++j) {
      const Subgroup& K = L.subgroup(L.class_rep(j));
      // count g with g^-1 H g ⊆ K, then divide by |K|
      long cnt = 0;
      for (int g = 0; g < G.order(); ++g) {
        bool ok = true;
        for (int h : H)
          if (!contains(K, G.conj(G.inv(g), h))) {
            ok = false;
            break;
          }
        if (ok) ++cnt;
      }
      m(i, j) = Scalar(cnt / static_cast<long>(K.size()));
    }
  }
  return m;
}

inline std::vector<Integer> marks_hom(const BurnsideElement& a) {
  Matrix M = table_of_marks(a.group);
  std::vector<Integer> out(M.rows(), 0);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out[i] += M(i, j).get_num() * a.coords[j];
  return out;
}

/// Product through the marks: multiply coordinatewise, then back-substitute.
inline BurnsideElement multiply_marks(const BurnsideElement& a, const BurnsideElement& b) {
  check_same_group(a, b);
  Matrix M = table_of_marks(a.group);
  auto ma = marks_hom(a), mb = marks_hom(b);
  const std::size_t c = M.rows();
  std::vector<Scalar> x(c);
  for (std::size_t ii = c; ii-- > 0;) {
    Scalar s(ma[ii] * mb[ii]);
    for (std::size_t j = ii + 1; j < c; ++j) s -= M(ii, j) * x[j];
    x[ii] = s / M(ii, ii);
  }
  BurnsideElement r = burnside_zero(a.group);
  for (std::size_t i = 0; i < c; ++i) {
    if (x[i].get_den() != 1)
      throw std::logic_error("multiply_marks: non-integral coordinate " + x[i].get_str() + " (marks system broken)");
    r.coords[i] = x[i].get_num();
  }
  return r;
}

/// Integer homology H_0..H_dmax of a finite group (trivial coefficients)
/// from the normalized bar complex truncated at degree dmax + 1.
inline std::vector<FPModule> group_homology_bar(const Group& W, int dmax, std::size_t cell_bound = 2000000) {
  if (dmax < 0 || dmax > 4) throw DomainError("group_homology_bar: degree bound must lie in [0, 4]");
  const std::size_t b = static_cast<std::size_t>(W.order() - 1);
  SparseCells C;
  std::size_t cnt = 1;
  for (int n = 0; n <= dmax + 1; ++n) {
    C.count.push_back(cnt);
    if (b > 0 && cnt > cell_bound / b) {
      if (n < dmax + 1) throw DomainError("group_homology_bar: bar complex exceeds cell bound");
    }
    cnt *= b;
  }
  if (C.count.back() > cell_bound) throw DomainError("group_homology_bar: bar complex exceeds cell bound");
  // a cell of degree n is a tuple of non-identity elements, digit k = element - 1
  C.boundary = [&W, b](int n, std::size_t key, std::vector<std::pair<std::size_t, long long>>& out) {
    std::vector<int> g(n);
    for (int k = n - 1; k >= 0; --k) {
      g[k] = static_cast<int>(key % b) + 1;
      key /= b;
    }
    auto encode = [&](const std::vector<int>& t) -> long long {
      std::size_t r = 0;
      for (int x : t) {
        if (x == 0) return -1;
        r = r * b + static_cast<std::size_t>(x - 1);
      }
      return static_cast<long long>(r);
    };
    for (int i = 0; i <= n; ++i) {
      std::vector<int> t;
      if (i == 0)
        t.assign(g.begin() + 1, g.end());
      else if (i == n)
        t.assign(g.begin(), g.end() - 1);
      else {
        for (int k = 0; k < n; ++k) {
          if (k == i - 1)
            t.push_back(W.mul(g[k], g[k + 1]));
          else if (k != i)
            t.push_back(g[k]);
        }
      }
      long long e = encode(t);
      if (e >= 0) out.push_back({static_cast<std::size_t>(e), (i % 2) ? -1 : 1});
    }
  };
  return sparse_homology(C, dmax);
}

/// For each subgroup class, H_i(W_H, Z) for 0 <= i <= dmax.
inline std::vector<std::vector<FPModule>> derived_burnside_ranks(const Group& G, int dmax) {
  const auto& L = G.lattice();
  std::vector<std::vector<FPModule>> out;
  for (int c = 0; c < L.class_count(); ++c) {
    Quotient W = weyl_group(G, L.subgroup(L.class_rep(c)));
    out.push_back(group_homology_bar(W.group, dmax));
  }
  return out;
}

}  // namespace mackey
