#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mackey/ring.hpp"

namespace mackey {

using Subgroup = std::vector<int>;  // sorted element indices

class SubgroupLattice;

/// Finite group given by its multiplication table; element 0 is the identity.
class Group {
 public:
  static constexpr int kLatticeBound = 48;

  Group() : Group(std::vector<std::vector<int>>{{0}}) {}

  /// Validates the group laws. If the identity is not at index 0 the
  /// elements are relabelled so that it is.
  explicit Group(std::vector<std::vector<int>> table) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw DomainError("group table is empty");
    for (auto& row : table) {
      if (static_cast<int>(row.size()) != n) throw DomainError("group table is not square");
      std::vector<char> seen(n, 0);
      for (int x : row) {
        if (x < 0 || x >= n) throw DomainError("group table entry out of range");
        if (seen[x]) throw DomainError("group table row is not a bijection");
        seen[x] = 1;
      }
    }
    for (int j = 0; j < n; ++j) {
      std::vector<char> seen(n, 0);
      for (int i = 0; i < n; ++i) {
        if (seen[table[i][j]]) throw DomainError("group table column is not a bijection");
        seen[table[i][j]] = 1;
      }
    }
    int e = -1;
    for (int i = 0; i < n && e < 0; ++i) {
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) ok = table[i][j] == j && table[j][i] == j;
      if (ok) e = i;
    }
    if (e < 0) throw DomainError("group table has no identity");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            throw DomainError("group table is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                              "," + std::to_string(c) + ")");
    if (e != 0) {
      // swap labels 0 and e
      auto relabel = [&](int x) { return x == 0 ? e : (x == e ? 0 : x); };
      std::vector<std::vector<int>> t(n, std::vector<int>(n));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[relabel(a)][relabel(b)] = relabel(table[a][b]);
      table = std::move(t);
    }
    data_ = std::make_shared<Data>();
    data_->table = std::move(table);
    data_->inv.assign(n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (data_->table[a][b] == 0) data_->inv[a] = b;
  }

  /// Closure of the given permutations (index arrays). Elements are sorted
  /// lexicographically as permutations, so the identity comes first.
  static Group from_permutations(const std::vector<std::vector<int>>& gens, std::size_t max_order = 100000) {
    if (gens.empty()) return Group();
    const std::size_t deg = gens.front().size();
    for (auto& g : gens) {
      if (g.size() != deg) throw DomainError("permutation generators have different degrees");
      std::vector<char> seen(deg, 0);
      for (int x : g) {
        if (x < 0 || static_cast<std::size_t>(x) >= deg || seen[x]) throw DomainError("generator is not a permutation");
        seen[x] = 1;
      }
    }
    std::vector<int> id(deg);
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<int>> elems{id};
    std::vector<std::vector<int>> frontier{id};
    auto mul = [&](const std::vector<int>& a, const std::vector<int>& b) {
      // (a*b)(x) = a(b(x))
      std::vector<int> c(deg);
      for (std::size_t x = 0; x < deg; ++x) c[x] = a[b[x]];
      return c;
    };
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (auto& x : frontier)
        for (auto& g : gens) {
          auto y = mul(g, x);
          if (elems.insert(y).second) {
            next.push_back(y);
            if (elems.size() > max_order) throw DomainError("permutation group too large");
          }
        }
      frontier = std::move(next);
    }
    std::vector<std::vector<int>> list(elems.begin(), elems.end());
    std::map<std::vector<int>, int> idx;
    for (std::size_t i = 0; i < list.size(); ++i) idx[list[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> table(list.size(), std::vector<int>(list.size()));
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = 0; b < list.size(); ++b) table[a][b] = idx[mul(list[a], list[b])];
    Group G(table);
    G.data_->perms = list;
    return G;
  }

  static Group cyclic(int n) {
    if (n < 1) throw DomainError("cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return Group(t);
  }

  /// Element (a, b) has index a * |B| + b.
  static Group direct_product(const Group& A, const Group& B) {
    int na = A.order(), nb = B.order();
    std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
    for (int a1 = 0; a1 < na; ++a1)
      for (int b1 = 0; b1 < nb; ++b1)
        for (int a2 = 0; a2 < na; ++a2)
          for (int b2 = 0; b2 < nb; ++b2) t[a1 * nb + b1][a2 * nb + b2] = A.mul(a1, a2) * nb + B.mul(b1, b2);
    return Group(t);
  }

  /// Dihedral group of the given (even) order: rotations r^k are 0..m-1, reflections r^k s are m..2m-1.
  static Group dihedral(int order) {
    if (order < 2 || order % 2) throw DomainError("dihedral group order must be even and >= 2");
    int m = order / 2;
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int x = 0; x < order; ++x)
      for (int y = 0; y < order; ++y) {
        int kx = x % m, sx = x / m, ky = y % m, sy = y / m;
        // r^kx s^sx r^ky s^sy = r^(kx +- ky) s^(sx+sy)
        int k = sx ? (kx - ky + m) % m : (kx + ky) % m;
        t[x][y] = k + m * ((sx + sy) % 2);
      }
    return Group(t);
  }

  static Group klein_four() { return direct_product(cyclic(2), cyclic(2)); }
  static Group symmetric3() { return from_permutations({{1, 0, 2}, {1, 2, 0}}); }

  int order() const { return static_cast<int>(data_->table.size()); }
  int mul(int a, int b) const { return data_->table[a][b]; }
  int inv(int a) const { return data_->inv[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  const std::vector<std::vector<int>>& table() const { return data_->table; }
  const std::vector<std::vector<int>>& permutations() const { return data_->perms; }

  int element_order(int g) const {
    int k = 1;
    for (int x = g; x != 0; x = mul(x, g)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (int a = 0; a < order(); ++a)
      for (int b = 0; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool is_subgroup(const Subgroup& H) const {
    if (H.empty() || H.front() != 0) return false;
    if (!std::is_sorted(H.begin(), H.end())) return false;
    for (int a : H) {
      if (a < 0 || a >= order()) return false;
      for (int b : H)
        if (!std::binary_search(H.begin(), H.end(), mul(a, b))) return false;
    }
    return true;
  }

  /// Subgroup generated by the given elements.
  Subgroup generate(const std::vector<int>& gens) const {
    std::vector<char> in(order(), 0);
    std::vector<int> elems{0};
    in[0] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (int g : gens) {
        int y = mul(elems[i], g);
        if (!in[y]) {
          in[y] = 1;
          elems.push_back(y);
        }
      }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  Subgroup conjugate(int g, const Subgroup& H) const {
    Subgroup K;
    K.reserve(H.size());
    for (int h : H) K.push_back(conj(g, h));
    std::sort(K.begin(), K.end());
    return K;
  }

  bool is_normal(const Subgroup& N) const {
    for (int g = 0; g < order(); ++g)
      if (conjugate(g, N) != N) return false;
    return true;
  }

  const SubgroupLattice& lattice() const;

  bool same_as(const Group& o) const { return data_ == o.data_ || data_->table == o.data_->table; }

 private:
  struct Data {
    std::vector<std::vector<int>> table;
    std::vector<int> inv;
    std::vector<std::vector<int>> perms;
    std::once_flag lattice_once;
    std::shared_ptr<SubgroupLattice> lattice;
  };
  std::shared_ptr<Data> data_;
};

inline bool contains(const Subgroup& H, int x) { return std::binary_search(H.begin(), H.end(), x); }
inline bool is_subset(const Subgroup& K, const Subgroup& H) {
  return std::includes(H.begin(), H.end(), K.begin(), K.end());
}
inline Subgroup intersect(const Subgroup& A, const Subgroup& B) {
  Subgroup C;
  std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(C));
  return C;
}

/// All subgroups ordered by (order, element list), with conjugacy and inclusion data.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(const Group& G) {
    if (G.order() > Group::kLatticeBound)
      throw DomainError("subgroup lattice: group order " + std::to_string(G.order()) + " exceeds bound " +
                        std::to_string(Group::kLatticeBound));
    std::set<Subgroup> found;
    std::vector<Subgroup> queue{Subgroup{0}};
    found.insert(Subgroup{0});
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Subgroup S = queue[i];
      for (int g = 0; g < G.order(); ++g) {
        if (mackey::contains(S, g)) continue;
        std::vector<int> gens(S.begin(), S.end());
        gens.push_back(g);
        Subgroup T = G.generate(gens);
        if (found.insert(T).second) queue.push_back(T);
      }
    }
    subs_.assign(found.begin(), found.end());
    std::stable_sort(subs_.begin(), subs_.end(),
                     [](const Subgroup& a, const Subgroup& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    for (std::size_t i = 0; i < subs_.size(); ++i) index_[subs_[i]] = static_cast<int>(i);
    const int ns = size();
    conj_.assign(G.order(), std::vector<int>(ns));
    for (int g = 0; g < G.order(); ++g)
      for (int h = 0; h < ns; ++h) conj_[g][h] = index_.at(G.conjugate(g, subs_[h]));
    class_of_.assign(ns, -1);
    for (int h = 0; h < ns; ++h) {
      if (class_of_[h] >= 0) continue;
      int c = static_cast<int>(classes_.size());
      classes_.emplace_back();
      std::set<int> members;
      for (int g = 0; g < G.order(); ++g) members.insert(conj_[g][h]);
      for (int m : members) {
        class_of_[m] = c;
        classes_.back().push_back(m);
      }
    }
    normalizer_.resize(ns);
    for (int h = 0; h < ns; ++h) {
      Subgroup N;
      for (int g = 0; g < G.order(); ++g)
        if (conj_[g][h] == h) N.push_back(g);
      normalizer_[h] = index_.at(N);
    }
    incl_.assign(ns, std::vector<char>(ns, 0));
    for (int h = 0; h < ns; ++h)
      for (int k = 0; k < ns; ++k) incl_[h][k] = is_subset(subs_[k], subs_[h]);
  }

  int size() const { return static_cast<int>(subs_.size()); }
  const Subgroup& subgroup(int i) const { return subs_[i]; }
  const std::vector<Subgroup>& subgroups() const { return subs_; }
  int index_of(const Subgroup& H) const {
    auto it = index_.find(H);
    if (it == index_.end()) throw DomainError("not a subgroup");
    return it->second;
  }
  bool has(const Subgroup& H) const { return index_.count(H) > 0; }
  int trivial() const { return 0; }
  int whole() const { return size() - 1; }
  int order_of(int h) const { return static_cast<int>(subs_[h].size()); }

  /// Index of g H g^-1.
  int conj(int g, int h) const { return conj_[g][h]; }
  /// K is a subgroup of H.
  bool contains(int h, int k) const { return incl_[h][k]; }
  int normalizer(int h) const { return normalizer_[h]; }

  int class_count() const { return static_cast<int>(classes_.size()); }
  int class_of(int h) const { return class_of_[h]; }
  const std::vector<int>& class_members(int c) const { return classes_[c]; }
  /// Representative: the member with the least element list.
  int class_rep(int c) const { return classes_[c].front(); }

  /// Subgroups of H (indices, increasing).
  std::vector<int> subgroups_of(int h) const {
    std::vector<int> out;
    for (int k = 0; k < size(); ++k)
      if (incl_[h][k]) out.push_back(k);
    return out;
  }

 private:
  std::vector<Subgroup> subs_;
  std::map<Subgroup, int> index_;
  std::vector<std::vector<int>> conj_;
  std::vector<int> class_of_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> normalizer_;
  std::vector<std::vector<char>> incl_;
};

inline const SubgroupLattice& Group::lattice() const {
  std::call_once(data_->lattice_once, [this] { data_->lattice = std::make_shared<SubgroupLattice>(*this); });
  return *data_->lattice;
}

/// A quotient M/H of a subgroup M containing H as a normal subgroup (N_H/H or G/N).
struct Quotient {
  Group group;
  std::vector<int> proj;  // element of the ambient group -> coset index, -1 outside M
  std::vector<int> rep;   // coset index -> least element of the coset
};

/// M / H where H is normal in M (both given as subgroups of G).
inline Quotient quotient_of(const Group& G, const Subgroup& M, const Subgroup& H) {
  if (!G.is_subgroup(H) || !G.is_subgroup(M)) throw DomainError("quotient: input is not a subgroup");
  if (!is_subset(H, M)) throw DomainError("quotient: H is not contained in M");
  for (int m : M)
    if (G.conjugate(m, H) != H) throw DomainError("quotient: H is not normal in M");
  Quotient q;
  q.proj.assign(G.order(), -1);
  for (int m : M) {
    if (q.proj[m] >= 0) continue;
    int c = static_cast<int>(q.rep.size());
    q.rep.push_back(m);  // M is sorted, so m is the least element of its coset
    for (int h : H) q.proj[G.mul(m, h)] = c;
  }
  int k = static_cast<int>(q.rep.size());
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) t[a][b] = q.proj[G.mul(q.rep[a], q.rep[b])];
  q.group = Group(t);
  return q;
}

inline Quotient weyl_group(const Group& G, const Subgroup& H) {
  if (!G.is_subgroup(H)) throw DomainError("weyl_group: H is not a subgroup");
  const auto& L = G.lattice();
  return quotient_of(G, L.subgroup(L.normalizer(L.index_of(H))), H);
}

inline Quotient quotient_group(const Group& G, const Subgroup& N) {
  if (!G.is_subgroup(N) || !G.is_normal(N)) throw DomainError("quotient_group: subgroup is not normal");
  Subgroup all(G.order());
  std::iota(all.begin(), all.end(), 0);
  return quotient_of(G, all, N);
}

/// A subgroup viewed as a group in its own right; element i is to_parent[i].
struct SubgroupAsGroup {
  Group group;
  std::vector<int> to_parent;
  std::vector<int> from_parent;  // -1 outside the subgroup
};

inline SubgroupAsGroup subgroup_as_group(const Group& G, const Subgroup& H) {
  if (!G.is_subgroup(H)) throw DomainError("subgroup_as_group: not a subgroup");
  SubgroupAsGroup s;
  s.to_parent = H;
  s.from_parent.assign(G.order(), -1);
  for (std::size_t i = 0; i < H.size(); ++i) s.from_parent[H[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(H.size(), std::vector<int>(H.size()));
  for (std::size_t a = 0; a < H.size(); ++a)
    for (std::size_t b = 0; b < H.size(); ++b) t[a][b] = s.from_parent[G.mul(H[a], H[b])];
  s.group = Group(t);
  return s;
}

struct DoubleCoset {
  int rep;                  // least element of H g K
  int size;                 // |H g K|
  Subgroup intersection;    // H ∩ g K g^-1
};

/// Double cosets H\A/K inside the subgroup A (H, K ⊆ A), each with its least
/// element as representative.
inline std::vector<DoubleCoset> double_cosets_in(const Group& G, const Subgroup& A, const Subgroup& H,
                                                 const Subgroup& K) {
  std::vector<char> seen(G.order(), 0);
  std::vector<DoubleCoset> out;
  for (int g : A) {
    if (seen[g]) continue;
    int cnt = 0;
    for (int h : H)
      for (int k : K) {
        int x = G.mul(G.mul(h, g), k);
        if (!seen[x]) {
          seen[x] = 1;
          ++cnt;
        }
      }
    out.push_back({g, cnt, intersect(H, G.conjugate(g, K))});
  }
  return out;
}

/// Double cosets H\G/K.
inline std::vector<DoubleCoset> double_cosets(const Group& G, const Subgroup& H, const Subgroup& K) {
  Subgroup all(G.order());
  std::iota(all.begin(), all.end(), 0);
  return double_cosets_in(G, all, H, K);
}

inline std::string subgroup_name(const Subgroup& H) {
  std::string s = "{";
  for (std::size_t i = 0; i < H.size(); ++i) s += (i ? "," : "") + std::to_string(H[i]);
  return s + "}";
}

}  // namespace mackey
