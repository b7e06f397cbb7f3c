#pragma once

#include <map>
#include <string>
#include <vector>

#include "mackey/group.hpp"

namespace mackey {

/// Finite G-set given by an action table action[g][x].
class GSet {
 public:
  GSet() = default;
  GSet(Group G, int size, std::vector<std::vector<int>> action)
      : G_(std::move(G)), size_(size), act_(std::move(action)) {
    if (static_cast<int>(act_.size()) != G_.order()) throw DomainError("gset: action needs one row per group element");
    for (auto& row : act_) {
      if (static_cast<int>(row.size()) != size_) throw DomainError("gset: action row has wrong length");
      for (int x : row)
        if (x < 0 || x >= size_) throw DomainError("gset: action entry out of range");
    }
    for (int x = 0; x < size_; ++x)
      if (act_[0][x] != x) throw DomainError("gset: identity does not act trivially");
    for (int g = 0; g < G_.order(); ++g)
      for (int h = 0; h < G_.order(); ++h)
        for (int x = 0; x < size_; ++x)
          if (act_[G_.mul(g, h)][x] != act_[g][act_[h][x]])
            throw DomainError("gset: action is not compatible with multiplication");
  }

  static GSet empty(const Group& G) { return GSet(G, 0, std::vector<std::vector<int>>(G.order())); }
  static GSet point(const Group& G) { return GSet(G, 1, std::vector<std::vector<int>>(G.order(), {0})); }

  const Group& group() const { return G_; }
  int size() const { return size_; }
  int act(int g, int x) const { return act_[g][x]; }
  const std::vector<std::vector<int>>& action() const { return act_; }

  Subgroup stabilizer(int x) const {
    Subgroup S;
    for (int g = 0; g < G_.order(); ++g)
      if (act_[g][x] == x) S.push_back(g);
    return S;
  }

  bool is_fixed(int x, const Subgroup& H) const {
    for (int h : H)
      if (act_[h][x] != x) return false;
    return true;
  }

 private:
  Group G_;
  int size_ = 0;
  std::vector<std::vector<int>> act_;
};

/// Equivariant map of G-sets.
struct GMap {
  GSet source, target;
  std::vector<int> map;

  bool is_equivariant() const {
    if (static_cast<int>(map.size()) != source.size()) return false;
    for (int x : map)
      if (x < 0 || x >= target.size()) return false;
    for (int g = 0; g < source.group().order(); ++g)
      for (int x = 0; x < source.size(); ++x)
        if (map[source.act(g, x)] != target.act(g, map[x])) return false;
    return true;
  }
  void check() const {
    if (!is_equivariant()) throw DomainError("gmap: map is not equivariant");
  }
  int operator()(int x) const { return map[x]; }
};

inline GMap identity_map(const GSet& S) {
  std::vector<int> m(S.size());
  for (int i = 0; i < S.size(); ++i) m[i] = i;
  return {S, S, m};
}

inline GMap compose(const GMap& g, const GMap& f) {
  std::vector<int> m(f.source.size());
  for (int i = 0; i < f.source.size(); ++i) m[i] = g.map[f.map[i]];
  return {f.source, g.target, m};
}

/// Coset space G/H; point i is the coset whose least element is the i-th
/// smallest such representative, so point 0 is H itself.
inline GSet orbit(const Group& G, const Subgroup& H) {
  if (!G.is_subgroup(H)) throw DomainError("orbit: not a subgroup");
  std::vector<int> label(G.order(), -1), rep;
  for (int g = 0; g < G.order(); ++g) {
    if (label[g] >= 0) continue;
    int c = static_cast<int>(rep.size());
    rep.push_back(g);
    for (int h : H) label[G.mul(g, h)] = c;
  }
  int n = static_cast<int>(rep.size());
  std::vector<std::vector<int>> act(G.order(), std::vector<int>(n));
  for (int g = 0; g < G.order(); ++g)
    for (int x = 0; x < n; ++x) act[g][x] = label[G.mul(g, rep[x])];
  return GSet(G, n, act);
}

/// Least element of each coset of orbit(G, H), indexed by point.
inline std::vector<int> coset_reps(const Group& G, const Subgroup& H) {
  std::vector<char> seen(G.order(), 0);
  std::vector<int> rep;
  for (int g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    rep.push_back(g);
    for (int h : H) seen[G.mul(g, h)] = 1;
  }
  return rep;
}

struct OrbitInfo {
  int base;                 // least point of the orbit
  std::vector<int> points;  // sorted
  int stabilizer;           // lattice index of Stab(base)
  int cls;                  // conjugacy class of the stabilizer
};

/// Orbits ordered by their least point.
inline std::vector<OrbitInfo> orbits(const GSet& S) {
  const Group& G = S.group();
  std::vector<char> seen(S.size(), 0);
  std::vector<OrbitInfo> out;
  const auto& L = G.lattice();
  for (int x = 0; x < S.size(); ++x) {
    if (seen[x]) continue;
    OrbitInfo o;
    o.base = x;
    for (int g = 0; g < G.order(); ++g) {
      int y = S.act(g, x);
      if (!seen[y]) {
        seen[y] = 1;
        o.points.push_back(y);
      }
    }
    std::sort(o.points.begin(), o.points.end());
    o.stabilizer = L.index_of(S.stabilizer(x));
    o.cls = L.class_of(o.stabilizer);
    out.push_back(std::move(o));
  }
  return out;
}

/// Multiplicity of each subgroup conjugacy class among the orbits of S.
inline std::vector<int> orbit_decomposition(const GSet& S) {
  const auto& L = S.group().lattice();
  std::vector<int> mult(L.class_count(), 0);
  for (auto& o : orbits(S)) ++mult[o.cls];
  return mult;
}

inline GSet disjoint_union(const GSet& A, const GSet& B) {
  const Group& G = A.group();
  std::vector<std::vector<int>> act(G.order(), std::vector<int>(A.size() + B.size()));
  for (int g = 0; g < G.order(); ++g) {
    for (int x = 0; x < A.size(); ++x) act[g][x] = A.act(g, x);
    for (int y = 0; y < B.size(); ++y) act[g][A.size() + y] = A.size() + B.act(g, y);
  }
  return GSet(G, A.size() + B.size(), act);
}

/// Cartesian product; point (x, y) has index x * |B| + y.
inline GSet product(const GSet& A, const GSet& B) {
  const Group& G = A.group();
  int n = A.size() * B.size();
  std::vector<std::vector<int>> act(G.order(), std::vector<int>(n));
  for (int g = 0; g < G.order(); ++g)
    for (int x = 0; x < A.size(); ++x)
      for (int y = 0; y < B.size(); ++y) act[g][x * B.size() + y] = A.act(g, x) * B.size() + B.act(g, y);
  return GSet(G, n, act);
}

struct FiberedProduct {
  GSet set;
  GMap p1, p2;
  std::vector<std::pair<int, int>> pairs;  // point -> (x, y)
};

/// {(x, y) : f(x) = g(y)} with the diagonal action, pairs in lexicographic order.
inline FiberedProduct fibered_product(const GMap& f, const GMap& g) {
  if (!f.target.group().same_as(g.target.group()) || f.target.size() != g.target.size())
    throw DomainError("fibered_product: maps have different targets");
  const Group& G = f.source.group();
  FiberedProduct fp;
  std::map<std::pair<int, int>, int> idx;
  for (int x = 0; x < f.source.size(); ++x)
    for (int y = 0; y < g.source.size(); ++y)
      if (f.map[x] == g.map[y]) {
        idx[{x, y}] = static_cast<int>(fp.pairs.size());
        fp.pairs.push_back({x, y});
      }
  int n = static_cast<int>(fp.pairs.size());
  std::vector<std::vector<int>> act(G.order(), std::vector<int>(n));
  for (int h = 0; h < G.order(); ++h)
    for (int i = 0; i < n; ++i)
      act[h][i] = idx.at({f.source.act(h, fp.pairs[i].first), g.source.act(h, fp.pairs[i].second)});
  fp.set = GSet(G, n, act);
  std::vector<int> m1(n), m2(n);
  for (int i = 0; i < n; ++i) {
    m1[i] = fp.pairs[i].first;
    m2[i] = fp.pairs[i].second;
  }
  fp.p1 = {fp.set, f.source, m1};
  fp.p2 = {fp.set, g.source, m2};
  return fp;
}

struct FixedPointSet {
  GSet set;                // over the Weyl group (or G/N)
  Quotient quotient;       // the acting quotient group
  std::vector<int> points; // index -> point of the original set
};

/// S^H as a set acting group M/H, where M normalizes H (M = N_H for the Weyl action).
inline FixedPointSet fixed_points_by(const GSet& S, const Subgroup& H, const Quotient& q) {
  FixedPointSet fp;
  fp.quotient = q;
  std::vector<int> idx(S.size(), -1);
  for (int x = 0; x < S.size(); ++x)
    if (S.is_fixed(x, H)) {
      idx[x] = static_cast<int>(fp.points.size());
      fp.points.push_back(x);
    }
  int n = static_cast<int>(fp.points.size());
  const Group& W = q.group;
  std::vector<std::vector<int>> act(W.order(), std::vector<int>(n));
  for (int w = 0; w < W.order(); ++w)
    for (int i = 0; i < n; ++i) act[w][i] = idx[S.act(q.rep[w], fp.points[i])];
  fp.set = GSet(W, n, act);
  return fp;
}

inline FixedPointSet fixed_points(const GSet& S, const Subgroup& H) {
  return fixed_points_by(S, H, weyl_group(S.group(), H));
}

/// S^N for N normal, as a G/N-set.
inline FixedPointSet fixed_points_normal(const GSet& S, const Subgroup& N) {
  return fixed_points_by(S, N, quotient_group(S.group(), N));
}

/// f^N : S^N -> T^N for the quotient-group action.
inline GMap fixed_points_map(const GMap& f, const FixedPointSet& src, const FixedPointSet& tgt) {
  std::map<int, int> tidx;
  for (std::size_t i = 0; i < tgt.points.size(); ++i) tidx[tgt.points[i]] = static_cast<int>(i);
  std::vector<int> m(src.points.size());
  for (std::size_t i = 0; i < src.points.size(); ++i) m[i] = tidx.at(f.map[src.points[i]]);
  return {src.set, tgt.set, m};
}

/// Orbits of the product [G/H] x [G/K] are indexed by double cosets; this
/// is the disjoint union of the orbits [G/(H ∩ gKg^-1)].
inline GSet induced_from_double_cosets(const Group& G, const Subgroup& H, const Subgroup& K) {
  GSet out = GSet::empty(G);
  for (auto& dc : double_cosets(G, H, K)) out = disjoint_union(out, orbit(G, dc.intersection));
  return out;
}

}  // namespace mackey
