#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mackey/gset.hpp"
#include "mackey/mackey.hpp"
#include "mackey/sparse_homology.hpp"

namespace mackey {

using Cell = std::uint64_t;

/// Levels 0..degree() of a pointed simplicial G-set. Points of level n are
/// numbered 0..size(n)-1. Subclasses may compute the structure maps on the fly.
class SimplicialModel {
 public:
  virtual ~SimplicialModel() = default;
  virtual const Group& group() const = 0;
  virtual int degree() const = 0;
  virtual Cell size(int n) const = 0;
  virtual Cell basepoint(int n) const = 0;
  virtual Cell act(int g, int n, Cell x) const = 0;
  virtual Cell face(int n, int i, Cell x) const = 0;        // level n -> n-1
  virtual Cell degeneracy(int n, int j, Cell x) const = 0;  // level n -> n+1

  virtual bool is_degenerate(int n, Cell x) const {
    for (int j = 0; j < n; ++j)
      if (degeneracy(n - 1, j, face(n, j, x)) == x) return true;
    return false;
  }

  /// All points of level n fixed by H, sorted.
  virtual std::vector<Cell> fixed_points(const Subgroup& H, int n) const {
    std::vector<Cell> out;
    for (Cell x = 0; x < size(n); ++x) {
      bool fixed = true;
      for (int h : H)
        if (act(h, n, x) != x) {
          fixed = false;
          break;
        }
      if (fixed) out.push_back(x);
    }
    return out;
  }

  /// Fixed, nondegenerate, non-basepoint points of level n, sorted.
  virtual std::vector<Cell> fixed_cells(const Subgroup& H, int n) const {
    std::vector<Cell> out;
    for (Cell x : fixed_points(H, n))
      if (x != basepoint(n) && !is_degenerate(n, x)) out.push_back(x);
    return out;
  }
};

/// Tables for one level: act[g][x], faces[i][x] into level n-1, degens[j][x] into level n+1.
struct SimplicialLevel {
  int size = 0;
  int basepoint = 0;
  std::vector<std::vector<int>> act, faces, degens;
};

namespace detail {

class ExplicitModel : public SimplicialModel {
 public:
  ExplicitModel(Group G, std::vector<SimplicialLevel> levels) : G_(std::move(G)), lv_(std::move(levels)) {}
  const Group& group() const override { return G_; }
  int degree() const override { return static_cast<int>(lv_.size()) - 1; }
  Cell size(int n) const override { return static_cast<Cell>(lv_.at(n).size); }
  Cell basepoint(int n) const override { return static_cast<Cell>(lv_.at(n).basepoint); }
  Cell act(int g, int n, Cell x) const override { return static_cast<Cell>(lv_[n].act[g][x]); }
  Cell face(int n, int i, Cell x) const override { return static_cast<Cell>(lv_[n].faces[i][x]); }
  Cell degeneracy(int n, int j, Cell x) const override { return static_cast<Cell>(lv_[n].degens[j][x]); }
  const std::vector<SimplicialLevel>& levels() const { return lv_; }

 private:
  Group G_;
  std::vector<SimplicialLevel> lv_;
};

}  // namespace detail

struct SimplicialCheck {
  std::vector<std::string> violations;
  bool exhaustive = true;  // false when large levels were sampled
  bool ok() const { return violations.empty(); }
};

/// Structure-map checks: equivariance, basepoint, simplicial identities.
/// Levels larger than exhaustive_limit are checked on an evenly spaced sample.
inline SimplicialCheck check_simplicial(const SimplicialModel& X, Cell exhaustive_limit = 200000,
                                        std::size_t max_reports = 10) {
  SimplicialCheck rep;
  const Group& G = X.group();
  const int D = X.degree();
  auto fail = [&](const std::string& s) {
    if (rep.violations.size() < max_reports) rep.violations.push_back(s);
  };
  for (int n = 0; n <= D; ++n) {
    const Cell sz = X.size(n), b = X.basepoint(n);
    if (b >= sz) {
      fail("level " + std::to_string(n) + ": basepoint out of range");
      continue;
    }
    Cell stride = 1;
    if (sz > exhaustive_limit) {
      stride = sz / exhaustive_limit + 1;
      rep.exhaustive = false;
    }
    for (int g = 0; g < G.order(); ++g)
      if (X.act(g, n, b) != b) fail("level " + std::to_string(n) + ": basepoint not fixed");
    for (int i = 0; n > 0 && i <= n; ++i)
      if (X.face(n, i, b) != X.basepoint(n - 1)) fail("level " + std::to_string(n) + ": face moves basepoint");
    for (int j = 0; n < D && j <= n; ++j)
      if (X.degeneracy(n, j, b) != X.basepoint(n + 1)) fail("level " + std::to_string(n) + ": degeneracy moves basepoint");
    for (Cell x = 0; x < sz; x += stride) {
      const std::string at = "level " + std::to_string(n) + " point " + std::to_string(x);
      for (int g = 0; g < G.order(); ++g) {
        Cell gx = X.act(g, n, x);
        if (gx >= sz) {
          fail(at + ": action out of range");
          continue;
        }
        for (int h = 0; h < G.order(); ++h)
          if (X.act(G.mul(g, h), n, x) != X.act(g, n, X.act(h, n, x))) fail(at + ": action not compatible");
        for (int i = 0; n > 0 && i <= n; ++i)
          if (X.face(n, i, gx) != X.act(g, n - 1, X.face(n, i, x))) fail(at + ": face not equivariant");
        for (int j = 0; n < D && j <= n; ++j)
          if (X.degeneracy(n, j, gx) != X.act(g, n + 1, X.degeneracy(n, j, x))) fail(at + ": degeneracy not equivariant");
      }
      // d_i d_j = d_{j-1} d_i for i < j
      for (int j = 1; n >= 2 && j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (X.face(n - 1, i, X.face(n, j, x)) != X.face(n - 1, j - 1, X.face(n, i, x)))
            fail(at + ": d" + std::to_string(i) + "d" + std::to_string(j) + " identity");
      if (n < D) {
        for (int j = 0; j <= n; ++j)
          for (int i = 0; i <= n + 1; ++i) {
            Cell lhs = X.face(n + 1, i, X.degeneracy(n, j, x));
            Cell rhs;
            if (i < j)
              rhs = X.degeneracy(n - 1, j - 1, X.face(n, i, x));
            else if (i == j || i == j + 1)
              rhs = x;
            else
              rhs = X.degeneracy(n - 1, j, X.face(n, i - 1, x));
            if (lhs != rhs) fail(at + ": d" + std::to_string(i) + "s" + std::to_string(j) + " identity");
          }
      }
      // s_i s_j = s_{j+1} s_i for i <= j
      for (int j = 0; n + 2 <= D && j <= n; ++j)
        for (int i = 0; i <= j; ++i)
          if (X.degeneracy(n + 1, i, X.degeneracy(n, j, x)) != X.degeneracy(n + 1, j + 1, X.degeneracy(n, i, x)))
            fail(at + ": s" + std::to_string(i) + "s" + std::to_string(j) + " identity");
    }
  }
  return rep;
}

/// Truncated pointed simplicial G-set.
class PointedSimplicialGSet {
 public:
  PointedSimplicialGSet() = default;
  explicit PointedSimplicialGSet(std::shared_ptr<const SimplicialModel> m) : m_(std::move(m)) {}

  /// From explicit tables; validated exhaustively.
  static PointedSimplicialGSet from_tables(const Group& G, std::vector<SimplicialLevel> levels) {
    if (levels.empty()) throw DomainError("simplicial: need at least level 0");
    const int D = static_cast<int>(levels.size()) - 1;
    for (int n = 0; n <= D; ++n) {
      const auto& l = levels[n];
      auto bad = [&](const std::string& s) { throw DomainError("simplicial: level " + std::to_string(n) + ": " + s); };
      if (l.size <= 0) bad("pointed levels are nonempty");
      if (l.basepoint < 0 || l.basepoint >= l.size) bad("basepoint out of range");
      if (static_cast<int>(l.act.size()) != G.order()) bad("action needs one row per group element");
      if (static_cast<int>(l.faces.size()) != (n == 0 ? 0 : n + 1)) bad("wrong number of face maps");
      if (static_cast<int>(l.degens.size()) != (n == D ? 0 : n + 1)) bad("wrong number of degeneracy maps");
      auto check_row = [&](const std::vector<int>& r, int range) {
        if (static_cast<int>(r.size()) != l.size) bad("map table has wrong length");
        for (int x : r)
          if (x < 0 || x >= range) bad("map entry out of range");
      };
      for (auto& r : l.act) check_row(r, l.size);
      for (auto& r : l.faces) check_row(r, levels[n - 1].size);
      for (auto& r : l.degens) check_row(r, levels[n + 1].size);
    }
    auto m = std::make_shared<detail::ExplicitModel>(G, std::move(levels));
    auto rep = check_simplicial(*m, static_cast<Cell>(-1));
    if (!rep.ok()) throw DomainError("simplicial: " + rep.violations.front());
    return PointedSimplicialGSet(m);
  }

  const SimplicialModel& model() const { return *m_; }
  const Group& group() const { return m_->group(); }
  int degree() const { return m_->degree(); }
  Cell size(int n) const { return m_->size(n); }
  Cell basepoint(int n) const { return m_->basepoint(n); }
  Cell act(int g, int n, Cell x) const { return m_->act(g, n, x); }
  Cell face(int n, int i, Cell x) const { return m_->face(n, i, x); }
  Cell degeneracy(int n, int j, Cell x) const { return m_->degeneracy(n, j, x); }
  bool is_degenerate(int n, Cell x) const { return m_->is_degenerate(n, x); }
  std::vector<Cell> fixed_points(const Subgroup& H, int n) const { return m_->fixed_points(H, n); }
  std::vector<Cell> fixed_cells(const Subgroup& H, int n) const { return m_->fixed_cells(H, n); }

  /// Level n as a G-set. Throws if the level is too large to tabulate.
  GSet level_gset(int n, Cell limit = 2000000) const {
    const Cell sz = size(n);
    if (sz > limit) throw DomainError("simplicial: level " + std::to_string(n) + " too large to tabulate");
    std::vector<std::vector<int>> a(group().order(), std::vector<int>(sz));
    for (int g = 0; g < group().order(); ++g)
      for (Cell x = 0; x < sz; ++x) a[g][x] = static_cast<int>(act(g, n, x));
    return GSet(group(), static_cast<int>(sz), std::move(a));
  }

  /// Explicit copy of levels 0..D.
  std::vector<SimplicialLevel> tables(int D, Cell limit = 2000000) const {
    if (D > degree()) throw DomainError("simplicial: truncation beyond available window");
    std::vector<SimplicialLevel> out(D + 1);
    for (int n = 0; n <= D; ++n) {
      const Cell sz = size(n);
      if (sz > limit) throw DomainError("simplicial: level " + std::to_string(n) + " too large to tabulate");
      auto& l = out[n];
      l.size = static_cast<int>(sz);
      l.basepoint = static_cast<int>(basepoint(n));
      l.act.assign(group().order(), std::vector<int>(sz));
      for (int g = 0; g < group().order(); ++g)
        for (Cell x = 0; x < sz; ++x) l.act[g][x] = static_cast<int>(act(g, n, x));
      for (int i = 0; n > 0 && i <= n; ++i) {
        l.faces.emplace_back(sz);
        for (Cell x = 0; x < sz; ++x) l.faces.back()[x] = static_cast<int>(face(n, i, x));
      }
      for (int j = 0; n < D && j <= n; ++j) {
        l.degens.emplace_back(sz);
        for (Cell x = 0; x < sz; ++x) l.degens.back()[x] = static_cast<int>(degeneracy(n, j, x));
      }
    }
    return out;
  }

  PointedSimplicialGSet truncated(int D) const { return from_tables(group(), tables(D)); }

 private:
  std::shared_ptr<const SimplicialModel> m_;
};

/// The constant pointed simplicial set S_+ (basepoint is the last point).
inline PointedSimplicialGSet constant_pointed(const GSet& S, int D) {
  const Group& G = S.group();
  const int sz = S.size() + 1;
  std::vector<SimplicialLevel> levels(D + 1);
  std::vector<int> id(sz);
  for (int x = 0; x < sz; ++x) id[x] = x;
  for (int n = 0; n <= D; ++n) {
    auto& l = levels[n];
    l.size = sz;
    l.basepoint = S.size();
    for (int g = 0; g < G.order(); ++g) {
      auto row = id;
      for (int x = 0; x < S.size(); ++x) row[x] = S.act(g, x);
      l.act.push_back(row);
    }
    if (n > 0) l.faces.assign(n + 1, id);
    if (n < D) l.degens.assign(n + 1, id);
  }
  return PointedSimplicialGSet::from_tables(G, std::move(levels));
}

/// [1]_+: one non-base point and the basepoint in every level.
inline PointedSimplicialGSet one_plus(const Group& G, int D) { return constant_pointed(GSet::point(G), D); }

/// Simplicial set with vertices V and edges E (d_1 e = source, d_0 e = target),
/// pointed at a G-fixed vertex. Level n holds the vertices, then (e, k) for
/// k = 1..n, the edge composed with the surjection [n] -> [1] taking k zeros.
inline PointedSimplicialGSet one_dimensional(const GSet& V, const GSet& E, const std::vector<int>& source,
                                             const std::vector<int>& target, int base, int D) {
  const Group& G = V.group();
  if (!E.group().same_as(G)) throw DomainError("simplicial: vertices and edges over different groups");
  if (base < 0 || base >= V.size()) throw DomainError("simplicial: basepoint out of range");
  if (static_cast<int>(source.size()) != E.size() || static_cast<int>(target.size()) != E.size())
    throw DomainError("simplicial: endpoint tables have wrong length");
  const int nv = V.size(), ne = E.size();
  auto idx = [&](int e, int k) { return nv + (k - 1) * ne + e; };
  std::vector<SimplicialLevel> levels(D + 1);
  for (int n = 0; n <= D; ++n) {
    auto& l = levels[n];
    l.size = nv + n * ne;
    l.basepoint = base;
    for (int g = 0; g < G.order(); ++g) {
      std::vector<int> row(l.size);
      for (int v = 0; v < nv; ++v) row[v] = V.act(g, v);
      for (int k = 1; k <= n; ++k)
        for (int e = 0; e < ne; ++e) row[idx(e, k)] = idx(E.act(g, e), k);
      l.act.push_back(row);
    }
    for (int i = 0; n > 0 && i <= n; ++i) {
      std::vector<int> row(l.size);
      for (int v = 0; v < nv; ++v) row[v] = v;
      for (int k = 1; k <= n; ++k)
        for (int e = 0; e < ne; ++e) {
          int kk = i < k ? k - 1 : k;
          if (kk == 0)
            row[idx(e, k)] = target[e];
          else if (kk == n)
            row[idx(e, k)] = source[e];
          else
            row[idx(e, k)] = idx(e, kk);
        }
      l.faces.push_back(row);
    }
    for (int j = 0; n < D && j <= n; ++j) {
      std::vector<int> row(l.size);
      for (int v = 0; v < nv; ++v) row[v] = v;
      for (int k = 1; k <= n; ++k)
        for (int e = 0; e < ne; ++e) row[idx(e, k)] = idx(e, j < k ? k + 1 : k);
      l.degens.push_back(row);
    }
  }
  return PointedSimplicialGSet::from_tables(G, std::move(levels));
}

/// One vertex and one loop, trivial action.
inline PointedSimplicialGSet trivial_circle(const Group& G, int D) {
  return one_dimensional(GSet::point(G), GSet::point(G), {0}, {0}, 0, D);
}

/// Circle with two fixed vertices p (base) and q joined by edges e, e' from q to p;
/// elements with sign -1 swap the edges.
inline PointedSimplicialGSet sign_circle(const Group& G, const std::function<int(int)>& sign, int D) {
  std::vector<std::vector<int>> ea(G.order());
  for (int g = 0; g < G.order(); ++g) ea[g] = sign(g) < 0 ? std::vector<int>{1, 0} : std::vector<int>{0, 1};
  GSet V(G, 2, std::vector<std::vector<int>>(G.order(), {0, 1}));
  GSet E(G, 2, ea);
  return one_dimensional(V, E, {1, 1}, {0, 0}, 0, D);
}

// ---------------------------------------------------------------- cone model

namespace detail {

/// Reduced cone of E(T)_+ -> [1]_+. Level n: 0 = basepoint, 1 = the point '1',
/// then (a, k) with a in T^{n+1} and k = 1..n zeros in the cone coordinate,
/// numbered 2 + (k-1) t^{n+1} + sum a_j t^{n-j}.
class ConeModel : public SimplicialModel {
 public:
  ConeModel(GSet T, int D) : T_(std::move(T)), D_(D) {
    const Cell t = static_cast<Cell>(T_.size());
    pw_.push_back(1);
    for (int m = 1; m <= D + 2; ++m) {
      if (t > 0 && pw_.back() > (Cell(1) << 58) / t) throw DomainError("adapted candidate: window too large");
      pw_.push_back(pw_.back() * t);
    }
    if (t > 0 && pw_[D + 1] > (Cell(1) << 58) / static_cast<Cell>(D + 1))
      throw DomainError("adapted candidate: window too large");
  }

  const Group& group() const override { return T_.group(); }
  int degree() const override { return D_; }
  Cell size(int n) const override { return 2 + static_cast<Cell>(n) * pw_[n + 1]; }
  Cell basepoint(int) const override { return 0; }
  const GSet& orbit_set() const { return T_; }

  Cell act(int g, int n, Cell x) const override {
    if (x < 2) return x;
    int k;
    decode(n, x, a_, k);
    for (auto& v : a_) v = T_.act(g, v);
    return encode(n, a_, k);
  }

  Cell face(int n, int i, Cell x) const override {
    if (x < 2) return x;
    int k;
    decode(n, x, a_, k);
    int kk = i < k ? k - 1 : k;
    if (kk == 0) return 0;  // cone point
    if (kk == n) return 1;  // base of the cone
    a_.erase(a_.begin() + i);
    return encode(n - 1, a_, kk);
  }

  Cell degeneracy(int n, int j, Cell x) const override {
    if (x < 2) return x;
    int k;
    decode(n, x, a_, k);
    a_.insert(a_.begin() + j, a_[j]);
    return encode(n + 1, a_, j < k ? k + 1 : k);
  }

  bool is_degenerate(int n, Cell x) const override {
    if (x < 2) return n > 0;
    int k;
    decode(n, x, a_, k);
    for (int j = 0; j < n; ++j)
      if (j != k - 1 && a_[j] == a_[j + 1]) return true;
    return false;
  }

  std::vector<Cell> fixed_points(const Subgroup& H, int n) const override { return enumerate(H, n, false); }
  std::vector<Cell> fixed_cells(const Subgroup& H, int n) const override {
    auto v = enumerate(H, n, true);
    v.erase(v.begin());  // basepoint
    if (n > 0) v.erase(v.begin());  // '1' is degenerate above level 0
    return v;
  }

 private:
  void decode(int n, Cell x, std::vector<int>& a, int& k) const {
    Cell r = x - 2;
    k = static_cast<int>(r / pw_[n + 1]) + 1;
    r %= pw_[n + 1];
    a.resize(n + 1);
    const Cell t = static_cast<Cell>(T_.size());
    for (int j = n; j >= 0; --j) {
      a[j] = static_cast<int>(r % t);
      r /= t;
    }
  }
  Cell encode(int n, const std::vector<int>& a, int k) const {
    Cell r = 0;
    const Cell t = static_cast<Cell>(T_.size());
    for (int j = 0; j <= n; ++j) r = r * t + static_cast<Cell>(a[j]);
    return 2 + static_cast<Cell>(k - 1) * pw_[n + 1] + r;
  }

  std::vector<Cell> enumerate(const Subgroup& H, int n, bool nondegenerate) const {
    std::vector<int> fix;
    for (int x = 0; x < T_.size(); ++x)
      if (T_.is_fixed(x, H)) fix.push_back(x);
    std::vector<Cell> out{0, 1};
    if (fix.empty()) return out;
    std::vector<int> a(n + 1), pos(n + 1);
    for (int k = 1; k <= n; ++k) {
      // odometer over fix^{n+1}, pruning equal neighbours across a non-jump
      int j = 0;
      pos[0] = -1;
      while (j >= 0) {
        if (++pos[j] >= static_cast<int>(fix.size())) {
          --j;
          continue;
        }
        a[j] = fix[pos[j]];
        if (nondegenerate && j > 0 && j - 1 != k - 1 && a[j] == a[j - 1]) continue;
        if (j == n) {
          out.push_back(encode(n, a, k));
          continue;
        }
        ++j;
        pos[j] = -1;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  GSet T_;
  int D_;
  std::vector<Cell> pw_;
  mutable std::vector<int> a_;
};

}  // namespace detail

/// Disjoint union of the orbits [G/H], one per conjugacy class of H not containing N.
inline GSet orbits_without(const Group& G, const Subgroup& N) {
  const auto& L = G.lattice();
  GSet T = GSet::empty(G);
  for (int c = 0; c < L.class_count(); ++c) {
    const Subgroup& H = L.subgroup(L.class_rep(c));
    if (!is_subset(N, H)) T = disjoint_union(T, orbit(G, H));
  }
  return T;
}

/// Cone of E(S_N)_+ -> [1]_+ truncated at D, computed lazily. Validation is
/// exhaustive on levels up to 20000 points and sampled above.
inline PointedSimplicialGSet build_adapted_candidate(const Group& G, const Subgroup& N, int D) {
  if (D < 1) throw DomainError("build_adapted_candidate: truncation degree must be at least 1");
  if (!G.is_subgroup(N) || !G.is_normal(N)) throw DomainError("build_adapted_candidate: N must be a normal subgroup");
  auto m = std::make_shared<detail::ConeModel>(orbits_without(G, N), D);
  auto rep = check_simplicial(*m, 20000);
  if (!rep.ok()) throw std::logic_error("build_adapted_candidate: " + rep.violations.front());
  return PointedSimplicialGSet(m);
}

// ---------------------------------------------------------------- chains

/// Normalized reduced chains of X^H as sparse cells in degrees 0..top.
inline SparseCells reduced_cells(const PointedSimplicialGSet& X, const Subgroup& H, int top) {
  if (top > X.degree()) throw DomainError("reduced chains: degree beyond the truncation window");
  auto keys = std::make_shared<std::vector<std::vector<Cell>>>();
  SparseCells C;
  for (int n = 0; n <= top; ++n) {
    keys->push_back(X.fixed_cells(H, n));
    C.count.push_back(keys->back().size());
  }
  C.boundary = [X, keys](int n, std::size_t c, std::vector<std::pair<std::size_t, long long>>& out) {
    if (n == 0) return;
    const Cell x = (*keys)[n][c];
    const auto& lower = (*keys)[n - 1];
    for (int i = 0; i <= n; ++i) {
      Cell y = X.face(n, i, x);
      if (y == X.basepoint(n - 1) || X.is_degenerate(n - 1, y)) continue;
      auto it = std::lower_bound(lower.begin(), lower.end(), y);
      if (it == lower.end() || *it != y) throw std::logic_error("reduced chains: face of a fixed cell is not fixed");
      out.push_back({static_cast<std::size_t>(it - lower.begin()), (i % 2) ? -1 : 1});
    }
  };
  return C;
}

/// Reduced homology of X^H in degrees 0..max_degree (needs max_degree + 1 <= degree()).
inline std::vector<FPModule> reduced_homology(const PointedSimplicialGSet& X, const Subgroup& H, int max_degree) {
  return sparse_homology(reduced_cells(X, H, max_degree + 1), max_degree);
}

/// Dense normalized reduced chain complex of X^H in degrees 0..top.
inline ChainComplex reduced_chain_complex(const PointedSimplicialGSet& X, int top, const Subgroup& H = {0}) {
  SparseCells C = reduced_cells(X, H, top);
  const Ring Z = Ring::integers();
  std::vector<FPModule> mods;
  for (int n = 0; n <= top; ++n) mods.push_back(FPModule::free(Z, C.count[n]));
  std::map<int, ModuleMap> d;
  std::vector<std::pair<std::size_t, long long>> buf;
  for (int n = 1; n <= top; ++n) {
    Matrix m(C.count[n - 1], C.count[n]);
    for (std::size_t c = 0; c < C.count[n]; ++c) {
      buf.clear();
      C.boundary(n, c, buf);
      for (auto& [f, s] : buf) m(f, c) += Scalar(static_cast<long>(s));
    }
    d[n] = ModuleMap(mods[n], mods[n - 1], m);
  }
  return ChainComplex(0, top, mods, d, Z);
}

struct AdaptedReport {
  bool fixed_clause = true;   // X^N is [1]_+ in levels 0..D
  bool acyclic_clause = true; // reduced homology of X^H vanishes for H not containing N
  int verified_through = -1;  // acyclicity certified in degrees 0..verified_through
  std::vector<std::string> failures;
  bool ok() const { return fixed_clause && acyclic_clause; }
};

/// Adaptedness within the window: the fixed-point clause on levels 0..D, and
/// acyclicity in degrees 0..D-2 for one subgroup per conjugacy class.
inline AdaptedReport is_adapted(const PointedSimplicialGSet& X, const Subgroup& N, int D = -1) {
  const Group& G = X.group();
  if (D < 0) D = X.degree();
  if (D > X.degree()) throw DomainError("is_adapted: window exceeds truncation degree");
  if (!G.is_subgroup(N) || !G.is_normal(N)) throw DomainError("is_adapted: N must be a normal subgroup");
  AdaptedReport rep;
  std::vector<Cell> prev;
  for (int n = 0; n <= D; ++n) {
    auto f = X.fixed_points(N, n);
    const Cell b = X.basepoint(n);
    if (f.size() != 2) {
      rep.fixed_clause = false;
      rep.failures.push_back("level " + std::to_string(n) + ": N-fixed points number " + std::to_string(f.size()));
      break;
    }
    Cell x = f[0] == b ? f[1] : f[0];
    bool constant = true;
    if (n > 0) {
      for (int i = 0; i <= n; ++i)
        if (X.face(n, i, x) != prev[0]) constant = false;
      for (int j = 0; j < n; ++j)
        if (X.degeneracy(n - 1, j, prev[0]) != x) constant = false;
    }
    if (!constant) {
      rep.fixed_clause = false;
      rep.failures.push_back("level " + std::to_string(n) + ": structure maps on X^N are not constant");
      break;
    }
    prev = {x};
  }
  const auto& L = G.lattice();
  const int top = D - 2;
  for (int c = 0; c < L.class_count() && top >= 0; ++c) {
    const Subgroup& H = L.subgroup(L.class_rep(c));
    if (is_subset(N, H)) continue;
    auto hom = reduced_homology(X, H, top);
    for (int d = 0; d <= top; ++d)
      if (!hom[d].is_zero()) {
        rep.acyclic_clause = false;
        rep.failures.push_back("H = " + subgroup_name(H) + ": reduced H_" + std::to_string(d) + " = " +
                               hom[d].describe());
      }
  }
  rep.verified_through = top;
  return rep;
}

struct SphereEntry {
  Subgroup subgroup;
  int dimension = -1;  // -1 when the homology is not a single Z
  std::string detail;
};

struct SphereReport {
  std::vector<SphereEntry> entries;  // one per conjugacy class
  int verified_through = -1;
  bool ok() const {
    for (auto& e : entries)
      if (e.dimension < 0) return false;
    return !entries.empty();
  }
};

/// Per conjugacy class, the single degree d with reduced homology Z (degrees 0..D-2).
inline SphereReport is_homological_sphere(const PointedSimplicialGSet& X, int D = -1) {
  if (D < 0) D = X.degree();
  if (D > X.degree()) throw DomainError("is_homological_sphere: window exceeds truncation degree");
  if (D < 2) throw DomainError("is_homological_sphere: window must reach degree 2");
  const Group& G = X.group();
  const auto& L = G.lattice();
  SphereReport rep;
  rep.verified_through = D - 2;
  const FPModule Zmod = FPModule::free(Ring::integers(), 1);
  for (int c = 0; c < L.class_count(); ++c) {
    SphereEntry e{L.subgroup(L.class_rep(c)), -1, ""};
    auto hom = reduced_homology(X, e.subgroup, D - 2);
    int found = -1;
    bool bad = false;
    for (int d = 0; d <= D - 2; ++d) {
      if (hom[d].is_zero()) continue;
      if (found < 0 && modules_isomorphic(hom[d], Zmod))
        found = d;
      else
        bad = true;
      e.detail += (e.detail.empty() ? "" : "; ") + ("H_" + std::to_string(d) + " = " + hom[d].describe());
    }
    if (found >= 0 && !bad)
      e.dimension = found;
    else if (!bad)
      e.detail = "reduced homology vanishes in the window";
    rep.entries.push_back(e);
  }
  return rep;
}

// ---------------------------------------------------------------- smash and Mackey coefficients

/// Levelwise smash product. Non-base points of level n are pairs in lexicographic
/// order, numbered from 1; the basepoint is 0.
inline PointedSimplicialGSet smash(const PointedSimplicialGSet& X, const PointedSimplicialGSet& Y,
                                   Cell limit = 2000000) {
  if (!X.group().same_as(Y.group())) throw DomainError("smash: different groups");
  const Group& G = X.group();
  const int D = std::min(X.degree(), Y.degree());
  auto tx = X.tables(D), ty = Y.tables(D);
  std::vector<std::vector<int>> xi(D + 1), yi(D + 1);  // non-base index
  for (int n = 0; n <= D; ++n) {
    auto mk = [](const SimplicialLevel& l, std::vector<int>& v) {
      v.assign(l.size, -1);
      int c = 0;
      for (int x = 0; x < l.size; ++x)
        if (x != l.basepoint) v[x] = c++;
    };
    mk(tx[n], xi[n]);
    mk(ty[n], yi[n]);
    if (static_cast<Cell>(tx[n].size - 1) * static_cast<Cell>(ty[n].size - 1) + 1 > limit)
      throw DomainError("smash: level too large");
  }
  auto pid = [&](int n, int x, int y) -> int {
    if (x == tx[n].basepoint || y == ty[n].basepoint) return 0;
    return 1 + xi[n][x] * (ty[n].size - 1) + yi[n][y];
  };
  std::vector<SimplicialLevel> out(D + 1);
  for (int n = 0; n <= D; ++n) {
    auto& l = out[n];
    l.size = 1 + (tx[n].size - 1) * (ty[n].size - 1);
    l.basepoint = 0;
    std::vector<std::pair<int, int>> pts;
    for (int x = 0; x < tx[n].size; ++x)
      for (int y = 0; y < ty[n].size; ++y)
        if (x != tx[n].basepoint && y != ty[n].basepoint) pts.push_back({x, y});
    auto row_of = [&](const std::vector<int>& fx, const std::vector<int>& fy, int m) {
      std::vector<int> row(l.size, 0);
      for (auto [x, y] : pts) row[pid(n, x, y)] = pid(m, fx[x], fy[y]);
      return row;
    };
    for (int g = 0; g < G.order(); ++g) l.act.push_back(row_of(tx[n].act[g], ty[n].act[g], n));
    for (int i = 0; n > 0 && i <= n; ++i) l.faces.push_back(row_of(tx[n].faces[i], ty[n].faces[i], n - 1));
    for (int j = 0; n < D && j <= n; ++j) l.degens.push_back(row_of(tx[n].degens[j], ty[n].degens[j], n + 1));
  }
  return PointedSimplicialGSet::from_tables(G, std::move(out));
}

/// X ∧ S_+.
inline PointedSimplicialGSet smash(const PointedSimplicialGSet& X, const GSet& S) {
  return smash(X, constant_pointed(S, X.degree()));
}

namespace detail {

/// Level n without its basepoint, with the index of each old point (-1 for the basepoint).
struct ReducedLevel {
  GSet set;
  std::vector<int> index;
  std::vector<int> point;  // new -> old
};

inline ReducedLevel reduced_level(const PointedSimplicialGSet& X, int n) {
  GSet full = X.level_gset(n);
  ReducedLevel r;
  const int b = static_cast<int>(X.basepoint(n));
  r.index.assign(full.size(), -1);
  for (int x = 0; x < full.size(); ++x)
    if (x != b) {
      r.index[x] = static_cast<int>(r.point.size());
      r.point.push_back(x);
    }
  std::vector<std::vector<int>> a(X.group().order(), std::vector<int>(r.point.size()));
  for (int g = 0; g < X.group().order(); ++g)
    for (std::size_t p = 0; p < r.point.size(); ++p) a[g][p] = r.index[full.act(g, r.point[p])];
  r.set = GSet(X.group(), static_cast<int>(r.point.size()), std::move(a));
  return r;
}

}  // namespace detail

/// Unnormalized chains C_n = M(X_n minus basepoint) in degrees 0..top, with
/// d = sum (-1)^i of the maps induced by the spans X_n ⊇ (complement of d_i^{-1}(*)) -> X_{n-1}.
inline ChainComplex mackey_chain_complex(const PointedSimplicialGSet& X, const MackeyFunctor& M, int top) {
  if (!X.group().same_as(M.group())) throw DomainError("mackey_homology: different groups");
  if (top > X.degree()) throw DomainError("mackey_homology: window too small");
  std::vector<detail::ReducedLevel> lv;
  std::vector<FPModule> mods;
  for (int n = 0; n <= top; ++n) {
    lv.push_back(detail::reduced_level(X, n));
    mods.push_back(evaluate(M, lv.back().set));
  }
  const Group& G = X.group();
  std::map<int, ModuleMap> d;
  for (int n = 1; n <= top; ++n) {
    Matrix total(mods[n - 1].gens(), mods[n].gens());
    for (int i = 0; i <= n; ++i) {
      std::vector<int> keep;  // reduced points of level n whose face is not the basepoint
      for (std::size_t p = 0; p < lv[n].point.size(); ++p)
        if (lv[n - 1].index[X.face(n, i, lv[n].point[p])] >= 0) keep.push_back(static_cast<int>(p));
      std::vector<int> pos(lv[n].point.size(), -1);
      for (std::size_t q = 0; q < keep.size(); ++q) pos[keep[q]] = static_cast<int>(q);
      std::vector<std::vector<int>> a(G.order(), std::vector<int>(keep.size()));
      for (int g = 0; g < G.order(); ++g)
        for (std::size_t q = 0; q < keep.size(); ++q) a[g][q] = pos[lv[n].set.act(g, keep[q])];
      GSet U(G, static_cast<int>(keep.size()), std::move(a));
      std::vector<int> incl(keep.size()), fc(keep.size());
      for (std::size_t q = 0; q < keep.size(); ++q) {
        incl[q] = keep[q];
        fc[q] = lv[n - 1].index[X.face(n, i, lv[n].point[keep[q]])];
      }
      ModuleMap m = induced_map(M, GMap{U, lv[n].set, incl}, GMap{U, lv[n - 1].set, fc});
      total = (i % 2) ? total - m.matrix() : total + m.matrix();
    }
    d[n] = ModuleMap(mods[n], mods[n - 1], total);
  }
  return ChainComplex(0, top, mods, d, M.ring());
}

/// Homology with Mackey coefficients in degrees 0..nmax; needs degree() >= nmax + 2.
inline std::vector<FPModule> mackey_homology(const PointedSimplicialGSet& X, const MackeyFunctor& M, int nmax) {
  if (X.degree() < nmax + 2) throw DomainError("mackey_homology: window too small, need degree >= nmax + 2");
  ChainComplex C = mackey_chain_complex(X, M, nmax + 1);
  std::vector<FPModule> out;
  for (int n = 0; n <= nmax; ++n) out.push_back(C.homology(n));
  return out;
}

}  // namespace mackey
