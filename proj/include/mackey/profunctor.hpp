#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mackey/burnside.hpp"
#include "mackey/fixedpoints.hpp"
#include "mackey/mackey.hpp"

namespace mackey {

// ---------------------------------------------------------------- truncated completed Burnside ring of Z

/// Combinations of ε_n (the orbit Z/nZ) for 1 <= n <= nmax; ε_k with k > nmax is set to zero.
class TruncatedCompletedBurnside {
 public:
  TruncatedCompletedBurnside() = default;
  TruncatedCompletedBurnside(int nmax, Ring R) : nmax_(nmax), R_(R), c_(nmax, 0) {
    if (nmax < 1) throw DomainError("truncated Burnside ring: bound must be positive");
    if (R.kind() != RingKind::Integers && R.kind() != RingKind::PLocalIntegers)
      throw DomainError("truncated Burnside ring: coefficients must be the integers or p-local integers");
  }

  static TruncatedCompletedBurnside basis(int n, int nmax, const Ring& R = Ring::integers()) {
    TruncatedCompletedBurnside a(nmax, R);
    a.set(n, 1);
    return a;
  }
  static TruncatedCompletedBurnside unit(int nmax, const Ring& R = Ring::integers()) { return basis(1, nmax, R); }

  int nmax() const { return nmax_; }
  const Ring& ring() const { return R_; }
  const Scalar& coord(int n) const { return c_.at(n - 1); }
  void set(int n, const Scalar& v) {
    if (n < 1 || n > nmax_) throw DomainError("truncated Burnside ring: index " + std::to_string(n) + " out of range");
    c_[n - 1] = R_.normalize(v);
  }
  const std::vector<Scalar>& coords() const { return c_; }

  bool operator==(const TruncatedCompletedBurnside& o) const { return nmax_ == o.nmax_ && R_ == o.R_ && c_ == o.c_; }
  bool operator!=(const TruncatedCompletedBurnside& o) const { return !(*this == o); }

  TruncatedCompletedBurnside operator+(const TruncatedCompletedBurnside& o) const {
    check(o);
    auto r = *this;
    for (int i = 0; i < nmax_; ++i) r.c_[i] += o.c_[i];
    return r;
  }
  TruncatedCompletedBurnside operator-(const TruncatedCompletedBurnside& o) const {
    check(o);
    auto r = *this;
    for (int i = 0; i < nmax_; ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  TruncatedCompletedBurnside scaled(const Scalar& s) const {
    auto r = *this;
    for (auto& x : r.c_) x = R_.normalize(x * s);
    return r;
  }

  /// ε_n ε_m = gcd(n, m) ε_lcm(n, m).
  TruncatedCompletedBurnside operator*(const TruncatedCompletedBurnside& o) const {
    check(o);
    TruncatedCompletedBurnside r(nmax_, R_);
    for (int n = 1; n <= nmax_; ++n) {
      if (sgn(c_[n - 1]) == 0) continue;
      for (int m = 1; m <= nmax_; ++m) {
        if (sgn(o.c_[m - 1]) == 0) continue;
        long l = std::lcm(static_cast<long>(n), static_cast<long>(m));
        if (l > nmax_) continue;
        r.c_[l - 1] += Scalar(std::gcd(n, m)) * c_[n - 1] * o.c_[m - 1];
      }
    }
    return r;
  }

  std::string str() const {
    std::string s;
    for (int n = 1; n <= nmax_; ++n) {
      if (sgn(c_[n - 1]) == 0) continue;
      if (!s.empty()) s += " + ";
      s += c_[n - 1].get_str() + "*e" + std::to_string(n);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void check(const TruncatedCompletedBurnside& o) const {
    if (nmax_ != o.nmax_ || R_ != o.R_) throw DomainError("truncated Burnside ring: mismatched truncation or ring");
  }

  int nmax_ = 1;
  Ring R_;
  std::vector<Scalar> c_;
};

inline TruncatedCompletedBurnside multiply(const TruncatedCompletedBurnside& a, const TruncatedCompletedBurnside& b) {
  return a * b;
}

/// gh_m(a) = Σ_{n | m} n a_n for m = 1..nmax (fixed points of mZ).
inline std::vector<Scalar> marks_hom(const TruncatedCompletedBurnside& a) {
  std::vector<Scalar> g(a.nmax(), 0);
  for (int m = 1; m <= a.nmax(); ++m)
    for (int n = 1; n <= m; ++n)
      if (m % n == 0) g[m - 1] += Scalar(n) * a.coord(n);
  return g;
}

// ---------------------------------------------------------------- big Witt vectors

/// Big Witt vector truncated at nmax; coordinate a_n at position n - 1.
struct WittVector {
  std::vector<Integer> a;
  bool operator==(const WittVector& o) const { return a == o.a; }
};

/// w_m = Σ_{d | m} d a_d^{m/d}.
inline std::vector<Integer> witt_ghost(const WittVector& w) {
  const int N = static_cast<int>(w.a.size());
  std::vector<Integer> g(N, 0);
  for (int m = 1; m <= N; ++m)
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) {
        Integer t;
        mpz_pow_ui(t.get_mpz_t(), w.a[d - 1].get_mpz_t(), static_cast<unsigned long>(m / d));
        g[m - 1] += d * t;
      }
  return g;
}

/// Inverse of the ghost map; throws if the ghost vector is not integral.
inline WittVector witt_from_ghost(const std::vector<Integer>& g) {
  const int N = static_cast<int>(g.size());
  WittVector w{std::vector<Integer>(N, 0)};
  for (int m = 1; m <= N; ++m) {
    Integer rest = g[m - 1];
    for (int d = 1; d < m; ++d)
      if (m % d == 0) {
        Integer t;
        mpz_pow_ui(t.get_mpz_t(), w.a[d - 1].get_mpz_t(), static_cast<unsigned long>(m / d));
        rest -= d * t;
      }
    if (rest % m != 0) throw DomainError("witt_from_ghost: ghost vector is not integral at " + std::to_string(m));
    w.a[m - 1] = rest / m;
  }
  return w;
}

inline WittVector witt_add(const WittVector& x, const WittVector& y) {
  auto gx = witt_ghost(x), gy = witt_ghost(y);
  for (std::size_t i = 0; i < gx.size(); ++i) gx[i] += gy[i];
  return witt_from_ghost(gx);
}

inline WittVector witt_multiply(const WittVector& x, const WittVector& y) {
  auto gx = witt_ghost(x), gy = witt_ghost(y);
  for (std::size_t i = 0; i < gx.size(); ++i) gx[i] *= gy[i];
  return witt_from_ghost(gx);
}

/// V_n(1): a_n = 1, all other coordinates zero.
inline WittVector verschiebung_one(int n, int nmax) {
  WittVector w{std::vector<Integer>(nmax, 0)};
  if (n <= nmax) w.a.at(n - 1) = 1;
  return w;
}

/// Image of an integral element under ε_n -> V_n(1), extended additively.
inline WittVector to_witt(const TruncatedCompletedBurnside& a) {
  std::vector<Integer> g;
  for (auto& x : marks_hom(a)) {
    if (x.get_den() != 1) throw DomainError("to_witt: element is not integral");
    g.push_back(x.get_num());
  }
  return witt_from_ghost(g);
}

struct WittReport {
  int pairs_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Ghost components of V_n(1) against marks of ε_n, and sums and products of
/// all basis pairs with lcm <= nmax.
inline WittReport witt_compare(int nmax) {
  WittReport rep;
  auto marks_int = [](const TruncatedCompletedBurnside& a) {
    std::vector<Integer> v;
    for (auto& x : marks_hom(a)) v.push_back(x.get_num());
    return v;
  };
  for (int n = 1; n <= nmax; ++n)
    if (witt_ghost(verschiebung_one(n, nmax)) != marks_int(TruncatedCompletedBurnside::basis(n, nmax)))
      rep.failures.push_back("ghost of V_" + std::to_string(n) + "(1) differs from marks");
  for (int n = 1; n <= nmax; ++n)
    for (int m = 1; m <= nmax; ++m) {
      if (std::lcm(n, m) > nmax) continue;
      ++rep.pairs_checked;
      auto en = TruncatedCompletedBurnside::basis(n, nmax), em = TruncatedCompletedBurnside::basis(m, nmax);
      WittVector vn = verschiebung_one(n, nmax), vm = verschiebung_one(m, nmax);
      const std::string at = " for (" + std::to_string(n) + ", " + std::to_string(m) + ")";
      if (witt_ghost(witt_multiply(vn, vm)) != marks_int(en * em)) rep.failures.push_back("product ghost mismatch" + at);
      if (witt_ghost(witt_add(vn, vm)) != marks_int(en + em)) rep.failures.push_back("sum ghost mismatch" + at);
      if (!(witt_multiply(vn, vm) == to_witt(en * em))) rep.failures.push_back("product coordinates mismatch" + at);
    }
  return rep;
}

// ---------------------------------------------------------------- p-typical idempotents

struct TypicalIdempotent {
  int n;
  TruncatedCompletedBurnside value;
};

/// ε_(n) = (1/n) ε_n Π (1 - (1/i) ε_i) over i <= nmax prime to p with i not dividing n,
/// for each n <= nmax prime to p; coefficients in Z_(p).
inline std::vector<TypicalIdempotent> p_typical_idempotents(int p, int nmax) {
  const Ring R = Ring::p_local(p);
  const auto one = TruncatedCompletedBurnside::unit(nmax, R);
  auto e = [&](int i) { return TruncatedCompletedBurnside::basis(i, nmax, R).scaled(Scalar(1, i)); };
  std::vector<TypicalIdempotent> out;
  for (int n = 1; n <= nmax; ++n) {
    if (n % p == 0) continue;
    auto x = e(n);
    for (int i = 2; i <= nmax; ++i)
      if (i % p != 0 && n % i != 0) x = x * (one - e(i));
    out.push_back({n, x});
  }
  return out;
}

struct IdempotentReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline IdempotentReport check_idempotents(const std::vector<TypicalIdempotent>& es) {
  IdempotentReport rep;
  if (es.empty()) return {{"no idempotents"}};
  auto sum = TruncatedCompletedBurnside(es[0].value.nmax(), es[0].value.ring());
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto& a = es[i].value;
    if (a * a != a) rep.failures.push_back("ε_(" + std::to_string(es[i].n) + ") is not idempotent");
    for (std::size_t j = i + 1; j < es.size(); ++j)
      if (a * es[j].value != TruncatedCompletedBurnside(a.nmax(), a.ring()))
        rep.failures.push_back("ε_(" + std::to_string(es[i].n) + ") ε_(" + std::to_string(es[j].n) + ") != 0");
    sum = sum + a;
  }
  if (sum != TruncatedCompletedBurnside::unit(sum.nmax(), sum.ring())) rep.failures.push_back("sum is not the unit");
  return rep;
}

// ---------------------------------------------------------------- normal systems

/// The subgroup generated by d in Z/n (d divides n).
inline Subgroup cyclic_subgroup(int n, int d) {
  Subgroup H;
  for (int x = 0; x < n; x += d) H.push_back(x);
  return H;
}

/// Functors E_n over Z/n for n in a divisor-closed set, with isomorphisms
/// Φ^{n'Z/nZ} E_n -> E_{n'} for each proper divisor n' of n in the set.
struct TruncatedNormalSystem {
  Ring ring;
  std::vector<int> index;  // sorted
  std::map<int, MackeyFunctor> functor;
  std::map<std::pair<int, int>, std::vector<Matrix>> iso;  // (n, n') -> level matrices
};

namespace detail {

/// Φ^{n'Z/nZ} E over the group Z/n' (coset of x numbered by x mod n').
inline MackeyFunctor phi_down(const MackeyFunctor& E, int n, int np) {
  auto gf = geometric_fixed_points_full(E, cyclic_subgroup(n, np));
  std::vector<int> elem(np);
  for (int t = 0; t < np; ++t) elem[t] = gf.ql.q.proj[t];
  return relabel(gf.functor, Group::cyclic(np), elem);
}

inline bool divisor_closed(const std::vector<int>& D) {
  for (int n : D)
    for (int d = 1; d <= n; ++d)
      if (n % d == 0 && !std::binary_search(D.begin(), D.end(), d)) return false;
  return true;
}

}  // namespace detail

struct NormalSystemReport {
  std::vector<std::string> failures;
  std::pair<int, int> witness{0, 0};  // first failing pair
  bool ok() const { return failures.empty(); }
};

inline MackeyMorphism normal_system_iso(const TruncatedNormalSystem& S, int n, int np) {
  MackeyFunctor src = detail::phi_down(S.functor.at(n), n, np);
  const MackeyFunctor& tgt = S.functor.at(np);
  MackeyMorphism f{src, tgt, {}};
  const auto& mats = S.iso.at({n, np});
  if (static_cast<int>(mats.size()) != src.subgroup_count())
    throw DomainError("normal system: iso (" + std::to_string(n) + ", " + std::to_string(np) + ") has wrong level count");
  for (int h = 0; h < src.subgroup_count(); ++h) f.level.push_back(ModuleMap(src.value(h), tgt.value(h), mats[h]));
  return f;
}

inline NormalSystemReport validate_normal_system(const TruncatedNormalSystem& S) {
  NormalSystemReport rep;
  auto fail = [&](const std::string& s, int a, int b) {
    if (rep.failures.empty()) rep.witness = {a, b};
    rep.failures.push_back(s);
  };
  if (!std::is_sorted(S.index.begin(), S.index.end()) || S.index.empty() || S.index.front() < 1) {
    fail("index set must be sorted positive integers", 0, 0);
    return rep;
  }
  if (!detail::divisor_closed(S.index)) {
    fail("index set is not divisor closed", 0, 0);
    return rep;
  }
  for (int n : S.index) {
    auto it = S.functor.find(n);
    if (it == S.functor.end() || !it->second.group().same_as(Group::cyclic(n))) {
      fail("E_" + std::to_string(n) + " missing or not over Z/" + std::to_string(n), n, n);
      return rep;
    }
    if (it->second.ring() != S.ring) fail("E_" + std::to_string(n) + " over the wrong ring", n, n);
    auto ax = check_axioms(it->second, 1);
    if (!ax.ok()) fail("E_" + std::to_string(n) + ": " + ax.violations.front(), n, n);
  }
  if (!rep.ok()) return rep;
  std::map<std::pair<int, int>, MackeyMorphism> isos;
  for (int n : S.index)
    for (int np : S.index) {
      if (np >= n || n % np != 0) continue;
      if (!S.iso.count({n, np})) {
        fail("missing isomorphism (" + std::to_string(n) + ", " + std::to_string(np) + ")", n, np);
        continue;
      }
      try {
        MackeyMorphism f = normal_system_iso(S, n, np);
        if (!f.is_isomorphism())
          fail("(" + std::to_string(n) + ", " + std::to_string(np) + ") is not an isomorphism of Mackey functors", n, np);
        else
          isos.emplace(std::make_pair(n, np), f);
      } catch (const DomainError& e) {
        fail(e.what(), n, np);
      }
    }
  if (!rep.ok()) return rep;
  // cocycle: for n'' | n' | n, iso(n, n'') ∘ T = iso(n', n'') ∘ Φ(iso(n, n')) on Φ^{n''/n'} Φ^{n'} E_n
  for (int n : S.index)
    for (int np : S.index) {
      if (np >= n || n % np != 0) continue;
      for (int npp : S.index) {
        if (npp >= np || np % npp != 0) continue;
        const MackeyFunctor& E = S.functor.at(n);
        PhiTransitivity T = phi_transitivity(E, cyclic_subgroup(n, np), cyclic_subgroup(n, npp));
        MackeyMorphism outer = geometric_fixed_points_map(isos.at({n, np}), cyclic_subgroup(np, npp));
        const MackeyMorphism &a = isos.at({n, npp}), &b = isos.at({np, npp});
        bool same = true;
        for (std::size_t h = 0; h < a.level.size(); ++h) {
          ModuleMap lhs(T.map.source.value(h), a.target.value(h), a.level[h].matrix() * T.map.level[h].matrix());
          ModuleMap rhs(outer.source.value(h), b.target.value(h), b.level[h].matrix() * outer.level[h].matrix());
          if (lhs.source().gens() != rhs.source().gens() || !lhs.equals(rhs)) same = false;
        }
        if (!same)
          fail("cocycle fails for " + std::to_string(npp) + " | " + std::to_string(np) + " | " + std::to_string(n), n, np);
      }
    }
  return rep;
}

/// Burnside functors over Z/n, n in D, glued by the canonical comparisons.
inline TruncatedNormalSystem burnside_normal_system(const Ring& R, std::vector<int> D) {
  std::sort(D.begin(), D.end());
  D.erase(std::unique(D.begin(), D.end()), D.end());
  if (D.empty() || !detail::divisor_closed(D)) throw DomainError("burnside_normal_system: index set is not divisor closed");
  TruncatedNormalSystem S{R, D, {}, {}};
  for (int n : D) S.functor.emplace(n, burnside_mackey(Group::cyclic(n), R));
  for (int n : D)
    for (int np : D) {
      if (np >= n || n % np != 0) continue;
      MackeyMorphism c = burnside_phi_comparison(Group::cyclic(n), R, cyclic_subgroup(n, np));
      std::vector<Matrix> mats;
      for (auto& l : c.level) mats.push_back(l.matrix());
      S.iso[{n, np}] = mats;
    }
  return S;
}

/// The divisors of n in increasing order.
inline std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

struct InflationLimit {
  FPModule module;
  ModuleMap inclusion;                 // into the product of the components
  std::vector<int> components;         // n with m | n, in order
  std::vector<std::size_t> offset;     // component -> first generator in the product
  FPModule product;
};

/// lim over n in D of (Infl E_n)([Z/m]) = E_n at the subgroup mZ/nZ (zero unless m | n);
/// the map for n' | n is the projection to Φ followed by the system's isomorphism.
inline InflationLimit inflation_limit(const TruncatedNormalSystem& S, int m) {
  if (!std::binary_search(S.index.begin(), S.index.end(), m))
    throw DomainError("inflation_limit: orbit size " + std::to_string(m) + " is not in the index set");
  InflationLimit out;
  std::vector<FPModule> parts;
  std::size_t off = 0;
  auto level_of = [&](int n) {
    const auto& L = S.functor.at(n).lattice();
    return L.index_of(cyclic_subgroup(n, m));
  };
  for (int n : S.index) {
    if (n % m != 0) continue;
    out.components.push_back(n);
    out.offset.push_back(off);
    parts.push_back(S.functor.at(n).value(level_of(n)));
    off += parts.back().gens();
  }
  out.product = direct_sum(S.ring, parts);
  std::vector<Matrix> blocks;
  std::vector<FPModule> targets;
  for (std::size_t a = 0; a < out.components.size(); ++a)
    for (std::size_t b = 0; b < out.components.size(); ++b) {
      int n = out.components[a], np = out.components[b];
      if (np >= n || n % np != 0) continue;
      const MackeyFunctor& E = S.functor.at(n);
      auto gf = geometric_fixed_points_full(E, cyclic_subgroup(n, np));
      int h = level_of(n);
      int w = gf.ql.down[h];
      // levels of the relabelled functor over Z/n' agree with the quotient lattice
      MackeyMorphism iso = normal_system_iso(S, n, np);
      int t = S.functor.at(np).lattice().index_of(cyclic_subgroup(np, m));
      Matrix f = iso.level[t].matrix() * gf.proj[w].matrix();
      const FPModule& tgt = parts[b];
      Matrix row(tgt.gens(), off);
      row.set_block(0, out.offset[a], f);
      row.add_block(0, out.offset[b], -Matrix::identity(tgt.gens()));
      blocks.push_back(row);
      targets.push_back(tgt);
    }
  FPModule T = direct_sum(S.ring, targets);
  Matrix all(T.gens(), off);
  std::size_t r = 0;
  for (auto& b : blocks) {
    all.set_block(r, 0, b);
    r += b.rows();
  }
  KernelResult k = kernel(ModuleMap(out.product, T, all));
  out.module = k.module;
  out.inclusion = k.inclusion;
  return out;
}

struct TypicalSummand {
  int n;
  FPModule image;
  ModuleMap idempotent;  // on the limit module
};

struct TypicalDecomposition {
  FPModule whole;
  std::vector<TypicalSummand> summands;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Action of a truncated Burnside element on the limit at [Z/m]: ε_k acts on the
/// component E_n through the orbit [Z/n : kZ/nZ] when k | n, and by zero otherwise.
inline ModuleMap truncated_burnside_action(const TruncatedNormalSystem& S, const InflationLimit& lim,
                                           const TruncatedCompletedBurnside& a, int m) {
  Matrix act(lim.product.gens(), lim.product.gens());
  for (std::size_t c = 0; c < lim.components.size(); ++c) {
    int n = lim.components[c];
    const MackeyFunctor& E = S.functor.at(n);
    const Group& G = E.group();
    const auto& L = G.lattice();
    GSet orb = orbit(G, cyclic_subgroup(n, m));
    for (int k = 1; k <= std::min(n, a.nmax()); ++k) {
      if (n % k != 0 || sgn(a.coord(k)) == 0) continue;
      BurnsideElement b = burnside_basis(G, L.class_of(L.index_of(cyclic_subgroup(n, k))));
      act.add_block(lim.offset[c], lim.offset[c], a.coord(k) * burnside_action(b, E, orb).matrix());
    }
  }
  auto lifted = lift(lim.inclusion, act * lim.inclusion.matrix());
  if (!lifted) throw std::logic_error("truncated_burnside_action: limit is not invariant");
  return ModuleMap(lim.module, lim.module, *lifted);
}

/// Images of the p-typical idempotents on the limit at [Z/m], with checks that they
/// are idempotent, pairwise orthogonal and sum to the identity.
inline TypicalDecomposition p_typical_decompose(const TruncatedNormalSystem& S, int p, int m) {
  if (S.ring.kind() != RingKind::PLocalIntegers || S.ring.parameter() != p)
    throw DomainError("p_typical_decompose: coefficients must be the " + std::to_string(p) + "-local integers");
  InflationLimit lim = inflation_limit(S, m);
  const int nmax = S.index.back();
  TypicalDecomposition out;
  out.whole = lim.module;
  ModuleMap total = ModuleMap::zero(lim.module, lim.module);
  std::vector<ModuleMap> es;
  for (auto& t : p_typical_idempotents(p, nmax)) {
    ModuleMap e = truncated_burnside_action(S, lim, t.value, m);
    es.push_back(e);
    total = total + e;
    out.summands.push_back({t.n, image(e), e});
  }
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (!compose(es[i], es[i]).equals(es[i]))
      out.failures.push_back("ε_(" + std::to_string(out.summands[i].n) + ") is not idempotent on the value");
    for (std::size_t j = 0; j < es.size(); ++j)
      if (i != j && !compose(es[i], es[j]).is_zero())
        out.failures.push_back("ε_(" + std::to_string(out.summands[i].n) + ") and ε_(" +
                               std::to_string(out.summands[j].n) + ") are not orthogonal");
  }
  if (!total.equals(ModuleMap::identity(lim.module))) out.failures.push_back("idempotents do not sum to the identity");
  return out;
}

}  // namespace mackey
