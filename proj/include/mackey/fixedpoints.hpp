#pragma once

#include <string>
#include <vector>

#include "mackey/mackey.hpp"

namespace mackey {

/// Restriction of M to the subgroups of H, as a functor over H itself.
inline MackeyFunctor categorical_fixed_points(const MackeyFunctor& M, const Subgroup& H) {
  const Group& G = M.group();
  const auto& L = G.lattice();
  SubgroupAsGroup sg = subgroup_as_group(G, H);
  const Group& Hg = sg.group;
  const auto& LH = Hg.lattice();
  std::vector<int> up(LH.size());
  for (int k = 0; k < LH.size(); ++k) {
    Subgroup K;
    for (int x : LH.subgroup(k)) K.push_back(sg.to_parent[x]);
    std::sort(K.begin(), K.end());
    up[k] = L.index_of(K);
  }
  MackeyFunctor P(Hg, M.ring());
  for (int k = 0; k < LH.size(); ++k) P.set_value(k, M.value(up[k]));
  for (int a = 0; a < LH.size(); ++a) {
    for (int b = 0; b < LH.size(); ++b) {
      if (!LH.contains(a, b)) continue;
      P.set_res(a, b, M.res(up[a], up[b]).matrix());
      P.set_tr(a, b, M.tr(up[a], up[b]).matrix());
    }
    for (int x = 0; x < Hg.order(); ++x) P.set_conj(x, a, M.conj(sg.to_parent[x], up[a]).matrix());
  }
  return P;
}

/// Subgroups of G containing N, matched with subgroups of G/N.
struct QuotientLattice {
  Quotient q;
  std::vector<int> down;  // G-subgroup index -> G/N subgroup index, -1 if N not contained
  std::vector<int> up;    // G/N subgroup index -> G-subgroup index
};

inline QuotientLattice quotient_lattice(const Group& G, const Subgroup& N) {
  if (!G.is_subgroup(N) || !G.is_normal(N)) throw DomainError("subgroup is not normal");
  QuotientLattice ql;
  ql.q = quotient_group(G, N);
  const auto& L = G.lattice();
  const auto& LW = ql.q.group.lattice();
  ql.down.assign(L.size(), -1);
  ql.up.assign(LW.size(), -1);
  for (int w = 0; w < LW.size(); ++w) {
    Subgroup H;
    for (int g = 0; g < G.order(); ++g)
      if (mackey::contains(LW.subgroup(w), ql.q.proj[g])) H.push_back(g);
    int h = L.index_of(H);
    ql.up[w] = h;
    ql.down[h] = w;
  }
  return ql;
}

/// Inflation along G -> G/N: (Infl M')(S) = M'(S^N).
struct Inflation {
  MackeyFunctor functor;
  QuotientLattice ql;
};

inline Inflation inflation_full(const MackeyFunctor& Mq, const Group& G, const Subgroup& N) {
  Inflation inf;
  inf.ql = quotient_lattice(G, N);
  const Group& W = inf.ql.q.group;
  if (!Mq.group().same_as(W)) throw DomainError("inflation: functor is not over G/N");
  const auto& L = G.lattice();
  const int ns = L.size();
  std::vector<GSet> orb(ns);
  std::vector<FixedPointSet> fix(ns);
  MackeyFunctor M(G, Mq.ring());
  for (int h = 0; h < ns; ++h) {
    orb[h] = orbit(G, L.subgroup(h));
    fix[h] = fixed_points_normal(orb[h], N);
    fix[h].set = GSet(Mq.group(), fix[h].set.size(), fix[h].set.action());
    M.set_value(h, evaluate(Mq, fix[h].set));
  }
  auto reps = [&](int h) { return coset_reps(G, L.subgroup(h)); };
  for (int h = 0; h < ns; ++h) {
    for (int k = 0; k < ns; ++k) {
      if (!L.contains(h, k)) continue;
      // projection [G/K] -> [G/H]
      auto rk = reps(k);
      std::vector<int> m(rk.size());
      for (std::size_t i = 0; i < rk.size(); ++i) m[i] = orb[h].act(rk[i], 0);
      GMap pi{orb[k], orb[h], m};
      GMap piN = fixed_points_map(pi, fix[k], fix[h]);
      M.set_res(h, k, restriction_along(Mq, piN).matrix());
      M.set_tr(h, k, transfer_along(Mq, piN).matrix());
    }
  }
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < ns; ++h) {
      int gh = L.conj(g, h);
      // [G/gHg^-1] -> [G/H], y gHg^-1 -> y g H; its pullback is conj_g
      auto r2 = reps(gh);
      std::vector<int> m(r2.size());
      for (std::size_t i = 0; i < r2.size(); ++i) m[i] = orb[h].act(G.mul(r2[i], g), 0);
      GMap phi{orb[gh], orb[h], m};
      GMap phiN = fixed_points_map(phi, fix[gh], fix[h]);
      M.set_conj(g, h, restriction_along(Mq, phiN).matrix());
    }
  inf.functor = M;
  return inf;
}

inline MackeyFunctor inflation(const MackeyFunctor& Mq, const Group& G, const Subgroup& N) {
  return inflation_full(Mq, G, N).functor;
}

/// Geometric fixed points for N normal, with the per-level projection from
/// M^H and a section back into M^H.
struct GeometricFixedPoints {
  MackeyFunctor functor;  // over G/N
  QuotientLattice ql;
  std::vector<ModuleMap> proj;     // G/N-subgroup w: M^{up(w)} -> Φ^w
  std::vector<ModuleMap> section;  // Φ^w -> M^{up(w)}
};

inline GeometricFixedPoints geometric_fixed_points_full(const MackeyFunctor& M, const Subgroup& N) {
  const Group& G = M.group();
  const auto& L = G.lattice();
  GeometricFixedPoints gf;
  gf.ql = quotient_lattice(G, N);
  const Group& W = gf.ql.q.group;
  const auto& LW = W.lattice();
  const int nw = LW.size();
  int nidx = L.index_of(N);
  MackeyFunctor P(W, M.ring());
  for (int w = 0; w < nw; ++w) {
    int h = gf.ql.up[w];
    const FPModule& V = M.value(h);
    Matrix rel = V.relations();
    for (int k : L.subgroups_of(h))
      if (!L.contains(k, nidx)) rel = Matrix::hcat(rel, M.tr(h, k).matrix());
    Simplified s = simplify(FPModule(M.ring(), V.gens(), rel));
    gf.proj.push_back(ModuleMap(V, s.module, s.to.matrix()));
    gf.section.push_back(ModuleMap(s.module, V, s.from.matrix()));
    P.set_value(w, s.module);
  }
  for (int a = 0; a < nw; ++a) {
    int h = gf.ql.up[a];
    for (int b = 0; b < nw; ++b) {
      if (!LW.contains(a, b)) continue;
      int k = gf.ql.up[b];
      P.set_res(a, b, gf.proj[b].matrix() * M.res(h, k).matrix() * gf.section[a].matrix());
      P.set_tr(a, b, gf.proj[a].matrix() * M.tr(h, k).matrix() * gf.section[b].matrix());
    }
    for (int w = 0; w < W.order(); ++w) {
      int g = gf.ql.q.rep[w];
      int gh = L.conj(g, h);
      P.set_conj(w, a, gf.proj[gf.ql.down[gh]].matrix() * M.conj(g, h).matrix() * gf.section[a].matrix());
    }
  }
  gf.functor = P;
  return gf;
}

inline MackeyFunctor geometric_fixed_points(const MackeyFunctor& M, const Subgroup& N) {
  return geometric_fixed_points_full(M, N).functor;
}

/// Φ^N applied to a morphism f: M -> M'.
inline MackeyMorphism geometric_fixed_points_map(const MackeyMorphism& f, const Subgroup& N) {
  auto a = geometric_fixed_points_full(f.source, N), b = geometric_fixed_points_full(f.target, N);
  MackeyMorphism out{a.functor, b.functor, {}};
  for (std::size_t w = 0; w < a.proj.size(); ++w)
    out.level.push_back(compose(b.proj[w], compose(f.level[a.ql.up[w]], a.section[w])));
  return out;
}

/// Canonical comparison Φ^N(A_G) -> A_{G/N}: [H/L] goes to [H/N : L/N] when N ⊆ L, else 0.
inline MackeyMorphism burnside_phi_comparison(const Group& G, const Ring& R, const Subgroup& N) {
  auto gf = geometric_fixed_points_full(burnside_mackey(G, R), N);
  const Group& W = gf.ql.q.group;
  MackeyFunctor AW = burnside_mackey(W, R);
  const auto& L = G.lattice();
  int nidx = L.index_of(N);
  MackeyMorphism f{gf.functor, AW, {}};
  for (int w = 0; w < W.lattice().size(); ++w) {
    int h = gf.ql.up[w];
    auto bG = burnside_basis_at(G, h), bW = burnside_basis_at(W, w);
    Matrix m(bW.size(), bG.size());
    for (std::size_t j = 0; j < bG.size(); ++j) {
      int l = bG[j];
      if (!L.contains(l, nidx)) continue;
      int lw = detail::h_class_rep(W, w, gf.ql.down[l]);
      for (std::size_t i = 0; i < bW.size(); ++i)
        if (bW[i] == lw) m(i, j) = 1;
    }
    f.level.push_back(ModuleMap(gf.functor.value(w), AW.value(w), m * gf.section[w].matrix()));
  }
  return f;
}

struct AdjunctionReport {
  bool unit_is_morphism = false;
  bool unit_surjective = false;
  bool counit_is_morphism = false;
  bool counit_iso = false;
  std::vector<std::string> notes;
  bool ok() const { return unit_is_morphism && unit_surjective && counit_is_morphism && counit_iso; }
};

/// Unit M -> Infl Φ M (levelwise: projection onto Φ, zero where N ⊄ H).
inline MackeyMorphism inflation_unit(const MackeyFunctor& M, const Subgroup& N) {
  auto gf = geometric_fixed_points_full(M, N);
  MackeyFunctor I = inflation(gf.functor, M.group(), N);
  MackeyMorphism eta{M, I, {}};
  for (int h = 0; h < M.subgroup_count(); ++h) {
    int w = gf.ql.down[h];
    if (w < 0)
      eta.level.push_back(ModuleMap::zero(M.value(h), I.value(h)));
    else
      eta.level.push_back(ModuleMap(M.value(h), I.value(h), gf.proj[w].matrix()));
  }
  return eta;
}

/// Counit Φ Infl M' -> M' for M' over G/N.
inline MackeyMorphism inflation_counit(const MackeyFunctor& Mq, const Group& G, const Subgroup& N) {
  MackeyFunctor I = inflation(Mq, G, N);
  auto gf = geometric_fixed_points_full(I, N);
  MackeyMorphism eps{gf.functor, Mq, {}};
  for (std::size_t w = 0; w < gf.section.size(); ++w)
    eps.level.push_back(ModuleMap(gf.functor.value(w), Mq.value(w), gf.section[w].matrix()));
  return eps;
}

/// (a) unit M -> Infl Φ M is a levelwise surjective morphism; (b) Φ Infl M' -> M' is an isomorphism,
/// checked for M' = Φ^N M and for M' = the Burnside functor of G/N.
inline AdjunctionReport adjunction_checks(const MackeyFunctor& M, const Subgroup& N) {
  AdjunctionReport rep;
  MackeyMorphism eta = inflation_unit(M, N);
  auto bad = eta.check(3);
  rep.unit_is_morphism = bad.empty();
  for (auto& s : bad) rep.notes.push_back("unit: " + s);
  rep.unit_surjective = true;
  for (auto& f : eta.level)
    if (!is_surjective(f)) rep.unit_surjective = false;
  MackeyFunctor Phi = geometric_fixed_points(M, N);
  rep.counit_is_morphism = rep.counit_iso = true;
  for (const MackeyFunctor& Mq : {Phi, burnside_mackey(Phi.group(), M.ring())}) {
    MackeyMorphism eps = inflation_counit(Mq, M.group(), N);
    auto b2 = eps.check(3);
    if (!b2.empty()) rep.counit_is_morphism = false;
    for (auto& s : b2) rep.notes.push_back("counit: " + s);
    if (!eps.is_isomorphism()) rep.counit_iso = false;
  }
  return rep;
}

/// Relabel a functor along a group isomorphism: elem[t] is the source element
/// matching element t of `target`.
inline MackeyFunctor relabel(const MackeyFunctor& M, const Group& target, const std::vector<int>& elem) {
  const Group& S = M.group();
  const auto& LS = S.lattice();
  const auto& LT = target.lattice();
  std::vector<int> sub(LT.size());
  for (int t = 0; t < LT.size(); ++t) {
    Subgroup H;
    for (int x : LT.subgroup(t)) H.push_back(elem[x]);
    std::sort(H.begin(), H.end());
    sub[t] = LS.index_of(H);
  }
  MackeyFunctor P(target, M.ring());
  for (int t = 0; t < LT.size(); ++t) P.set_value(t, M.value(sub[t]));
  for (int a = 0; a < LT.size(); ++a) {
    for (int b = 0; b < LT.size(); ++b) {
      if (!LT.contains(a, b)) continue;
      P.set_res(a, b, M.res(sub[a], sub[b]).matrix());
      P.set_tr(a, b, M.tr(sub[a], sub[b]).matrix());
    }
    for (int x = 0; x < target.order(); ++x) P.set_conj(x, a, M.conj(elem[x], sub[a]).matrix());
  }
  return P;
}

/// For N ⊆ N' normal in G: the comparison Φ^{N'/N} Φ^N M -> Φ^{N'} M, relabelled over G/N'.
struct PhiTransitivity {
  MackeyMorphism map;  // both sides over G/N'
};

inline PhiTransitivity phi_transitivity(const MackeyFunctor& M, const Subgroup& N, const Subgroup& Np) {
  if (!is_subset(N, Np)) throw DomainError("phi_transitivity: N must be contained in N'");
  auto g1 = geometric_fixed_points_full(M, N);
  const Quotient& q1 = g1.ql.q;
  Subgroup Nbar;
  for (int w = 0; w < q1.group.order(); ++w)
    if (mackey::contains(Np, q1.rep[w])) Nbar.push_back(w);
  auto g2 = geometric_fixed_points_full(g1.functor, Nbar);
  auto g3 = geometric_fixed_points_full(M, Np);
  const Quotient &q2 = g2.ql.q, &q3 = g3.ql.q;
  // element of G/N' -> element of (G/N)/(N'/N)
  std::vector<int> elem(q3.group.order());
  for (int t = 0; t < q3.group.order(); ++t) elem[t] = q2.proj[q1.proj[q3.rep[t]]];
  MackeyFunctor lhs = relabel(g2.functor, q3.group, elem);
  MackeyMorphism f{lhs, g3.functor, {}};
  for (int t = 0; t < q3.group.lattice().size(); ++t) {
    int h = g3.ql.up[t];                 // H ⊇ N' in G
    int w1 = g1.ql.down[h];              // H/N in G/N
    int w2 = g2.ql.down[w1];             // (H/N)/(N'/N)
    Matrix c = g3.proj[t].matrix() * g1.section[w1].matrix() * g2.section[w2].matrix();
    f.level.push_back(ModuleMap(lhs.value(t), g3.functor.value(t), c));
  }
  return {f};
}

}  // namespace mackey
