#include <gtest/gtest.h>

#include <random>

#include "mackey/box.hpp"
#include "mackey/fixedpoints.hpp"
#include "mackey/simplicial.hpp"

using namespace mackey;

namespace {

const Ring Z = Ring::integers();

std::vector<std::pair<std::string, Group>> test_groups() {
  return {{"C2", Group::cyclic(2)},    {"C3", Group::cyclic(3)},    {"C4", Group::cyclic(4)},
          {"C6", Group::cyclic(6)},    {"V4", Group::klein_four()}, {"S3", Group::symmetric3()},
          {"D8", Group::dihedral(8)}};
}

MackeyFunctor regular_fixed_points(const Group& G, const Ring& R = Z) {
  return fixed_point_mackey(G, R, permutation_representation(orbit(G, {0})));
}

Subgroup subgroup_of_order(const Group& G, int order) {
  const auto& L = G.lattice();
  for (int h = 0; h < L.size(); ++h)
    if (L.order_of(h) == order && G.is_normal(L.subgroup(h))) return L.subgroup(h);
  throw std::logic_error("no normal subgroup of that order");
}

bool levelwise_isomorphic(const MackeyFunctor& A, const MackeyFunctor& B) {
  if (A.subgroup_count() != B.subgroup_count()) return false;
  for (int h = 0; h < A.subgroup_count(); ++h)
    if (!modules_isomorphic(A.value(h), B.value(h))) return false;
  return true;
}

// Equivariant map sending each orbit base of S to a random point with a larger stabilizer.
GMap random_gmap(const GSet& S, const GSet& T, std::mt19937& rng) {
  const Group& G = S.group();
  std::vector<int> m(S.size(), -1);
  for (auto& o : orbits(S)) {
    Subgroup st = S.stabilizer(o.base);
    std::vector<int> ok;
    for (int y = 0; y < T.size(); ++y)
      if (T.is_fixed(y, st)) ok.push_back(y);
    int y = ok[rng() % ok.size()];
    for (int g = 0; g < G.order(); ++g) m[S.act(g, o.base)] = T.act(g, y);
  }
  return GMap{S, T, m};
}

// Burnside coordinates of the K-set obtained by restricting the H-set H/L.
std::vector<Scalar> restricted_orbit_coords(const Group& G, const Subgroup& H, const Subgroup& Lsub, const Subgroup& K) {
  const auto& LG = G.lattice();
  auto basis = burnside_basis_at(G, LG.index_of(K));
  std::vector<Scalar> out(basis.size(), 0);
  // cosets hL of H
  std::vector<Subgroup> cosets;
  for (int h : H) {
    Subgroup c;
    for (int l : Lsub) c.push_back(G.mul(h, l));
    std::sort(c.begin(), c.end());
    if (std::find(cosets.begin(), cosets.end(), c) == cosets.end()) cosets.push_back(c);
  }
  std::vector<char> seen(cosets.size(), 0);
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    if (seen[i]) continue;
    for (int k : K) {
      Subgroup c;
      for (int x : cosets[i]) c.push_back(G.mul(k, x));
      std::sort(c.begin(), c.end());
      seen[std::find(cosets.begin(), cosets.end(), c) - cosets.begin()] = 1;
    }
    // stabilizer K ∩ hLh^-1 for h the least element of the coset
    int h = cosets[i][0];
    Subgroup st;
    for (int k : K)
      if (contains(Lsub, G.conj(G.inv(h), k))) st.push_back(k);
    bool found = false;
    for (std::size_t b = 0; b < basis.size() && !found; ++b)
      for (int k : K) {
        Subgroup c;
        for (int x : st) c.push_back(G.conj(k, x));
        std::sort(c.begin(), c.end());
        if (c == LG.subgroup(basis[b])) {
          out[b] += 1;
          found = true;
          break;
        }
      }
    if (!found) throw std::logic_error("stabilizer not among the basis classes");
  }
  return out;
}

}  // namespace

// ---- Mackey functors -----------------------------------------------------------

TEST(Mackey, ConstructedFunctorsSatisfyAxioms) {
  for (auto& [name, G] : test_groups()) {
    EXPECT_TRUE(check_axioms(burnside_mackey(G, Z)).ok()) << name;
    EXPECT_TRUE(check_axioms(regular_fixed_points(G)).ok()) << name;
    EXPECT_TRUE(check_axioms(fixed_point_mackey(G, Z, trivial_representation(G))).ok()) << name;
    EXPECT_TRUE(check_axioms(zero_mackey(G, Z)).ok()) << name;
  }
  MackeyFunctor T(Group(), Z);
  T.set_value(0, FPModule::cyclic(Z, 5));
  T.fill_defaults();
  EXPECT_TRUE(check_axioms(T).ok());
}

TEST(Mackey, CorruptedTransferIsReported) {
  MackeyFunctor A = burnside_mackey(Group::cyclic(4), Z);
  const auto& L = A.lattice();
  int e = L.trivial(), h = L.index_of({0, 2});
  Matrix bad = A.tr(h, e).matrix();
  bad(0, 0) += 1;
  A.set_tr(h, e, bad);
  auto rep = check_axioms(A);
  ASSERT_FALSE(rep.ok());
  bool named = false;
  for (auto& v : rep.violations) named = named || v.find("{0,2}") != std::string::npos;
  EXPECT_TRUE(named);
}

TEST(Mackey, BurnsideFunctorMatchesSetComputation) {
  for (auto& [name, G] : test_groups()) {
    MackeyFunctor A = burnside_mackey(G, Z);
    const auto& L = G.lattice();
    for (int h = 0; h < L.size(); ++h) {
      auto bh = burnside_basis_at(G, h);
      EXPECT_EQ(A.value(h).gens(), bh.size()) << name;
      for (int k = 0; k < L.size(); ++k) {
        if (!L.contains(h, k)) continue;
        for (std::size_t a = 0; a < bh.size(); ++a)
          EXPECT_EQ(A.res(h, k).matrix().col(a),
                    restricted_orbit_coords(G, L.subgroup(h), L.subgroup(bh[a]), L.subgroup(k)))
              << name;
      }
    }
  }
  MackeyFunctor A2 = burnside_mackey(Group::cyclic(2), Z);
  EXPECT_EQ(A2.value(1).invariants(), (std::vector<Scalar>{0, 0}));
  Matrix rt = A2.res(1, 0).matrix() * A2.tr(1, 0).matrix();
  EXPECT_EQ(rt(0, 0), 2);
  EXPECT_EQ(burnside_mackey(Group(), Z).value(0).invariants(), std::vector<Scalar>{0});
}

TEST(Mackey, FixedPointFunctors) {
  for (auto& [name, G] : test_groups()) {
    MackeyFunctor T = fixed_point_mackey(G, Z, trivial_representation(G));
    MackeyFunctor R = regular_fixed_points(G);
    const auto& L = G.lattice();
    for (int h = 0; h < L.size(); ++h) {
      EXPECT_EQ(T.value(h).invariants(), std::vector<Scalar>{0}) << name;
      // rank of Z[G]^H = number of H-orbits on G
      EXPECT_EQ(R.value(h).free_rank(), static_cast<std::size_t>(G.order() / L.order_of(h))) << name;
      for (int k = 0; k < L.size(); ++k)
        if (L.contains(h, k)) { EXPECT_EQ(T.tr(h, k).matrix()(0, 0), L.order_of(h) / L.order_of(k)) << name; }
    }
  }
  MackeyFunctor R2 = regular_fixed_points(Group::cyclic(2));
  EXPECT_EQ(R2.value(1).free_rank(), 1u);
  EXPECT_EQ(R2.value(0).free_rank(), 2u);
  std::vector<Matrix> rho = {Matrix::identity(2)};
  EXPECT_EQ(fixed_point_mackey(Group(), Z, rho).value(0).free_rank(), 2u);
  // not an action
  Matrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = 1;
  EXPECT_THROW(fixed_point_mackey(Group::cyclic(3), Z, {Matrix::identity(2), swap, swap}), DomainError);
}

TEST(Mackey, Evaluation) {
  Group C2 = Group::cyclic(2);
  MackeyFunctor A = burnside_mackey(C2, Z);
  EXPECT_TRUE(evaluate(A, GSet::empty(C2)).is_zero());
  GSet S = disjoint_union(orbit(C2, {0}), GSet::point(C2));
  EXPECT_EQ(evaluate(A, S).invariants(), (std::vector<Scalar>{0, 0, 0}));
  // transfer along [G/e] -> [G/G]
  GSet f = orbit(C2, {0}), pt = GSet::point(C2);
  GMap to_pt{f, pt, {0, 0}};
  ModuleMap t = induced_map(A, identity_map(f), to_pt);
  EXPECT_EQ(t.matrix().col(0), (std::vector<Scalar>{1, 0}));
}

TEST(Mackey, EvaluationIsAdditive) {
  for (auto& [name, G] : test_groups()) {
    MackeyFunctor M = regular_fixed_points(G);
    const auto& L = G.lattice();
    GSet S = orbit(G, L.subgroup(L.whole())), T = orbit(G, L.subgroup(L.size() > 2 ? 1 : 0));
    GSet U = disjoint_union(S, T);
    std::vector<int> is(S.size()), it(T.size());
    for (int x = 0; x < S.size(); ++x) is[x] = x;
    for (int x = 0; x < T.size(); ++x) it[x] = S.size() + x;
    ModuleMap ps = induced_map(M, GMap{S, U, is}, identity_map(S));
    ModuleMap pt = induced_map(M, GMap{T, U, it}, identity_map(T));
    EXPECT_EQ(Matrix::vcat(ps.matrix(), pt.matrix()), Matrix::identity(evaluate(M, U).gens())) << name;
    EXPECT_TRUE(modules_isomorphic(evaluate(M, U), direct_sum(evaluate(M, S), evaluate(M, T)))) << name;
  }
}

TEST(Mackey, SpanCompositionMatchesFiberedProduct) {
  std::mt19937 rng(17);
  for (auto& [name, G] : test_groups()) {
    if (G.order() > 6) continue;
    MackeyFunctor M = burnside_mackey(G, Z);
    const auto& L = G.lattice();
    auto rand_set = [&] {
      GSet S = GSet::point(G);
      int k = rng() % 3;
      for (int i = 0; i < k; ++i) S = disjoint_union(S, orbit(G, L.subgroup(rng() % L.size())));
      return S;
    };
    for (int t = 0; t < 6; ++t) {
      GSet S = rand_set(), T = rand_set(), U = rand_set();
      GSet A = rand_set(), B = rand_set();
      GMap l1 = random_gmap(A, S, rng), r1 = random_gmap(A, T, rng);
      GMap l2 = random_gmap(B, T, rng), r2 = random_gmap(B, U, rng);
      auto fp = fibered_product(r1, l2);
      ModuleMap lhs = compose(induced_map(M, l2, r2), induced_map(M, l1, r1));
      ModuleMap rhs = induced_map(M, compose(l1, fp.p1), compose(r2, fp.p2));
      EXPECT_TRUE(lhs.equals(rhs)) << name;
    }
  }
}

TEST(Mackey, BurnsideAction) {
  Group C2 = Group::cyclic(2);
  MackeyFunctor A = burnside_mackey(C2, Z);
  GSet pt = GSet::point(C2);
  ModuleMap unit = burnside_action(burnside_unit(C2), A, pt);
  EXPECT_EQ(unit.matrix(), Matrix::identity(2));
  ModuleMap free = burnside_action(burnside_basis(C2, 0), A, pt);
  EXPECT_EQ(free.matrix(), A.tr(1, 0).matrix() * A.res(1, 0).matrix());
  for (auto& [name, G] : test_groups()) {
    MackeyFunctor M = regular_fixed_points(G);
    const int nc = G.lattice().class_count();
    GSet S = disjoint_union(GSet::point(G), orbit(G, G.lattice().subgroup(G.lattice().class_rep(nc > 2 ? 1 : 0))));
    EXPECT_TRUE(burnside_action(burnside_unit(G), M, S).equals(ModuleMap::identity(evaluate(M, S)))) << name;
    for (int a = 0; a < nc; ++a)
      for (int b = 0; b < nc; ++b) {
        auto x = burnside_basis(G, a), y = burnside_basis(G, b);
        ModuleMap ab = compose(burnside_action(x, M, S), burnside_action(y, M, S));
        EXPECT_TRUE(ab.equals(burnside_action(multiply_geometric(x, y), M, S))) << name;
        EXPECT_TRUE((burnside_action(x, M, S) + burnside_action(y, M, S)).equals(burnside_action(x + y, M, S))) << name;
      }
  }
}

// ---- box product ---------------------------------------------------------------

TEST(Box, UnitIsomorphism) {
  for (auto G : {Group::cyclic(2), Group::cyclic(4), Group::symmetric3()}) {
    for (const auto& M : {burnside_mackey(G, Z), regular_fixed_points(G), fixed_point_mackey(G, Z, trivial_representation(G))}) {
      MackeyMorphism u = box_unit_map(M);
      EXPECT_TRUE(u.is_isomorphism());
      EXPECT_TRUE(check_axioms(u.source).ok());
    }
  }
}

TEST(Box, Examples) {
  Group C2 = Group::cyclic(2);
  MackeyFunctor A = burnside_mackey(C2, Z);
  MackeyFunctor AA = box_product(A, A);
  EXPECT_EQ(AA.value(1).invariants(), (std::vector<Scalar>{0, 0}));
  EXPECT_TRUE(check_axioms(AA).ok());
  MackeyFunctor M(Group(), Z), N(Group(), Z);
  M.set_value(0, FPModule::from_invariants(Z, {2, 0}));
  N.set_value(0, FPModule::from_invariants(Z, {4, 3}));
  M.fill_defaults();
  N.fill_defaults();
  EXPECT_TRUE(modules_isomorphic(box_product(M, N).value(0), tensor(M.value(0), N.value(0))));
  EXPECT_THROW(box_product(A, burnside_mackey(C2, Ring::rationals())), DomainError);
}

TEST(Box, CommutesWithFixedPoints) {
  Group C4 = Group::cyclic(4);
  MackeyFunctor A = burnside_mackey(C4, Z), R = regular_fixed_points(C4);
  MackeyFunctor AR = box_product(A, R);
  for (const Subgroup& H : {Subgroup{0, 2}, Subgroup{0}}) {
    MackeyFunctor lhs = categorical_fixed_points(AR, H);
    MackeyFunctor rhs = box_product(categorical_fixed_points(A, H), categorical_fixed_points(R, H));
    EXPECT_TRUE(levelwise_isomorphic(lhs, rhs));
  }
  MackeyFunctor T = fixed_point_mackey(C4, Z, trivial_representation(C4));
  for (const Subgroup& N : {Subgroup{0, 2}, Subgroup{0, 1, 2, 3}}) {
    for (const auto& X : {R, T}) {
      MackeyFunctor lhs = geometric_fixed_points(box_product(A, X), N);
      MackeyFunctor rhs = box_product(geometric_fixed_points(A, N), geometric_fixed_points(X, N));
      EXPECT_TRUE(levelwise_isomorphic(lhs, rhs));
    }
  }
}

// ---- fixed points and inflation ------------------------------------------------

TEST(FixedPoints, Categorical) {
  Group C4 = Group::cyclic(4);
  MackeyFunctor A = burnside_mackey(C4, Z);
  MackeyFunctor whole = categorical_fixed_points(A, {0, 1, 2, 3});
  EXPECT_TRUE(levelwise_isomorphic(whole, A));
  MackeyFunctor triv = categorical_fixed_points(A, {0});
  EXPECT_EQ(triv.group().order(), 1);
  EXPECT_TRUE(modules_isomorphic(triv.value(0), A.value(0)));
  MackeyFunctor half = categorical_fixed_points(A, {0, 2});
  EXPECT_TRUE(check_axioms(half).ok());
  EXPECT_TRUE(levelwise_isomorphic(half, burnside_mackey(half.group(), Z)));
  for (auto& [name, G] : test_groups()) {
    const auto& L = G.lattice();
    for (int h = 0; h < L.size(); ++h)
      EXPECT_TRUE(check_axioms(categorical_fixed_points(regular_fixed_points(G), L.subgroup(h))).ok()) << name;
  }
}

TEST(FixedPoints, GeometricOfBurnside) {
  Group C2 = Group::cyclic(2);
  MackeyFunctor P = geometric_fixed_points(burnside_mackey(C2, Z), {0, 1});
  EXPECT_EQ(P.value(0).invariants(), std::vector<Scalar>{0});
  for (auto& [name, G] : test_groups()) {
    const auto& L = G.lattice();
    for (int n = 0; n < L.size(); ++n) {
      const Subgroup& N = L.subgroup(n);
      if (!G.is_normal(N)) continue;
      MackeyFunctor Phi = geometric_fixed_points(burnside_mackey(G, Z), N);
      EXPECT_TRUE(check_axioms(Phi).ok()) << name;
      // independent: Burnside functor of the quotient group
      EXPECT_TRUE(levelwise_isomorphic(Phi, burnside_mackey(quotient_group(G, N).group, Z))) << name;
      EXPECT_TRUE(burnside_phi_comparison(G, Z, N).is_isomorphism()) << name;
    }
  }
  MackeyFunctor R = regular_fixed_points(C2);
  EXPECT_TRUE(levelwise_isomorphic(geometric_fixed_points(R, {0}), R));
}

TEST(FixedPoints, GeometricOfFixedPointFunctor) {
  // Φ^G of the trivial module Z over C_p is Z/p
  for (int p : {2, 3}) {
    Group C = Group::cyclic(p);
    Subgroup all(p);
    std::iota(all.begin(), all.end(), 0);
    MackeyFunctor P = geometric_fixed_points(fixed_point_mackey(C, Z, trivial_representation(C)), all);
    EXPECT_EQ(P.value(0).invariants(), std::vector<Scalar>{p});
    MackeyFunctor F = geometric_fixed_points(regular_fixed_points(C), all);
    EXPECT_TRUE(F.value(0).is_zero());
  }
}

TEST(FixedPoints, Inflation) {
  for (auto& [name, G] : test_groups()) {
    const auto& L = G.lattice();
    for (int n = 0; n < L.size(); ++n) {
      const Subgroup& N = L.subgroup(n);
      if (!G.is_normal(N)) continue;
      Group W = quotient_group(G, N).group;
      MackeyFunctor Mq = burnside_mackey(W, Z);
      MackeyFunctor I = inflation(Mq, G, N);
      EXPECT_TRUE(check_axioms(I).ok()) << name;
      for (int h = 0; h < L.size(); ++h)
        if (!is_subset(N, L.subgroup(h))) { EXPECT_TRUE(I.value(h).is_zero()) << name; }
      // Φ ∘ Infl is the identity on values
      EXPECT_TRUE(levelwise_isomorphic(geometric_fixed_points(I, N), Mq)) << name;
      // unit on an inflated functor is an isomorphism
      EXPECT_TRUE(inflation_unit(I, N).is_isomorphism()) << name;
    }
  }
  Group C4 = Group::cyclic(4);
  MackeyFunctor A = burnside_mackey(C4, Z);
  EXPECT_TRUE(levelwise_isomorphic(inflation(burnside_mackey(quotient_group(C4, {0}).group, Z), C4, {0}), A));
  MackeyFunctor pt(Group(), Z);
  pt.set_value(0, FPModule::free(Z, 3));
  pt.fill_defaults();
  MackeyFunctor top = inflation(pt, C4, {0, 1, 2, 3});
  for (int h = 0; h < 3; ++h) EXPECT_EQ(top.value(h).free_rank(), h == 2 ? 3u : 0u);
  EXPECT_THROW(inflation(pt, Group::symmetric3(), {0, 1}), DomainError);
}

TEST(FixedPoints, Adjunction) {
  for (auto& [name, G] : test_groups()) {
    const auto& L = G.lattice();
    for (int n = 0; n < L.size(); ++n) {
      const Subgroup& N = L.subgroup(n);
      if (!G.is_normal(N)) continue;
      for (const auto& M : {burnside_mackey(G, Z), regular_fixed_points(G)}) {
        auto rep = adjunction_checks(M, N);
        EXPECT_TRUE(rep.ok()) << name;
      }
    }
  }
}

TEST(FixedPoints, Transitivity) {
  Group C4 = Group::cyclic(4), D8 = Group::dihedral(8);
  for (const auto& M : {burnside_mackey(C4, Z), regular_fixed_points(C4)}) {
    auto T = phi_transitivity(M, {0, 2}, {0, 1, 2, 3});
    EXPECT_TRUE(T.map.is_isomorphism());
  }
  Subgroup center = subgroup_of_order(D8, 2);
  Subgroup all(8);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_TRUE(phi_transitivity(burnside_mackey(D8, Z), center, all).map.is_isomorphism());
}

// ---- simplicial G-sets ---------------------------------------------------------

TEST(Simplicial, ConeLevelSizes) {
  Group C2 = Group::cyclic(2);
  auto X = build_adapted_candidate(C2, {0, 1}, 5);
  // one copy of E(T) x (nonconstant simplices of Δ[1]) plus the two collapsed ends
  const Cell t = 2;
  for (int n = 0; n <= 5; ++n) {
    Cell pw = 1;
    for (int i = 0; i <= n; ++i) pw *= t;
    EXPECT_EQ(X.size(n), 2 + static_cast<Cell>(n) * pw);
  }
  EXPECT_TRUE(check_simplicial(X.model()).ok());
  EXPECT_THROW(build_adapted_candidate(Group::symmetric3(), {0, 1}, 3), DomainError);
}

TEST(Simplicial, FromTablesValidates) {
  Group C2 = Group::cyclic(2);
  auto tabs = one_plus(C2, 2).tables(2);
  tabs[1].faces[0] = {1, 1};  // moves the basepoint
  EXPECT_THROW(PointedSimplicialGSet::from_tables(C2, tabs), DomainError);
}

TEST(Simplicial, Adapted) {
  auto r = is_adapted(build_adapted_candidate(Group::cyclic(2), {0, 1}, 6), {0, 1});
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.verified_through, 4);
  EXPECT_TRUE(is_adapted(build_adapted_candidate(Group::cyclic(4), {0, 2}, 5), {0, 2}).ok());
  EXPECT_FALSE(is_adapted(trivial_circle(Group::cyclic(2), 4), {0, 1}).ok());
  EXPECT_TRUE(is_adapted(one_plus(Group::cyclic(2), 3), {0}).fixed_clause);
}

TEST(Simplicial, Spheres) {
  Group C2 = Group::cyclic(2);
  auto sgn = [](int g) { return g == 0 ? 1 : -1; };
  auto S = is_homological_sphere(sign_circle(C2, sgn, 4));
  ASSERT_TRUE(S.ok());
  EXPECT_EQ(S.entries[0].dimension, 1);
  EXPECT_EQ(S.entries[1].dimension, 0);
  auto SS = is_homological_sphere(smash(sign_circle(C2, sgn, 4), sign_circle(C2, sgn, 4)));
  ASSERT_TRUE(SS.ok());
  EXPECT_EQ(SS.entries[0].dimension, 2);
  EXPECT_EQ(SS.entries[1].dimension, 0);
  auto P = is_homological_sphere(one_plus(C2, 3));
  ASSERT_TRUE(P.ok());
  for (auto& e : P.entries) EXPECT_EQ(e.dimension, 0);
  auto h = reduced_homology(trivial_circle(C2, 4), {0}, 2);
  EXPECT_TRUE(h[0].is_zero());
  EXPECT_EQ(h[1].invariants(), std::vector<Scalar>{0});
  EXPECT_TRUE(h[2].is_zero());
}

TEST(Simplicial, SmashFixedPointCounts) {
  Group C4 = Group::cyclic(4);
  auto X = build_adapted_candidate(C4, {0, 2}, 2);
  GSet S = disjoint_union(orbit(C4, {0, 2}), GSet::point(C4));
  auto XS = smash(X, S);
  const auto& L = C4.lattice();
  for (int h = 0; h < L.size(); ++h) {
    const Subgroup& H = L.subgroup(h);
    int sh = fixed_points(S, H).set.size();
    for (int n = 0; n <= 2; ++n)
      EXPECT_EQ(XS.fixed_points(H, n).size(), (X.fixed_points(H, n).size() - 1) * sh + 1);
  }
}

TEST(Simplicial, DegreeZeroMatchesGeometricFixedPoints) {
  struct Case {
    Group G;
    Subgroup N;
  };
  for (auto& c : {Case{Group::cyclic(2), {0, 1}}, Case{Group::cyclic(4), {0, 2}}}) {
    MackeyFunctor A = burnside_mackey(c.G, Z);
    auto gf = geometric_fixed_points_full(A, c.N);
    auto X = build_adapted_candidate(c.G, c.N, 3);
    const auto& L = c.G.lattice();
    for (int h = 0; h < L.size(); ++h) {
      if (!is_subset(c.N, L.subgroup(h))) continue;
      GSet S = orbit(c.G, L.subgroup(h));
      auto H = mackey_homology(smash(X, S), A, 0);
      EXPECT_TRUE(modules_isomorphic(H[0], gf.functor.value(gf.ql.down[h])));
    }
  }
}

TEST(Simplicial, MackeyHomologyOfConstant) {
  Group C2 = Group::cyclic(2);
  auto h = mackey_homology(one_plus(C2, 3), burnside_mackey(C2, Z), 1);
  EXPECT_EQ(h[0].invariants(), (std::vector<Scalar>{0, 0}));
  EXPECT_TRUE(h[1].is_zero());
}
