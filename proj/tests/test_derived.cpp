#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "mackey/cyclic_derived.hpp"
#include "mackey/profunctor.hpp"

using namespace mackey;

namespace {

const Ring Z = Ring::integers();

std::vector<MackeyFunctor> heart_examples(int p) {
  Group C = Group::cyclic(p);
  return {burnside_mackey(C, Z), fixed_point_mackey(C, Z, trivial_representation(C)),
          fixed_point_mackey(C, Z, permutation_representation(orbit(C, {0})))};
}

// Number of orbits of Z acting diagonally on Z/n x Z/m, and their common size.
std::pair<int, int> diagonal_orbits(int n, int m) {
  std::vector<char> seen(n * m, 0);
  int count = 0, size = 0;
  for (int s = 0; s < n * m; ++s) {
    if (seen[s]) continue;
    ++count;
    int a = s / m, b = s % m, len = 0;
    while (!seen[a * m + b]) {
      seen[a * m + b] = 1;
      a = (a + 1) % n;
      b = (b + 1) % m;
      ++len;
    }
    size = len;
  }
  return {count, size};
}

Integer ipow(const Integer& a, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= a;
  return r;
}

int prime_to_p_part(int m, int p) {
  while (m % p == 0) m /= p;
  return m;
}

}  // namespace

// ---- resolutions and group (co)homology -----------------------------------------

TEST(CyclicDerived, ResolutionsAreExact) {
  for (int p : {2, 3, 5}) {
    EXPECT_TRUE(periodic_resolution(p, 6).check().empty());
    EXPECT_TRUE(padded_resolution(p, 6).check().empty());
    EXPECT_TRUE(periodic_resolution(p, 4, Ring::rationals()).check().empty());
  }
  EXPECT_THROW(periodic_resolution(1, 3), DomainError);
  EXPECT_THROW(periodic_resolution(2, -1), DomainError);
}

TEST(CyclicDerived, HomologyAndCohomologyOfTrivialModule) {
  for (int p : {2, 3, 5}) {
    auto E = sigma_trivial(p, Z);
    auto P = periodic_resolution(p, 7);
    ChainComplex h = group_homology_complex(E, P);
    EXPECT_EQ(h.homology(0).invariants(), std::vector<Scalar>{0});
    for (int n = 1; n <= 5; ++n) {
      if (n % 2) EXPECT_EQ(h.homology(n).invariants(), std::vector<Scalar>{p}) << n;
      else EXPECT_TRUE(h.homology(n).is_zero()) << n;
    }
    // cohomology sits in degree -k
    ChainComplex c = group_cohomology_complex(E, P);
    EXPECT_EQ(c.homology(0).invariants(), std::vector<Scalar>{0});
    for (int k = 1; k <= 5; ++k) {
      if (k % 2) EXPECT_TRUE(c.homology(-k).is_zero()) << k;
      else EXPECT_EQ(c.homology(-k).invariants(), std::vector<Scalar>{p}) << k;
    }
  }
}

TEST(CyclicDerived, ResolutionsAgree) {
  for (int p : {2, 3}) {
    auto E = sigma_module(p, FPModule::free(Z, p), Matrix::identity(p));
    ChainComplex a = group_homology_complex(E, periodic_resolution(p, 6));
    ChainComplex b = group_homology_complex(E, padded_resolution(p, 6));
    for (int n = 0; n <= 4; ++n) EXPECT_TRUE(modules_isomorphic(a.homology(n), b.homology(n))) << n;
  }
}

TEST(CyclicDerived, SigmaModuleValidation) {
  Matrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = 1;
  EXPECT_THROW(sigma_module(3, FPModule::free(Z, 2), swap), DomainError);
  EXPECT_NO_THROW(sigma_module(2, FPModule::free(Z, 2), swap));
}

TEST(Tate, TrivialModule) {
  for (int p : {2, 3}) {
    auto T = tate_homology(sigma_trivial(p, Z), -4, 4);
    for (int n = -4; n <= 4; ++n) {
      if (n % 2 == 0) EXPECT_EQ(T.homology.at(n).invariants(), std::vector<Scalar>{p}) << n;
      else EXPECT_TRUE(T.homology.at(n).is_zero()) << n;
    }
    auto U = tate_homology(sigma_trivial(p, Z), -4, 4, padded_resolution(p, 12));
    for (int n = -4; n <= 4; ++n) EXPECT_TRUE(modules_isomorphic(T.homology.at(n), U.homology.at(n))) << n;
  }
}

TEST(Tate, FreeRationalAndModular) {
  for (int p : {2, 3}) {
    auto F = tate_homology(sigma_regular(p, Z), -3, 3);
    for (auto& [n, h] : F.homology) EXPECT_TRUE(h.is_zero()) << n;
    auto Q = tate_homology(sigma_trivial(p, Ring::rationals()), -3, 3);
    for (auto& [n, h] : Q.homology) EXPECT_TRUE(h.is_zero()) << n;
    auto M = tate_homology(sigma_trivial(p, Ring::integers_mod(p)), -3, 3);
    for (auto& [n, h] : M.homology) EXPECT_EQ(h.invariants(), std::vector<Scalar>{p}) << n;
  }
  EXPECT_THROW(tate_homology(sigma_trivial(2, Z), -8, 8, periodic_resolution(2, 6)), DomainError);
  EXPECT_THROW(tate_homology(sigma_trivial(2, Z), 0, 0, periodic_resolution(3, 6)), DomainError);
}

TEST(Tate, SumOfModules) {
  // Z ⊕ Z[C_2] has Tate homology of Z alone
  Matrix s = Matrix::identity(3);
  s(1, 1) = s(2, 2) = 0;
  s(1, 2) = s(2, 1) = 1;
  auto T = tate_homology(sigma_module(2, FPModule::free(Z, 3), s), -2, 2);
  for (int n = -2; n <= 2; ++n) EXPECT_EQ(T.homology.at(n).invariants(), n % 2 ? std::vector<Scalar>{} : std::vector<Scalar>{2});
}

// ---- derived Mackey functors over Z/p -------------------------------------------

TEST(DerivedMackey, HeartEmbeddingMatchesGeometricFixedPoints) {
  for (int p : {2, 3}) {
    for (const auto& M : heart_examples(p)) {
      auto X = heart_embedding(M);
      EXPECT_TRUE(X.check().empty());
      ChainComplex c = geometric_fixed_points_derived(X);
      Subgroup all(p);
      std::iota(all.begin(), all.end(), 0);
      FPModule phi = geometric_fixed_points(M, all).value(0);
      EXPECT_TRUE(modules_isomorphic(c.homology(0), phi));
    }
  }
  EXPECT_THROW(heart_embedding(burnside_mackey(Group::cyclic(4), Z)), DomainError);
}

TEST(DerivedMackey, TateRoundTripPreservesE1) {
  for (int p : {2, 3}) {
    for (const auto& M : heart_examples(p)) {
      auto X = heart_embedding(M, 8);
      auto T = to_tate(X);
      EXPECT_TRUE(T.phi.is_chain_map());
      auto Y = from_tate(T);
      EXPECT_TRUE(Y.check().empty());
      for (int n = -3; n <= 3; ++n)
        EXPECT_TRUE(modules_isomorphic(X.E1.homology(n), Y.E1.homology(n))) << "p=" << p << " n=" << n;
    }
  }
}

TEST(DerivedMackey, PairRoundTrip) {
  for (int p : {2, 3, 5}) {
    for (const auto& M : heart_examples(p)) {
      CyclicPair P = pair_from_mackey(M);
      EXPECT_TRUE(P.check().empty());
      MackeyFunctor N = mackey_from_pair(P);
      EXPECT_TRUE(check_axioms(N).ok());
      EXPECT_TRUE(pair_from_mackey(N) == P);
    }
  }
  CyclicPair bad = pair_from_mackey(burnside_mackey(Group::cyclic(2), Z));
  bad.F(0, 0) += 1;
  EXPECT_THROW(mackey_from_pair(bad), DomainError);
}

// ---- truncated completed Burnside ring --------------------------------------------

TEST(CompletedBurnside, ProductTableMatchesOrbitCount) {
  const int N = 12;
  for (int n = 1; n <= N; ++n)
    for (int m = 1; m <= N; ++m) {
      auto prod = TruncatedCompletedBurnside::basis(n, N) * TruncatedCompletedBurnside::basis(m, N);
      auto [count, size] = diagonal_orbits(n, m);
      for (int k = 1; k <= N; ++k) EXPECT_EQ(prod.coord(k), k == size ? count : 0) << n << "," << m;
    }
}

TEST(CompletedBurnside, RingLaws) {
  const int N = 10;
  std::mt19937 rng(5);
  auto rnd = [&] {
    TruncatedCompletedBurnside a(N, Z);
    for (int n = 1; n <= N; ++n) a.set(n, static_cast<long>(rng() % 7) - 3);
    return a;
  };
  auto one = TruncatedCompletedBurnside::unit(N);
  for (int t = 0; t < 20; ++t) {
    auto a = rnd(), b = rnd(), c = rnd();
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(one * a, a);
    // marks is a ring homomorphism
    auto ga = marks_hom(a), gb = marks_hom(b), gab = marks_hom(a * b);
    for (int m = 0; m < N; ++m) EXPECT_EQ(gab[m], ga[m] * gb[m]);
  }
  EXPECT_THROW(TruncatedCompletedBurnside::unit(4) * TruncatedCompletedBurnside::unit(5), DomainError);
}

TEST(CompletedBurnside, WittVectors) {
  auto rep = witt_compare(12);
  EXPECT_TRUE(rep.ok());
  int pairs = 0;
  for (int n = 1; n <= 12; ++n)
    for (int m = 1; m <= 12; ++m) pairs += std::lcm(n, m) <= 12;
  EXPECT_EQ(rep.pairs_checked, pairs);
  std::mt19937 rng(9);
  for (int t = 0; t < 10; ++t) {
    WittVector w{std::vector<Integer>(8)};
    for (auto& x : w.a) x = static_cast<long>(rng() % 5) - 2;
    auto g = witt_ghost(w);
    for (int m = 1; m <= 8; ++m) {
      Integer s = 0;
      for (int d = 1; d <= m; ++d)
        if (m % d == 0) s += d * ipow(w.a[d - 1], m / d);
      EXPECT_EQ(g[m - 1], s);
    }
    EXPECT_TRUE(witt_from_ghost(g) == w);
  }
}

TEST(CompletedBurnside, TypicalIdempotents) {
  for (auto [p, N] : {std::pair{2, 15}, std::pair{3, 10}, std::pair{5, 12}}) {
    auto es = p_typical_idempotents(p, N);
    EXPECT_TRUE(check_idempotents(es).ok());
    for (auto& e : es) {
      EXPECT_NE(e.n % p, 0);
      auto g = marks_hom(e.value);
      for (int m = 1; m <= N; ++m) EXPECT_EQ(g[m - 1], prime_to_p_part(m, p) == e.n ? 1 : 0) << p << " " << e.n << " " << m;
    }
  }
}

// ---- normal systems --------------------------------------------------------------

TEST(NormalSystems, BurnsideSystemsValidate) {
  for (int n = 1; n <= 12; ++n) {
    auto S = burnside_normal_system(Z, divisors(n));
    EXPECT_TRUE(validate_normal_system(S).ok()) << n;
  }
  EXPECT_TRUE(validate_normal_system(burnside_normal_system(Z, {1, 2, 3, 4, 5, 6})).ok());
  EXPECT_THROW(burnside_normal_system(Z, {1, 4}), DomainError);
}

TEST(NormalSystems, CorruptedIsomorphismIsReported) {
  auto S = burnside_normal_system(Z, divisors(4));
  auto& mats = S.iso.at({4, 2});
  mats.back()(0, 0) += 1;
  auto rep = validate_normal_system(S);
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.witness, std::make_pair(4, 2));
  auto T = burnside_normal_system(Z, divisors(6));
  T.index = {1, 3, 6};
  EXPECT_FALSE(validate_normal_system(T).ok());
}

TEST(NormalSystems, InflationLimitAtTheFreeOrbit) {
  auto S = burnside_normal_system(Z, divisors(12));
  auto lim = inflation_limit(S, 1);
  EXPECT_EQ(lim.module.invariants(), std::vector<Scalar>(6, 0));
  // ε_k is the family of orbits [Z/n : kZ/nZ] for k | n
  std::vector<int> D = divisors(12);
  Matrix fam(lim.product.gens(), D.size());
  for (std::size_t j = 0; j < D.size(); ++j) {
    int k = D[j];
    for (std::size_t c = 0; c < lim.components.size(); ++c) {
      int n = lim.components[c];
      if (n % k) continue;
      const Group& G = S.functor.at(n).group();
      const auto& L = G.lattice();
      auto basis = burnside_basis_at(G, L.whole());
      int cls = L.index_of(cyclic_subgroup(n, k));
      auto pos = std::find(basis.begin(), basis.end(), cls) - basis.begin();
      fam(lim.offset[c] + pos, j) = 1;
    }
  }
  auto coords = lift(lim.inclusion, fam);
  ASSERT_TRUE(coords.has_value());
  EXPECT_TRUE(is_surjective(ModuleMap(FPModule::free(Z, D.size()), lim.module, *coords)));
  EXPECT_THROW(inflation_limit(S, 5), DomainError);
}

TEST(NormalSystems, InflationLimitAtOtherOrbits) {
  auto S = burnside_normal_system(Z, divisors(12));
  for (int m : divisors(12)) {
    auto lim = inflation_limit(S, m);
    // one generator per k in the index set with m | k
    EXPECT_EQ(lim.module.free_rank(), divisors(12 / m).size()) << m;
    EXPECT_EQ(lim.module.invariants().size(), lim.module.free_rank()) << m;
  }
}

TEST(NormalSystems, TypicalDecomposition) {
  for (int p : {2, 3}) {
    auto S = burnside_normal_system(Ring::p_local(p), divisors(12));
    auto dec = p_typical_decompose(S, p, 1);
    EXPECT_TRUE(dec.ok());
    std::size_t total = 0;
    for (auto& s : dec.summands) {
      total += s.image.free_rank();
      EXPECT_TRUE(compose(s.idempotent, s.idempotent).equals(s.idempotent));
    }
    EXPECT_EQ(total, dec.whole.free_rank());
  }
  EXPECT_THROW(p_typical_decompose(burnside_normal_system(Z, divisors(12)), 2, 1), DomainError);
  EXPECT_THROW(p_typical_decompose(burnside_normal_system(Ring::p_local(3), divisors(12)), 2, 1), DomainError);
}
