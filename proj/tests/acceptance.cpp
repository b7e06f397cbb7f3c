// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>

#include "mackey/box.hpp"
#include "mackey/cyclic_derived.hpp"
#include "mackey/fixedpoints.hpp"
#include "mackey/profunctor.hpp"
#include "mackey/simplicial.hpp"

using namespace mackey;

namespace {

const Ring Z = Ring::integers();

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::vector<std::pair<std::string, Group>> test_groups() {
  return {{"cyclic(2)", Group::cyclic(2)},   {"cyclic(3)", Group::cyclic(3)},  {"cyclic(4)", Group::cyclic(4)},
          {"cyclic(6)", Group::cyclic(6)},   {"klein four", Group::klein_four()}, {"S3", Group::symmetric3()},
          {"dihedral(8)", Group::dihedral(8)}, {"cyclic(12)", Group::cyclic(12)}};
}

std::vector<Subgroup> normal_subgroups(const Group& G) {
  std::vector<Subgroup> out;
  const auto& L = G.lattice();
  for (int h = 0; h < L.size(); ++h)
    if (G.is_normal(L.subgroup(h))) out.push_back(L.subgroup(h));
  return out;
}

MackeyFunctor regular_fixed_points(const Group& G) {
  return fixed_point_mackey(G, Z, permutation_representation(orbit(G, {0})));
}

MackeyFunctor trivial_fixed_points(const Group& G) { return fixed_point_mackey(G, Z, trivial_representation(G)); }

Subgroup whole(int n) {
  Subgroup s(n);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

std::string describe_subgroup(const Subgroup& H) {
  std::string s = "{";
  for (std::size_t i = 0; i < H.size(); ++i) s += (i ? "," : "") + std::to_string(H[i]);
  return s + "}";
}

// ---- 1: Burnside products -------------------------------------------------------

Outcome burnside_products() {
  Outcome out;
  for (auto& [name, G] : test_groups()) {
    const int nc = G.lattice().class_count();
    for (int a = 0; a < nc; ++a)
      for (int b = 0; b < nc; ++b) {
        auto x = burnside_basis(G, a), y = burnside_basis(G, b);
        auto xy = multiply_geometric(x, y);
        if (xy != multiply_marks(x, y)) out.fail(name + ": products differ on basis pair");
        auto mx = marks_hom(x), my = marks_hom(y), mxy = marks_hom(xy);
        for (std::size_t i = 0; i < mx.size(); ++i)
          if (mxy[i] != mx[i] * my[i]) out.fail(name + ": marks not multiplicative");
      }
  }
  return out;
}

// ---- 2: Mackey axioms -----------------------------------------------------------

Outcome mackey_axioms() {
  Outcome out;
  for (auto& [name, G] : test_groups())
    for (auto& [what, M] : {std::pair{"burnside", burnside_mackey(G, Z)}, std::pair{"trivial fixed points", trivial_fixed_points(G)},
                            std::pair{"regular fixed points", regular_fixed_points(G)}}) {
      auto rep = check_axioms(M);
      if (!rep.ok()) out.fail(name + " " + what + ": " + rep.violations.front());
    }
  return out;
}

// ---- 3: geometric fixed points and inflation ---------------------------------------

Outcome geometric_fixed_points_of_burnside() {
  Outcome out;
  for (auto& [name, G] : test_groups()) {
    MackeyFunctor A = burnside_mackey(G, Z);
    for (const Subgroup& N : normal_subgroups(G)) {
      const std::string at = name + " N=" + describe_subgroup(N);
      if (!burnside_phi_comparison(G, Z, N).is_isomorphism()) out.fail(at + ": comparison is not an isomorphism");
      auto rep = adjunction_checks(A, N);
      if (!rep.unit_is_morphism || !rep.unit_surjective) out.fail(at + ": unit is not a surjective morphism");
      if (!rep.counit_is_morphism || !rep.counit_iso) out.fail(at + ": Φ∘Infl is not the identity");
    }
  }
  return out;
}

// ---- 4: box unit ----------------------------------------------------------------

Outcome box_unit() {
  Outcome out;
  for (auto& [name, G] : {std::pair{"cyclic(2)", Group::cyclic(2)}, std::pair{"cyclic(4)", Group::cyclic(4)}})
    for (auto& [what, M] : {std::pair{"burnside", burnside_mackey(G, Z)}, std::pair{"trivial fixed points", trivial_fixed_points(G)},
                            std::pair{"regular fixed points", regular_fixed_points(G)}}) {
      MackeyMorphism u = box_unit_map(M);
      if (!u.check().empty() || !u.is_isomorphism()) out.fail(std::string(name) + " " + what + ": unit map is not an isomorphism");
    }
  return out;
}

// ---- 5: degree-zero derived Burnside ---------------------------------------------

Outcome derived_burnside() {
  Outcome out;
  for (auto& [name, G] : test_groups()) {
    auto d = derived_burnside_ranks(G, 0);
    std::size_t total = 0;
    for (auto& per : d) {
      if (per[0].invariants() != std::vector<Scalar>{0}) out.fail(name + ": H_0 of a Weyl group is not Z");
      total += per[0].free_rank();
    }
    const auto& L = G.lattice();
    if (total != burnside_mackey(G, Z).value(L.whole()).free_rank()) out.fail(name + ": ranks do not sum to the Burnside rank");
  }
  for (int p : {2, 3, 5, 7}) {
    FPModule bar = group_homology_bar(Group::cyclic(p), 1)[1];
    FPModule per = group_homology_complex(sigma_trivial(p, Z), periodic_resolution(p, 4)).homology(1);
    if (bar.invariants() != std::vector<Scalar>{p} || !modules_isomorphic(bar, per))
      out.fail("H_1(Z/" + std::to_string(p) + ") disagrees");
  }
  return out;
}

// ---- 6: simplicial model versus geometric fixed points ---------------------------

Outcome simplicial_agreement() {
  Outcome out;
  Group S3 = Group::symmetric3();
  Subgroup C3;
  for (const Subgroup& N : normal_subgroups(S3))
    if (N.size() == 3) C3 = N;
  std::vector<std::tuple<std::string, Group, Subgroup>> cases = {
      {"(cyclic(2), cyclic(2))", Group::cyclic(2), {0, 1}},
      {"(cyclic(4), {0,2})", Group::cyclic(4), {0, 2}},
      {"(S3, order 3)", S3, C3}};
  for (auto& [name, G, N] : cases) {
    auto X = build_adapted_candidate(G, N, 6);
    auto rep = is_adapted(X, N, 6);
    if (!rep.ok() || rep.verified_through < 4) out.fail(name + ": model is not adapted through degree 4");
    // degree 0 only needs the bottom levels
    auto low = build_adapted_candidate(G, N, 2);
    MackeyFunctor A = burnside_mackey(G, Z);
    auto gf = geometric_fixed_points_full(A, N);
    const auto& L = G.lattice();
    for (int c = 0; c < L.class_count(); ++c) {
      int h = L.class_rep(c);
      GSet S = orbit(G, L.subgroup(h));
      FPModule h0 = mackey_homology(smash(low, S), A, 0)[0];
      FPModule expect = is_subset(N, L.subgroup(h)) ? gf.functor.value(gf.ql.down[h]) : FPModule::zero(Z);
      if (!modules_isomorphic(h0, expect)) out.fail(name + ": H_0 differs at orbit " + describe_subgroup(L.subgroup(h)));
    }
  }
  return out;
}

// ---- 7: Tate homology ------------------------------------------------------------

Outcome tate() {
  Outcome out;
  for (int p : {2, 3}) {
    const std::string at = "p=" + std::to_string(p);
    auto T = tate_homology(sigma_trivial(p, Z), -4, 4);
    auto U = tate_homology(sigma_trivial(p, Z), -4, 4, padded_resolution(p, 12));
    for (int n = -4; n <= 4; ++n) {
      auto expect = n % 2 == 0 ? std::vector<Scalar>{p} : std::vector<Scalar>{};
      if (T.homology.at(n).invariants() != expect) out.fail(at + ": trivial module wrong in degree " + std::to_string(n));
      if (!modules_isomorphic(T.homology.at(n), U.homology.at(n))) out.fail(at + ": resolutions disagree in degree " + std::to_string(n));
    }
    for (auto& [n, h] : tate_homology(sigma_regular(p, Z), -4, 4).homology)
      if (!h.is_zero()) out.fail(at + ": free module has nonzero Tate homology");
    for (auto& [n, h] : tate_homology(sigma_regular(p, Z), -4, 4, padded_resolution(p, 12)).homology)
      if (!h.is_zero()) out.fail(at + ": free module has nonzero Tate homology (second resolution)");
  }
  return out;
}

// ---- 8: Z/p round trips ----------------------------------------------------------

Outcome cyclic_round_trips() {
  Outcome out;
  for (int p : {2, 3, 5}) {
    Group C = Group::cyclic(p);
    for (auto& [what, M] : {std::pair{"burnside", burnside_mackey(C, Z)}, std::pair{"trivial fixed points", trivial_fixed_points(C)},
                            std::pair{"regular fixed points", regular_fixed_points(C)}}) {
      const std::string at = "p=" + std::to_string(p) + " " + what;
      CyclicPair P = pair_from_mackey(M);
      if (!(pair_from_mackey(mackey_from_pair(P)) == P)) out.fail(at + ": pair round trip changed the data");
      auto X = heart_embedding(M, 8);
      FPModule phi = geometric_fixed_points(M, whole(p)).value(0);
      if (!modules_isomorphic(geometric_fixed_points_derived(X).homology(0), phi)) out.fail(at + ": H_0(cone V) differs from Φ");
      auto Y = from_tate(to_tate(X));
      for (int n = -3; n <= 3; ++n)
        if (!modules_isomorphic(X.E1.homology(n), Y.E1.homology(n))) out.fail(at + ": H(E^1) changed in degree " + std::to_string(n));
    }
  }
  return out;
}

// ---- 9: truncated completed Burnside ring ------------------------------------------

Outcome completed_burnside() {
  Outcome out;
  const int N = 12;
  for (int n = 1; n <= N; ++n)
    for (int m = 1; m <= N; ++m) {
      // orbits of Z on Z/n x Z/m, counted directly
      std::vector<char> seen(n * m, 0);
      int count = 0, size = 0;
      for (int s = 0; s < n * m; ++s) {
        if (seen[s]) continue;
        ++count;
        size = 0;
        for (int a = s / m, b = s % m; !seen[a * m + b]; a = (a + 1) % n, b = (b + 1) % m, ++size) seen[a * m + b] = 1;
      }
      auto prod = TruncatedCompletedBurnside::basis(n, N) * TruncatedCompletedBurnside::basis(m, N);
      for (int k = 1; k <= N; ++k)
        if (prod.coord(k) != (k == size ? count : 0)) out.fail("product table wrong at (" + std::to_string(n) + ", " + std::to_string(m) + ")");
    }
  auto w = witt_compare(N);
  if (!w.ok()) out.fail(w.failures.front());
  for (auto [p, nmax] : {std::pair{2, 15}, std::pair{3, 10}}) {
    auto rep = check_idempotents(p_typical_idempotents(p, nmax));
    if (!rep.ok()) out.fail("p=" + std::to_string(p) + ": " + rep.failures.front());
  }
  return out;
}

// ---- 10: normal systems ----------------------------------------------------------

Outcome normal_systems() {
  Outcome out;
  const std::vector<int> D = divisors(12);
  auto S = burnside_normal_system(Z, D);
  auto rep = validate_normal_system(S);
  if (!rep.ok()) out.fail(rep.failures.front());
  // the family of orbits [Z/n : kZ/nZ], k | n, must give a basis of the limit
  auto lim = inflation_limit(S, 1);
  Matrix fam(lim.product.gens(), D.size());
  for (std::size_t j = 0; j < D.size(); ++j)
    for (std::size_t c = 0; c < lim.components.size(); ++c) {
      int n = lim.components[c], k = D[j];
      if (n % k) continue;
      const Group& G = S.functor.at(n).group();
      auto basis = burnside_basis_at(G, G.lattice().whole());
      auto pos = std::find(basis.begin(), basis.end(), G.lattice().index_of(cyclic_subgroup(n, k))) - basis.begin();
      fam(lim.offset[c] + pos, j) = 1;
    }
  auto coords = lift(lim.inclusion, fam);
  if (lim.module.invariants() != std::vector<Scalar>(D.size(), 0) || !coords ||
      !is_surjective(ModuleMap(FPModule::free(Z, D.size()), lim.module, *coords)))
    out.fail("inflation limit at the free orbit is not spanned by the completed Burnside basis");
  for (int p : {2, 3}) {
    auto dec = p_typical_decompose(burnside_normal_system(Ring::p_local(p), D), p, 1);
    std::size_t total = 0;
    for (auto& s : dec.summands) total += s.image.free_rank();
    if (!dec.ok()) out.fail("p=" + std::to_string(p) + ": " + dec.failures.front());
    if (total != dec.whole.free_rank()) out.fail("p=" + std::to_string(p) + ": summand ranks do not add up");
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Burnside ring: geometric and marks products agree, marks multiplicative", burnside_products},
      {"Mackey axioms for Burnside and fixed-point functors", mackey_axioms},
      {"geometric fixed points of Burnside, inflation adjunction", geometric_fixed_points_of_burnside},
      {"Burnside functor is a unit for the box product", box_unit},
      {"degree-zero derived Burnside ranks, H_1 of cyclic groups", derived_burnside},
      {"simplicial model agrees with geometric fixed points", simplicial_agreement},
      {"Tate homology over cyclic groups", tate},
      {"round trips over cyclic groups of prime order", cyclic_round_trips},
      {"truncated completed Burnside ring", completed_burnside},
      {"normal systems, inflation limit, p-typical splitting", normal_systems}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.ok;
    std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first;
    if (!o.ok) std::cout << "  [" << o.detail << "]";
    std::cout << "  (" << std::fixed << std::setprecision(2) << secs << " s)\n";
  }
  return failures == 0 ? 0 : 1;
}
