#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mackey/burnside.hpp"
#include "mackey/gset.hpp"
#include "mackey/module.hpp"

namespace mackey {

/// Values on every subgroup, restriction/transfer for every inclusion K ⊆ H,
/// and conjugation M^H -> M^{gHg^-1} for every group element g.
class MackeyFunctor {
 public:
  MackeyFunctor() = default;
  MackeyFunctor(Group G, Ring R) : G_(std::move(G)), R_(R) {
    ns_ = G_.lattice().size();
    vals_.assign(ns_, FPModule::zero(R_));
    res_.assign(ns_ * ns_, std::nullopt);
    tr_.assign(ns_ * ns_, std::nullopt);
    conj_.assign(static_cast<std::size_t>(G_.order()) * ns_, std::nullopt);
  }

  const Group& group() const { return G_; }
  const Ring& ring() const { return R_; }
  const SubgroupLattice& lattice() const { return G_.lattice(); }
  int subgroup_count() const { return ns_; }

  const FPModule& value(int h) const { return vals_.at(h); }
  const ModuleMap& res(int h, int k) const { return get(res_, h * ns_ + k, "res", h, k); }
  const ModuleMap& tr(int h, int k) const { return get(tr_, h * ns_ + k, "tr", h, k); }
  const ModuleMap& conj(int g, int h) const { return get(conj_, g * ns_ + h, "conj", g, h); }

  bool has_res(int h, int k) const { return res_[h * ns_ + k].has_value(); }
  bool has_tr(int h, int k) const { return tr_[h * ns_ + k].has_value(); }
  bool has_conj(int g, int h) const { return conj_[g * ns_ + h].has_value(); }

  void set_value(int h, FPModule m) {
    if (m.ring() != R_) throw DomainError("mackey: value over the wrong ring");
    vals_.at(h) = std::move(m);
  }
  void set_res(int h, int k, const Matrix& m) { res_.at(h * ns_ + k) = ModuleMap(vals_[h], vals_[k], m); }
  void set_tr(int h, int k, const Matrix& m) { tr_.at(h * ns_ + k) = ModuleMap(vals_[k], vals_[h], m); }
  void set_conj(int g, int h, const Matrix& m) {
    conj_.at(g * ns_ + h) = ModuleMap(vals_[h], vals_[lattice().conj(g, h)], m);
  }

  /// Missing structure maps: identities where forced (res/tr on H ⊆ H, conj by
  /// elements of H) and, when `identity_conj`, conj maps between equal subgroups.
  void fill_defaults(bool identity_conj = false) {
    const auto& L = lattice();
    for (int h = 0; h < ns_; ++h) {
      Matrix I = Matrix::identity(vals_[h].gens());
      if (!has_res(h, h)) set_res(h, h, I);
      if (!has_tr(h, h)) set_tr(h, h, I);
      for (int g = 0; g < G_.order(); ++g) {
        if (has_conj(g, h)) continue;
        if (mackey::contains(L.subgroup(h), g) || (identity_conj && L.conj(g, h) == h)) set_conj(g, h, I);
      }
    }
  }

  bool complete() const {
    const auto& L = lattice();
    for (int h = 0; h < ns_; ++h) {
      for (int k = 0; k < ns_; ++k)
        if (L.contains(h, k) && (!has_res(h, k) || !has_tr(h, k))) return false;
      for (int g = 0; g < G_.order(); ++g)
        if (!has_conj(g, h)) return false;
    }
    return true;
  }

 private:
  const ModuleMap& get(const std::vector<std::optional<ModuleMap>>& v, int i, const char* what, int a, int b) const {
    if (!v.at(i)) throw DomainError(std::string("mackey: missing ") + what + " map (" + std::to_string(a) + "," +
                                    std::to_string(b) + ")");
    return *v[i];
  }

  Group G_;
  Ring R_;
  int ns_ = 0;
  std::vector<FPModule> vals_;
  std::vector<std::optional<ModuleMap>> res_, tr_, conj_;
};

struct AxiomReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Exhaustive check of the Mackey functor identities.
inline AxiomReport check_axioms(const MackeyFunctor& M, std::size_t max_reports = 25) {
  AxiomReport rep;
  const Group& G = M.group();
  const auto& L = M.lattice();
  const int ns = L.size();
  auto name = [&](int h) { return subgroup_name(L.subgroup(h)); };
  auto fail = [&](const std::string& s) {
    if (rep.violations.size() < max_reports) rep.violations.push_back(s);
  };
  if (!M.complete()) {
    fail("structure maps missing");
    return rep;
  }
  for (int h = 0; h < ns; ++h) {
    for (int k = 0; k < ns; ++k) {
      if (!L.contains(h, k)) continue;
      if (!M.res(h, k).well_defined()) fail("res " + name(h) + "->" + name(k) + " is not well defined");
      if (!M.tr(h, k).well_defined()) fail("tr " + name(k) + "->" + name(h) + " is not well defined");
    }
    for (int g = 0; g < G.order(); ++g)
      if (!M.conj(g, h).well_defined()) fail("conj_" + std::to_string(g) + " on " + name(h) + " is not well defined");
  }
  if (!rep.ok()) return rep;
  for (int h = 0; h < ns; ++h) {
    auto I = ModuleMap::identity(M.value(h));
    if (!M.res(h, h).equals(I)) fail("res " + name(h) + "->" + name(h) + " is not the identity");
    if (!M.tr(h, h).equals(I)) fail("tr " + name(h) + "->" + name(h) + " is not the identity");
    for (int x : L.subgroup(h))
      if (!M.conj(x, h).equals(I)) fail("conj_" + std::to_string(x) + " is not the identity on " + name(h));
  }
  // transitivity
  for (int j = 0; j < ns; ++j)
    for (int h = 0; h < ns; ++h) {
      if (!L.contains(j, h)) continue;
      for (int k = 0; k < ns; ++k) {
        if (!L.contains(h, k)) continue;
        if (!compose(M.res(h, k), M.res(j, h)).equals(M.res(j, k)))
          fail("res transitivity fails for " + name(k) + " ⊆ " + name(h) + " ⊆ " + name(j));
        if (!compose(M.tr(j, h), M.tr(h, k)).equals(M.tr(j, k)))
          fail("tr transitivity fails for " + name(k) + " ⊆ " + name(h) + " ⊆ " + name(j));
      }
    }
  // conjugations
  for (int h = 0; h < ns; ++h)
    for (int g = 0; g < G.order(); ++g) {
      int gh = L.conj(g, h);
      for (int x = 0; x < G.order(); ++x)
        if (!compose(M.conj(x, gh), M.conj(g, h)).equals(M.conj(G.mul(x, g), h)))
          fail("conj_" + std::to_string(x) + " ∘ conj_" + std::to_string(g) + " != conj of product on " + name(h));
      for (int k = 0; k < ns; ++k) {
        if (!L.contains(h, k)) continue;
        int gk = L.conj(g, k);
        if (!compose(M.conj(g, k), M.res(h, k)).equals(compose(M.res(gh, gk), M.conj(g, h))))
          fail("conj_" + std::to_string(g) + " does not commute with res " + name(h) + "->" + name(k));
        if (!compose(M.conj(g, h), M.tr(h, k)).equals(compose(M.tr(gh, gk), M.conj(g, k))))
          fail("conj_" + std::to_string(g) + " does not commute with tr " + name(k) + "->" + name(h));
      }
    }
  // double coset formula inside every H
  for (int h = 0; h < ns; ++h) {
    const Subgroup& H = L.subgroup(h);
    for (int a = 0; a < ns; ++a) {
      if (!L.contains(h, a)) continue;
      for (int b = 0; b < ns; ++b) {
        if (!L.contains(h, b)) continue;
        ModuleMap lhs = compose(M.res(h, a), M.tr(h, b));
        ModuleMap rhs = ModuleMap::zero(M.value(b), M.value(a));
        for (auto& dc : double_cosets_in(G, H, L.subgroup(a), L.subgroup(b))) {
          int x = dc.rep;
          int meet = L.index_of(dc.intersection);                              // a ∩ x b x^-1
          int pre = L.conj(G.inv(x), meet);                                    // x^-1 a x ∩ b
          rhs = rhs + compose(M.tr(a, meet), compose(M.conj(x, pre), M.res(b, pre)));
        }
        if (!lhs.equals(rhs))
          fail("double coset formula fails in " + name(h) + " for (H', H'') = (" + name(a) + ", " + name(b) + ")");
      }
    }
  }
  return rep;
}

/// Levelwise maps between Mackey functors over the same group.
struct MackeyMorphism {
  MackeyFunctor source, target;
  std::vector<ModuleMap> level;

  std::vector<std::string> check(std::size_t max_reports = 10) const {
    std::vector<std::string> out;
    const auto& L = source.lattice();
    const Group& G = source.group();
    auto fail = [&](const std::string& s) {
      if (out.size() < max_reports) out.push_back(s);
    };
    for (int h = 0; h < L.size(); ++h) {
      if (!level[h].well_defined()) fail("level " + subgroup_name(L.subgroup(h)) + " is not well defined");
      for (int k = 0; k < L.size(); ++k) {
        if (!L.contains(h, k)) continue;
        if (!compose(level[k], source.res(h, k)).equals(compose(target.res(h, k), level[h])))
          fail("res square fails at " + subgroup_name(L.subgroup(h)) + "->" + subgroup_name(L.subgroup(k)));
        if (!compose(level[h], source.tr(h, k)).equals(compose(target.tr(h, k), level[k])))
          fail("tr square fails at " + subgroup_name(L.subgroup(k)) + "->" + subgroup_name(L.subgroup(h)));
      }
      for (int g = 0; g < G.order(); ++g)
        if (!compose(level[L.conj(g, h)], source.conj(g, h)).equals(compose(target.conj(g, h), level[h])))
          fail("conj square fails for g = " + std::to_string(g) + " at " + subgroup_name(L.subgroup(h)));
    }
    return out;
  }
  bool is_morphism() const { return check(1).empty(); }
  bool is_isomorphism() const {
    if (!is_morphism()) return false;
    for (auto& f : level)
      if (!mackey::is_isomorphism(f)) return false;
    return true;
  }
};

inline MackeyMorphism compose(const MackeyMorphism& g, const MackeyMorphism& f) {
  MackeyMorphism h{f.source, g.target, {}};
  for (std::size_t i = 0; i < f.level.size(); ++i) h.level.push_back(compose(g.level[i], f.level[i]));
  return h;
}

/// Transport a functor along levelwise isomorphisms to[h]: M^h -> N^h with inverses from[h].
inline MackeyFunctor transport(const MackeyFunctor& M, const std::vector<FPModule>& values,
                               const std::vector<ModuleMap>& to, const std::vector<ModuleMap>& from) {
  MackeyFunctor N(M.group(), M.ring());
  const auto& L = M.lattice();
  for (int h = 0; h < L.size(); ++h) N.set_value(h, values[h]);
  for (int h = 0; h < L.size(); ++h) {
    for (int k = 0; k < L.size(); ++k) {
      if (!L.contains(h, k)) continue;
      N.set_res(h, k, (to[k].matrix() * M.res(h, k).matrix() * from[h].matrix()));
      N.set_tr(h, k, (to[h].matrix() * M.tr(h, k).matrix() * from[k].matrix()));
    }
    for (int g = 0; g < M.group().order(); ++g)
      N.set_conj(g, h, to[L.conj(g, h)].matrix() * M.conj(g, h).matrix() * from[h].matrix());
  }
  return N;
}

struct SimplifiedFunctor {
  MackeyFunctor functor;
  MackeyMorphism to, from;
};

/// Same functor with every value in diagonal minimal form.
inline SimplifiedFunctor simplify(const MackeyFunctor& M) {
  const int ns = M.subgroup_count();
  std::vector<FPModule> vals;
  std::vector<ModuleMap> to, from;
  for (int h = 0; h < ns; ++h) {
    Simplified s = simplify(M.value(h));
    vals.push_back(s.module);
    to.push_back(s.to);
    from.push_back(s.from);
  }
  MackeyFunctor N = transport(M, vals, to, from);
  return {N, {M, N, to}, {N, M, from}};
}

// ---------------------------------------------------------------- evaluation

/// Orbit bookkeeping for evaluating a functor on a G-set.
struct Evaluation {
  FPModule module;
  std::vector<OrbitInfo> orbs;
  std::vector<int> orbit_of;          // point -> orbit index
  std::vector<int> transporter;       // point -> least x with x * base = point
  std::vector<std::size_t> offset;    // orbit -> first generator
};

inline Evaluation evaluate_full(const MackeyFunctor& M, const GSet& S) {
  if (!S.group().same_as(M.group())) throw DomainError("evaluate: G-set over a different group");
  Evaluation ev;
  ev.orbs = orbits(S);
  ev.orbit_of.assign(S.size(), -1);
  ev.transporter.assign(S.size(), -1);
  std::vector<FPModule> parts;
  std::size_t off = 0;
  for (std::size_t o = 0; o < ev.orbs.size(); ++o) {
    const auto& ob = ev.orbs[o];
    for (int x = 0; x < M.group().order(); ++x) {
      int p = S.act(x, ob.base);
      if (ev.transporter[p] < 0) ev.transporter[p] = x;
    }
    for (int p : ob.points) ev.orbit_of[p] = static_cast<int>(o);
    ev.offset.push_back(off);
    parts.push_back(M.value(ob.stabilizer));
    off += M.value(ob.stabilizer).gens();
  }
  ev.module = direct_sum(M.ring(), parts);
  return ev;
}

inline FPModule evaluate(const MackeyFunctor& M, const GSet& S) { return evaluate_full(M, S).module; }

/// Map induced by the span S <-l- T -r-> U: the restriction along l followed by the transfer along r.
inline ModuleMap induced_map(const MackeyFunctor& M, const GMap& l, const GMap& r) {
  l.check();
  r.check();
  if (l.source.size() != r.source.size()) throw DomainError("induced_map: span legs have different apex");
  const Group& G = M.group();
  const auto& L = M.lattice();
  Evaluation eS = evaluate_full(M, l.target), eT = evaluate_full(M, l.source), eU = evaluate_full(M, r.target);
  Matrix pull(eT.module.gens(), eS.module.gens());
  Matrix push(eU.module.gens(), eT.module.gens());
  for (std::size_t o = 0; o < eT.orbs.size(); ++o) {
    const auto& ob = eT.orbs[o];
    int K = ob.stabilizer;
    {
      int s = l.map[ob.base];
      int so = eS.orbit_of[s], x = eS.transporter[s];
      int Ls = eS.orbs[so].stabilizer;
      int xL = L.conj(x, Ls);
      Matrix blk = M.res(xL, K).matrix() * M.conj(x, Ls).matrix();
      pull.set_block(eT.offset[o], eS.offset[so], blk);
    }
    {
      int u = r.map[ob.base];
      int uo = eU.orbit_of[u], y = eU.transporter[u];
      int Lu = eU.orbs[uo].stabilizer;
      int yL = L.conj(y, Lu);
      Matrix blk = M.conj(G.inv(y), yL).matrix() * M.tr(yL, K).matrix();
      push.add_block(eU.offset[uo], eT.offset[o], blk);
    }
  }
  return ModuleMap(eS.module, eU.module, push * pull);
}

/// Restriction along f: M(T) -> M(S) for f: S -> T.
inline ModuleMap restriction_along(const MackeyFunctor& M, const GMap& f) {
  return induced_map(M, f, identity_map(f.source));
}
/// Transfer along f: M(S) -> M(T) for f: S -> T.
inline ModuleMap transfer_along(const MackeyFunctor& M, const GMap& f) {
  return induced_map(M, identity_map(f.source), f);
}

// ---------------------------------------------------------------- constructors

namespace detail {
/// Least subgroup index in the H-conjugacy class of k.
inline int h_class_rep(const Group& G, int h, int k) {
  const auto& L = G.lattice();
  int best = k;
  for (int x : L.subgroup(h)) best = std::min(best, L.conj(x, k));
  return best;
}
/// H-conjugacy class representatives of subgroups of H, increasing.
inline std::vector<int> h_class_basis(const Group& G, int h) {
  const auto& L = G.lattice();
  std::vector<int> out;
  for (int k : L.subgroups_of(h))
    if (h_class_rep(G, h, k) == k) out.push_back(k);
  return out;
}
}  // namespace detail

/// Basis of the Burnside module at H: H-classes [H/K], represented by the least K.
inline std::vector<int> burnside_basis_at(const Group& G, int h) { return detail::h_class_basis(G, h); }

inline MackeyFunctor burnside_mackey(const Group& G, const Ring& R) {
  const auto& L = G.lattice();
  const int ns = L.size();
  MackeyFunctor M(G, R);
  std::vector<std::vector<int>> basis(ns);
  std::vector<std::map<int, int>> pos(ns);
  for (int h = 0; h < ns; ++h) {
    basis[h] = detail::h_class_basis(G, h);
    for (std::size_t i = 0; i < basis[h].size(); ++i) pos[h][basis[h][i]] = static_cast<int>(i);
    M.set_value(h, FPModule::free(R, basis[h].size()));
  }
  for (int h = 0; h < ns; ++h)
    for (int k = 0; k < ns; ++k) {
      if (!L.contains(h, k)) continue;
      Matrix res(basis[k].size(), basis[h].size()), tr(basis[h].size(), basis[k].size());
      for (std::size_t j = 0; j < basis[h].size(); ++j) {
        int l = basis[h][j];
        // [H/L] restricted to K: orbits indexed by K\H/L
        for (auto& dc : double_cosets_in(G, L.subgroup(h), L.subgroup(k), L.subgroup(l))) {
          int m = detail::h_class_rep(G, k, L.index_of(dc.intersection));
          res(pos[k].at(m), j) += 1;
        }
      }
      for (std::size_t j = 0; j < basis[k].size(); ++j) {
        int l = basis[k][j];
        tr(pos[h].at(detail::h_class_rep(G, h, l)), j) += 1;
      }
      M.set_res(h, k, res);
      M.set_tr(h, k, tr);
    }
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < ns; ++h) {
      int gh = L.conj(g, h);
      Matrix c(basis[gh].size(), basis[h].size());
      for (std::size_t j = 0; j < basis[h].size(); ++j) {
        int l = basis[h][j];
        c(pos[gh].at(detail::h_class_rep(G, gh, L.conj(g, l))), j) = 1;
      }
      M.set_conj(g, h, c);
    }
  return M;
}

/// Check that rho[g] (d x d over R) is a representation of G.
inline void check_representation(const Group& G, const Ring& R, const std::vector<Matrix>& rho) {
  if (static_cast<int>(rho.size()) != G.order()) throw DomainError("representation: need one matrix per element");
  std::size_t d = rho[0].rows();
  for (auto& m : rho)
    if (m.rows() != d || m.cols() != d) throw DomainError("representation: matrices must be square of equal size");
  if (rho[0].normalized(R) != Matrix::identity(d).normalized(R))
    throw DomainError("representation: identity does not act as the identity");
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      if ((rho[a] * rho[b]).normalized(R) != rho[G.mul(a, b)].normalized(R))
        throw DomainError("representation: rho(" + std::to_string(a) + ") rho(" + std::to_string(b) +
                          ") != rho(product)");
}

/// Fixed-point functor H -> V^H with inclusion restrictions and orbit-sum transfers.
inline MackeyFunctor fixed_point_mackey(const Group& G, const Ring& R, const std::vector<Matrix>& rho) {
  check_representation(G, R, rho);
  const auto& L = G.lattice();
  const int ns = L.size();
  const std::size_t d = rho[0].rows();
  FPModule V = FPModule::free(R, d);
  MackeyFunctor M(G, R);
  std::vector<ModuleMap> incl(ns);
  for (int h = 0; h < ns; ++h) {
    const Subgroup& H = L.subgroup(h);
    Matrix stacked(d * H.size(), d);
    for (std::size_t i = 0; i < H.size(); ++i)
      stacked.set_block(i * d, 0, rho[H[i]] - Matrix::identity(d));
    ModuleMap f(V, FPModule::free(R, d * H.size()), stacked);
    KernelResult k = kernel(f);
    incl[h] = k.inclusion;
    M.set_value(h, k.module);
  }
  auto lift_through = [&](int h, const Matrix& Y) {
    auto x = lift(incl[h], Y);
    if (!x) throw std::logic_error("fixed_point_mackey: vector is not invariant");
    return *x;
  };
  for (int h = 0; h < ns; ++h)
    for (int k = 0; k < ns; ++k) {
      if (!L.contains(h, k)) continue;
      M.set_res(h, k, lift_through(k, incl[h].matrix()));
      Matrix sum(d, d);
      for (int x : coset_reps(G, L.subgroup(k)))
        if (mackey::contains(L.subgroup(h), x)) sum = sum + rho[x];
      M.set_tr(h, k, lift_through(h, sum * incl[k].matrix()));
    }
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < ns; ++h) M.set_conj(g, h, lift_through(L.conj(g, h), rho[g] * incl[h].matrix()));
  return M;
}

/// Permutation representation of a G-set.
inline std::vector<Matrix> permutation_representation(const GSet& S) {
  std::vector<Matrix> rho;
  for (int g = 0; g < S.group().order(); ++g) {
    Matrix m(S.size(), S.size());
    for (int x = 0; x < S.size(); ++x) m(S.act(g, x), x) = 1;
    rho.push_back(m);
  }
  return rho;
}

inline std::vector<Matrix> trivial_representation(const Group& G, std::size_t d = 1) {
  return std::vector<Matrix>(G.order(), Matrix::identity(d));
}

/// Sign-type representation through a homomorphism to {+1, -1} given by `sign`.
inline std::vector<Matrix> sign_representation(const Group& G, const std::function<int(int)>& sign) {
  std::vector<Matrix> rho;
  for (int g = 0; g < G.order(); ++g) {
    Matrix m(1, 1);
    m(0, 0) = sign(g);
    rho.push_back(m);
  }
  return rho;
}

inline MackeyFunctor zero_mackey(const Group& G, const Ring& R) {
  MackeyFunctor M(G, R);
  M.fill_defaults(true);
  const auto& L = G.lattice();
  for (int h = 0; h < L.size(); ++h)
    for (int k = 0; k < L.size(); ++k)
      if (L.contains(h, k)) {
        M.set_res(h, k, Matrix());
        M.set_tr(h, k, Matrix());
      }
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < L.size(); ++h) M.set_conj(g, h, Matrix());
  return M;
}

/// Action of a Burnside element on M(S): [T] acts through the span S <- S x T -> S.
inline ModuleMap burnside_action(const BurnsideElement& a, const MackeyFunctor& M, const GSet& S) {
  const Group& G = M.group();
  if (!a.group.same_as(G)) throw DomainError("burnside_action: element over a different group");
  const auto& L = G.lattice();
  FPModule E = evaluate(M, S);
  ModuleMap out = ModuleMap::zero(E, E);
  for (int c = 0; c < L.class_count(); ++c) {
    if (a.coords[c] == 0) continue;
    GSet T = orbit(G, L.subgroup(L.class_rep(c)));
    GSet P = product(S, T);
    std::vector<int> proj(P.size());
    for (int i = 0; i < P.size(); ++i) proj[i] = i / T.size();
    GMap p{P, S, proj};
    out = out + induced_map(M, p, p).scaled(Scalar(a.coords[c]));
  }
  return out;
}

}  // namespace mackey
