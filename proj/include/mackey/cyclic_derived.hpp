#pragma once

#include <map>
#include <string>
#include <vector>

#include "mackey/fixedpoints.hpp"
#include "mackey/module.hpp"

namespace mackey {

// Models for G = Z/p with generator σ (element 1 of Group::cyclic(p)).

/// Element of R[Z/p]: coefficient of σ^i at position i.
using GroupRingElement = std::vector<Scalar>;
/// Matrix over R[Z/p], indexed [row][col].
using GroupRingMatrix = std::vector<std::vector<GroupRingElement>>;

namespace detail {

inline Matrix matrix_power(const Matrix& a, int k) {
  Matrix r = Matrix::identity(a.rows());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

/// Σ c_i σ^i for a given action matrix σ.
inline Matrix evaluate_at(const GroupRingElement& c, const Matrix& sigma) {
  Matrix r(sigma.rows(), sigma.cols());
  Matrix pw = Matrix::identity(sigma.rows());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) != 0) r = r + c[i] * pw;
    pw = pw * sigma;
  }
  return r;
}

inline GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b) {
  const std::size_t p = a.size();
  GroupRingElement r(p, 0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) r[(i + j) % p] += a[i] * b[j];
  return r;
}

inline GroupRingMatrix gr_matmul(const GroupRingMatrix& a, const GroupRingMatrix& b, int p) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  GroupRingMatrix r(n, std::vector<GroupRingElement>(m, GroupRingElement(p, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t t = 0; t < k; ++t) {
        auto prod = gr_mul(a[i][t], b[t][j]);
        for (int s = 0; s < p; ++s) r[i][j][s] += prod[s];
      }
  return r;
}

inline GroupRingElement gr_monomial(int p, int power, const Scalar& c = 1) {
  GroupRingElement e(p, 0);
  e[((power % p) + p) % p] = c;
  return e;
}

inline Scalar augment(const GroupRingElement& e) {
  Scalar s = 0;
  for (auto& x : e) s += x;
  return s;
}

inline Matrix cyclic_shift(int p) {
  Matrix s(p, p);
  for (int i = 0; i < p; ++i) s((i + 1) % p, i) = 1;
  return s;
}

inline void check_prime(int p) {
  if (p < 2) throw DomainError("cyclic model: p must be prime");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw DomainError("cyclic model: p must be prime");
}

}  // namespace detail

// ---------------------------------------------------------------- complexes with σ

/// Chain complex with an automorphism σ of order dividing p in each degree.
struct SigmaComplex {
  int p = 2;
  ChainComplex complex;
  std::map<int, Matrix> sigma;  // degree -> matrix on complex.module(n)

  Matrix sigma_at(int n) const {
    auto it = sigma.find(n);
    if (it != sigma.end()) return it->second;
    return Matrix::identity(complex.module(n).gens());
  }

  std::vector<std::string> check() const {
    std::vector<std::string> out;
    if (!complex.is_complex()) out.push_back("differential does not square to zero");
    for (int n = complex.lo(); n <= complex.hi(); ++n) {
      const FPModule& M = complex.module(n);
      ModuleMap s(M, M, sigma_at(n));
      if (!s.well_defined()) out.push_back("σ not well defined in degree " + std::to_string(n));
      if (!ModuleMap(M, M, detail::matrix_power(sigma_at(n), p)).equals(ModuleMap::identity(M)))
        out.push_back("σ^p is not the identity in degree " + std::to_string(n));
      if (n > complex.lo()) {
        ModuleMap d = complex.d(n);
        if (!ModuleMap(M, d.target(), d.matrix() * sigma_at(n))
                 .equals(ModuleMap(M, d.target(), sigma_at(n - 1) * d.matrix())))
          out.push_back("σ does not commute with d in degree " + std::to_string(n));
      }
    }
    return out;
  }
};

/// A single module with σ, placed in degree `degree`.
inline SigmaComplex sigma_module(int p, const FPModule& M, const Matrix& sigma, int degree = 0) {
  detail::check_prime(p);
  SigmaComplex E{p, ChainComplex(degree, degree, {M}, {}, M.ring()), {{degree, sigma}}};
  auto bad = E.check();
  if (!bad.empty()) throw DomainError("sigma_module: " + bad.front());
  return E;
}

inline SigmaComplex sigma_trivial(int p, const Ring& R, std::size_t rank = 1) {
  return sigma_module(p, FPModule::free(R, rank), Matrix::identity(rank));
}

/// The free module R[Z/p] with σ acting by multiplication.
inline SigmaComplex sigma_regular(int p, const Ring& R) {
  return sigma_module(p, FPModule::free(R, p), detail::cyclic_shift(p));
}

// ---------------------------------------------------------------- resolutions

/// Free resolution of the trivial module truncated at `length`: P_k = R[G]^rank[k],
/// d[k]: P_k -> P_{k-1} as a matrix over R[G], augmentation P_0 -> R.
struct Resolution {
  int p = 2;
  Ring ring;
  std::vector<std::size_t> rank;
  std::map<int, GroupRingMatrix> d;
  std::vector<GroupRingElement> augmentation;  // one entry per generator of P_0

  int length() const { return static_cast<int>(rank.size()) - 1; }

  /// Underlying complex of R-modules (R[G] as R^p), degrees 0..length.
  ChainComplex underlying() const {
    std::vector<FPModule> mods;
    for (auto r : rank) mods.push_back(FPModule::free(ring, r * p));
    std::map<int, ModuleMap> dm;
    Matrix S = detail::cyclic_shift(p);
    for (int k = 1; k <= length(); ++k) {
      Matrix m(rank[k - 1] * p, rank[k] * p);
      const auto& a = d.at(k);
      for (std::size_t i = 0; i < rank[k - 1]; ++i)
        for (std::size_t j = 0; j < rank[k]; ++j) m.set_block(i * p, j * p, detail::evaluate_at(a[i][j], S));
      dm[k] = ModuleMap(mods[k], mods[k - 1], m);
    }
    return ChainComplex(0, length(), mods, dm, ring);
  }

  /// The same resolution cut at a smaller length.
  Resolution truncated(int len) const {
    if (len > length() || len < 0) throw DomainError("resolution: bad truncation length");
    Resolution r = *this;
    r.rank.resize(len + 1);
    for (auto it = r.d.begin(); it != r.d.end();) it = it->first > len ? r.d.erase(it) : std::next(it);
    return r;
  }

  /// Shape, d∘d = 0, ε∘d_1 = 0 and exactness of the augmented complex below the top degree.
  std::vector<std::string> check() const {
    std::vector<std::string> out;
    if (rank.empty()) return {"empty resolution"};
    if (augmentation.size() != rank[0]) out.push_back("augmentation has wrong length");
    for (int k = 1; k <= length(); ++k) {
      auto it = d.find(k);
      if (it == d.end() || it->second.size() != rank[k - 1]) {
        out.push_back("differential " + std::to_string(k) + " has wrong shape");
        continue;
      }
      for (auto& row : it->second)
        if (row.size() != rank[k]) out.push_back("differential " + std::to_string(k) + " has wrong shape");
    }
    if (!out.empty()) return out;
    ChainComplex P = underlying();
    // augmented complex: degree -1 holds R
    std::vector<FPModule> mods{FPModule::free(ring, 1)};
    std::map<int, ModuleMap> dm;
    for (int k = 0; k <= length(); ++k) mods.push_back(P.module(k));
    Matrix e(1, rank[0] * p);
    for (std::size_t j = 0; j < rank[0]; ++j)
      for (int s = 0; s < p; ++s) e(0, j * p + s) = detail::augment(augmentation[j]);
    dm[0] = ModuleMap(mods[1], mods[0], e);
    for (int k = 1; k <= length(); ++k) dm[k] = P.d(k);
    ChainComplex A(-1, length(), mods, dm, ring);
    if (!A.is_complex()) {
      out.push_back("d∘d != 0");
      return out;
    }
    for (int k = -1; k < length(); ++k)
      if (!A.homology(k).is_zero()) out.push_back("not exact in degree " + std::to_string(k));
    return out;
  }
};

/// Standard periodic resolution: d_k = σ - 1 for odd k, 1 + σ + ... + σ^{p-1} for even k.
inline Resolution periodic_resolution(int p, int length, const Ring& R = Ring::integers()) {
  detail::check_prime(p);
  if (length < 0) throw DomainError("periodic_resolution: negative length");
  Resolution P{p, R, std::vector<std::size_t>(length + 1, 1), {}, {detail::gr_monomial(p, 0)}};
  GroupRingElement minus = detail::gr_monomial(p, 1), norm(p, 1);
  minus[0] -= 1;
  for (int k = 1; k <= length; ++k) P.d[k] = {{k % 2 ? minus : norm}};
  return P;
}

/// A second resolution: the periodic one plus contractible pieces R[G] -id-> R[G]
/// in degrees (2m, 2m-1), with bases twisted by [[1, σ], [0, 1]] in positive degrees.
inline Resolution padded_resolution(int p, int length, const Ring& R = Ring::integers()) {
  Resolution P = periodic_resolution(p, length, R);
  Resolution Q{p, R, {}, {}, P.augmentation};
  const GroupRingElement zero(p, 0), one = detail::gr_monomial(p, 0), s = detail::gr_monomial(p, 1),
                         ms = detail::gr_monomial(p, 1, -1);
  for (int k = 0; k <= length; ++k) Q.rank.push_back(k == 0 ? 1 : 2);
  auto twist = [&](int k) -> GroupRingMatrix {
    if (k == 0) return {{one}};
    return {{one, s}, {zero, one}};
  };
  auto untwist = [&](int k) -> GroupRingMatrix {
    if (k == 0) return {{one}};
    return {{one, ms}, {zero, one}};
  };
  for (int k = 1; k <= length; ++k) {
    const GroupRingElement& a = P.d[k][0][0];
    GroupRingMatrix m;
    if (k == 1)
      m = {{a, zero}};
    else
      m = {{a, zero}, {zero, k % 2 == 0 ? one : zero}};
    Q.d[k] = detail::gr_matmul(detail::gr_matmul(twist(k - 1), m, p), untwist(k), p);
  }
  return Q;
}

// ---------------------------------------------------------------- homology and cohomology complexes

namespace detail {

/// Block layout of a total complex: per degree, the (k, j) pieces in increasing k.
struct TotalLayout {
  struct Piece {
    int k, j;
    std::size_t offset;
  };
  std::map<int, std::vector<Piece>> pieces;
  std::map<int, FPModule> modules;

  std::size_t offset_of(int n, int k) const {
    auto it = pieces.find(n);
    if (it == pieces.end()) return static_cast<std::size_t>(-1);
    for (auto& pc : it->second)
      if (pc.k == k) return pc.offset;
    return static_cast<std::size_t>(-1);
  }
};

inline void check_compatible(const Resolution& P, const SigmaComplex& E) {
  if (P.p != E.p) throw DomainError("cyclic model: resolution and coefficients use different p");
  if (P.ring != E.complex.ring()) throw DomainError("cyclic model: resolution and coefficients over different rings");
}

}  // namespace detail

/// P ⊗_{R[G]} E, total degree k + j, with d(x ⊗ e) = dx ⊗ e + (-1)^k x ⊗ de.
inline ChainComplex group_homology_complex(const SigmaComplex& E, const Resolution& P,
                                           detail::TotalLayout* layout_out = nullptr) {
  detail::check_compatible(P, E);
  const ChainComplex& C = E.complex;
  const Ring& R = C.ring();
  const int lo = C.lo(), hi = C.hi() + P.length();
  detail::TotalLayout lay;
  std::vector<FPModule> mods;
  for (int n = lo; n <= hi; ++n) {
    std::vector<FPModule> parts;
    std::size_t off = 0;
    for (int k = 0; k <= P.length(); ++k) {
      int j = n - k;
      if (j < C.lo() || j > C.hi()) continue;
      lay.pieces[n].push_back({k, j, off});
      for (std::size_t r = 0; r < P.rank[k]; ++r) parts.push_back(C.module(j));
      off += P.rank[k] * C.module(j).gens();
    }
    mods.push_back(direct_sum(R, parts));
    lay.modules[n] = mods.back();
  }
  std::map<int, ModuleMap> d;
  for (int n = lo + 1; n <= hi; ++n) {
    Matrix m(mods[n - 1 - lo].gens(), mods[n - lo].gens());
    for (auto& pc : lay.pieces[n]) {
      const std::size_t g = C.module(pc.j).gens();
      if (pc.k > 0) {
        std::size_t to = lay.offset_of(n - 1, pc.k - 1);
        const auto& a = P.d.at(pc.k);
        Matrix sj = E.sigma_at(pc.j);
        for (std::size_t r = 0; r < P.rank[pc.k - 1]; ++r)
          for (std::size_t c = 0; c < P.rank[pc.k]; ++c)
            m.add_block(to + r * g, pc.offset + c * g, detail::evaluate_at(a[r][c], sj));
      }
      if (pc.j > C.lo()) {
        std::size_t to = lay.offset_of(n - 1, pc.k);
        const std::size_t g1 = C.module(pc.j - 1).gens();
        Matrix dj = C.d(pc.j).matrix();
        if (pc.k % 2) dj = -dj;
        for (std::size_t r = 0; r < P.rank[pc.k]; ++r) m.add_block(to + r * g1, pc.offset + r * g, dj);
      }
    }
    d[n] = ModuleMap(mods[n - lo], mods[n - 1 - lo], m);
  }
  if (layout_out) *layout_out = lay;
  return ChainComplex(lo, hi, mods, d, R);
}

/// Hom_{R[G]}(P, E) in homological degree j - k, with D f = d∘f - (-1)^n f∘d.
inline ChainComplex group_cohomology_complex(const SigmaComplex& E, const Resolution& P,
                                             detail::TotalLayout* layout_out = nullptr) {
  detail::check_compatible(P, E);
  const ChainComplex& C = E.complex;
  const Ring& R = C.ring();
  const int lo = C.lo() - P.length(), hi = C.hi();
  detail::TotalLayout lay;
  std::vector<FPModule> mods;
  for (int n = lo; n <= hi; ++n) {
    std::vector<FPModule> parts;
    std::size_t off = 0;
    for (int k = 0; k <= P.length(); ++k) {
      int j = n + k;
      if (j < C.lo() || j > C.hi()) continue;
      lay.pieces[n].push_back({k, j, off});
      for (std::size_t r = 0; r < P.rank[k]; ++r) parts.push_back(C.module(j));
      off += P.rank[k] * C.module(j).gens();
    }
    mods.push_back(direct_sum(R, parts));
    lay.modules[n] = mods.back();
  }
  std::map<int, ModuleMap> d;
  for (int n = lo + 1; n <= hi; ++n) {
    Matrix m(mods[n - 1 - lo].gens(), mods[n - lo].gens());
    for (auto& pc : lay.pieces[n]) {
      const std::size_t g = C.module(pc.j).gens();
      if (pc.j > C.lo()) {
        std::size_t to = lay.offset_of(n - 1, pc.k);
        const std::size_t g1 = C.module(pc.j - 1).gens();
        for (std::size_t r = 0; r < P.rank[pc.k]; ++r)
          m.add_block(to + r * g1, pc.offset + r * g, C.d(pc.j).matrix());
      }
      if (pc.k < P.length()) {
        std::size_t to = lay.offset_of(n - 1, pc.k + 1);
        const auto& a = P.d.at(pc.k + 1);
        Matrix sj = E.sigma_at(pc.j);
        Scalar sign = (n % 2 == 0) ? -1 : 1;
        for (std::size_t r = 0; r < P.rank[pc.k]; ++r)
          for (std::size_t c = 0; c < P.rank[pc.k + 1]; ++c)
            m.add_block(to + c * g, pc.offset + r * g, sign * detail::evaluate_at(a[r][c], sj));
      }
    }
    d[n] = ModuleMap(mods[n - lo], mods[n - 1 - lo], m);
  }
  if (layout_out) *layout_out = lay;
  return ChainComplex(lo, hi, mods, d, R);
}

/// Trace C_•(G, E) -> C^•(G, E): augment, apply 1 + σ + ... + σ^{p-1}, coaugment.
/// Only the k = 0 pieces contribute.
inline ChainMap trace_map(const SigmaComplex& E, const Resolution& P) {
  detail::TotalLayout lh, lc;
  ChainMap t{group_homology_complex(E, P, &lh), group_cohomology_complex(E, P, &lc), {}};
  const ChainComplex& C = E.complex;
  for (int n = C.lo(); n <= C.hi(); ++n) {
    const std::size_t g = C.module(n).gens();
    Matrix norm(g, g);
    Matrix s = E.sigma_at(n), pw = Matrix::identity(g);
    for (int i = 0; i < E.p; ++i) {
      norm = norm + pw;
      pw = pw * s;
    }
    Matrix m(t.target.module(n).gens(), t.source.module(n).gens());
    std::size_t src = lh.offset_of(n, 0), dst = lc.offset_of(n, 0);
    for (std::size_t c = 0; c < P.rank[0]; ++c)
      for (std::size_t r = 0; r < P.rank[0]; ++r)
        m.add_block(dst + c * g, src + r * g,
                    detail::augment(P.augmentation[c]) * detail::augment(P.augmentation[r]) * norm);
    t.maps[n] = ModuleMap(t.source.module(n), t.target.module(n), m);
  }
  return t;
}

inline ChainComplex tate_complex(const SigmaComplex& E, const Resolution& P) { return mapping_cone(trace_map(E, P)); }

struct TateResult {
  std::map<int, FPModule> homology;
  int resolution_length = 0;
};

/// Tate homology in degrees lo..hi, certified by agreement with the same
/// computation on the resolution cut two degrees shorter.
inline TateResult tate_homology(const SigmaComplex& E, int lo, int hi, const Resolution& P) {
  if (P.length() < 2) throw DomainError("tate: resolution too short");
  ChainComplex big = tate_complex(E, P), small = tate_complex(E, P.truncated(P.length() - 2));
  TateResult out;
  out.resolution_length = P.length();
  for (int n = lo; n <= hi; ++n) {
    FPModule a = big.homology(n), b = small.homology(n);
    if (!modules_isomorphic(a, b))
      throw DomainError("tate: window too small, degree " + std::to_string(n) + " is not stable");
    out.homology[n] = a;
  }
  return out;
}

/// Tate homology with the periodic resolution, long enough for lo..hi.
inline TateResult tate_homology(const SigmaComplex& E, int lo, int hi) {
  const int len = std::max(hi - E.complex.lo(), E.complex.hi() - lo) + 4;
  return tate_homology(E, lo, hi, periodic_resolution(E.p, len, E.complex.ring()));
}

// ---------------------------------------------------------------- derived Mackey functors over Z/p

/// Pair (E^0, E^1) with V: C_•(G, E^0) -> E^1 and F: E^1 -> C^•(G, E^0).
struct DerivedMackeyCyclic {
  SigmaComplex E0;
  Resolution P;
  ChainComplex E1;
  ChainMap V, F;

  std::vector<std::string> check() const {
    std::vector<std::string> out = E0.check();
    if (!E1.is_complex()) out.push_back("E1 is not a complex");
    if (!V.is_chain_map()) out.push_back("V is not a chain map");
    if (!F.is_chain_map()) out.push_back("F is not a chain map");
    ChainMap t = trace_map(E0, P);
    ChainMap fv = compose(F, V);
    for (int n = t.source.lo(); n <= t.source.hi(); ++n)
      if (!fv.at(n).equals(t.at(n))) out.push_back("F∘V differs from the trace in degree " + std::to_string(n));
    return out;
  }
};

/// A Mackey functor over Z/p in degree zero: E^0 = M^e, E^1 = M^G, V = transfer, F = restriction.
inline DerivedMackeyCyclic heart_embedding(const MackeyFunctor& M, int length = 6) {
  const Group& G = M.group();
  detail::check_prime(G.order());
  const int p = G.order();
  const auto& L = M.lattice();
  const int e = L.trivial(), top = L.whole();
  DerivedMackeyCyclic X;
  X.E0 = sigma_module(p, M.value(e), M.conj(1, e).matrix());
  X.P = periodic_resolution(p, length, M.ring());
  X.E1 = ChainComplex(0, 0, {M.value(top)}, {}, M.ring());
  X.V = ChainMap{group_homology_complex(X.E0, X.P), X.E1, {}};
  X.V.maps[0] = ModuleMap(X.V.source.module(0), X.E1.module(0), M.tr(top, e).matrix());
  X.F = ChainMap{X.E1, group_cohomology_complex(X.E0, X.P), {}};
  X.F.maps[0] = ModuleMap(X.E1.module(0), X.F.target.module(0), M.res(top, e).matrix());
  return X;
}

/// cone(V); its homology in degree 0 is the geometric fixed points at the point.
inline ChainComplex geometric_fixed_points_derived(const DerivedMackeyCyclic& X) {
  auto bad = X.check();
  if (!bad.empty()) throw DomainError("geometric_fixed_points_derived: " + bad.front());
  return mapping_cone(X.V);
}

/// Ē^1 = cone(V) with φ: Ē^1 -> Tate = cone(trace), φ(e, c) = (F e, c).
struct TatePresentation {
  SigmaComplex E0;
  Resolution P;
  ChainComplex Ebar;
  ChainMap phi;
};

inline TatePresentation to_tate(const DerivedMackeyCyclic& X) {
  auto bad = X.check();
  if (!bad.empty()) throw DomainError("to_tate: " + bad.front());
  TatePresentation T{X.E0, X.P, mapping_cone(X.V), {}};
  ChainComplex tate = tate_complex(X.E0, X.P);
  T.phi = ChainMap{T.Ebar, tate, {}};
  for (int n = T.Ebar.lo(); n <= T.Ebar.hi(); ++n) {
    const std::size_t e1 = X.E1.module(n).gens(), c = X.V.source.module(n - 1).gens();
    const std::size_t ch = X.F.target.module(n).gens();
    Matrix m(tate.module(n).gens(), T.Ebar.module(n).gens());
    if (e1) m.set_block(0, 0, X.F.at(n).matrix());
    if (c) m.set_block(ch, e1, Matrix::identity(c));
    T.phi.maps[n] = ModuleMap(T.Ebar.module(n), tate.module(n), m);
  }
  return T;
}

/// E^1 rebuilt as the fiber of Ē^1 -> Tate -> C_•[1]: degree n holds C_n ⊕ Ē^1_n with
/// d(c, x) = (dc - ψx, dx); V(c) = (c, 0) and F(c, x) = trace(c) + (Tate-to-C^• part of φ)(x).
inline DerivedMackeyCyclic from_tate(const TatePresentation& T) {
  if (!T.phi.is_chain_map()) throw DomainError("from_tate: φ is not a chain map");
  DerivedMackeyCyclic X;
  X.E0 = T.E0;
  X.P = T.P;
  ChainMap tr = trace_map(T.E0, T.P);
  const ChainComplex &C = tr.source, &Ch = tr.target, &Eb = T.Ebar;
  const int lo = std::min(C.lo(), Eb.lo()), hi = std::max(C.hi(), Eb.hi());
  std::vector<FPModule> mods;
  for (int n = lo; n <= hi; ++n) mods.push_back(direct_sum(C.module(n), Eb.module(n)));
  auto psi = [&](int n) {  // C_{n-1} part of φ on Ē_n
    Matrix full = T.phi.at(n).matrix();
    std::size_t ch = Ch.module(n).gens();
    return full.block(ch, full.rows(), 0, full.cols());
  };
  auto phi1 = [&](int n) {
    Matrix full = T.phi.at(n).matrix();
    return full.block(0, Ch.module(n).gens(), 0, full.cols());
  };
  std::map<int, ModuleMap> d;
  for (int n = lo + 1; n <= hi; ++n) {
    const FPModule &src = mods[n - lo], &tgt = mods[n - 1 - lo];
    Matrix m(tgt.gens(), src.gens());
    const std::size_t cn = C.module(n).gens(), cn1 = C.module(n - 1).gens();
    m.set_block(0, 0, C.d(n).matrix());
    m.set_block(0, cn, -psi(n));
    m.set_block(cn1, cn, Eb.d(n).matrix());
    d[n] = ModuleMap(src, tgt, m);
  }
  X.E1 = ChainComplex(lo, hi, mods, d, C.ring());
  X.V = ChainMap{C, X.E1, {}};
  X.F = ChainMap{X.E1, Ch, {}};
  for (int n = lo; n <= hi; ++n) {
    const std::size_t cn = C.module(n).gens();
    Matrix v(mods[n - lo].gens(), cn);
    if (cn) v.set_block(0, 0, Matrix::identity(cn));
    X.V.maps[n] = ModuleMap(C.module(n), mods[n - lo], v);
    Matrix f(Ch.module(n).gens(), mods[n - lo].gens());
    if (cn && f.rows()) f.set_block(0, 0, tr.at(n).matrix());
    if (Eb.module(n).gens() && f.rows()) f.set_block(0, cn, phi1(n));
    X.F.maps[n] = ModuleMap(mods[n - lo], Ch.module(n), f);
  }
  return X;
}

// ---------------------------------------------------------------- plain Mackey functors as pairs

/// Mackey functor over Z/p as (E^0, σ, E^1, V: E^0 -> E^1, F: E^1 -> E^0).
struct CyclicPair {
  int p = 2;
  FPModule E0, E1;
  Matrix sigma, V, F;

  bool operator==(const CyclicPair& o) const {
    return p == o.p && E0.ring() == o.E0.ring() && E0.gens() == o.E0.gens() && E1.gens() == o.E1.gens() &&
           E0.relations() == o.E0.relations() && E1.relations() == o.E1.relations() && sigma == o.sigma &&
           V == o.V && F == o.F;
  }

  std::vector<std::string> check() const {
    std::vector<std::string> out;
    ModuleMap s(E0, E0, sigma), v(E0, E1, V), f(E1, E0, F);
    if (!s.well_defined() || !v.well_defined() || !f.well_defined()) out.push_back("a structure map is not well defined");
    if (!ModuleMap(E0, E0, detail::matrix_power(sigma, p)).equals(ModuleMap::identity(E0)))
      out.push_back("σ^p is not the identity");
    if (!compose(v, s).equals(v)) out.push_back("V is not σ-invariant");
    if (!compose(s, f).equals(f)) out.push_back("F does not land in the invariants");
    Matrix norm(E0.gens(), E0.gens()), pw = Matrix::identity(E0.gens());
    for (int i = 0; i < p; ++i) {
      norm = norm + pw;
      pw = pw * sigma;
    }
    if (!compose(f, v).equals(ModuleMap(E0, E0, norm))) out.push_back("F∘V differs from the norm");
    return out;
  }
};

inline CyclicPair pair_from_mackey(const MackeyFunctor& M) {
  const Group& G = M.group();
  detail::check_prime(G.order());
  const auto& L = M.lattice();
  const int e = L.trivial(), top = L.whole();
  CyclicPair P{G.order(), M.value(e), M.value(top), M.conj(1, e).matrix(), M.tr(top, e).matrix(),
               M.res(top, e).matrix()};
  auto bad = P.check();
  if (!bad.empty()) throw DomainError("pair_from_mackey: " + bad.front());
  return P;
}

inline MackeyFunctor mackey_from_pair(const CyclicPair& P) {
  detail::check_prime(P.p);
  auto bad = P.check();
  if (!bad.empty()) throw DomainError("mackey_from_pair: " + bad.front());
  Group G = Group::cyclic(P.p);
  const auto& L = G.lattice();
  const int e = L.trivial(), top = L.whole();
  MackeyFunctor M(G, P.E0.ring());
  M.set_value(e, P.E0);
  M.set_value(top, P.E1);
  M.set_res(top, e, P.F);
  M.set_tr(top, e, P.V);
  for (int g = 0; g < P.p; ++g) {
    // σ^g; Group::cyclic numbers elements by their exponent
    M.set_conj(g, e, detail::matrix_power(P.sigma, g));
    M.set_conj(g, top, Matrix::identity(P.E1.gens()));
  }
  M.fill_defaults();
  return M;
}

}  // namespace mackey
