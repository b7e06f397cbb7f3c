#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mackey/smith.hpp"

namespace mackey {

/// Finitely presented module: R^gens modulo the column span of `relations`.
class FPModule {
 public:
  FPModule() : FPModule(Ring::integers(), 0) {}
  FPModule(Ring R, std::size_t gens) : FPModule(R, gens, Matrix(gens, 0)) {}
  FPModule(Ring R, std::size_t gens, Matrix relations)
      : ring_(R), gens_(gens), rel_(relations.normalized(R)), cache_(std::make_shared<Cache>()) {
    if (rel_.rows() != gens_) throw DomainError("relation matrix must have one row per generator");
  }

  static FPModule free(const Ring& R, std::size_t n) { return FPModule(R, n); }
  static FPModule zero(const Ring& R) { return FPModule(R, 0); }
  /// R / (d)
  static FPModule cyclic(const Ring& R, const Scalar& d) {
    Matrix rel(1, 1);
    rel(0, 0) = d;
    return FPModule(R, 1, rel);
  }
  /// Direct sum of cyclic modules R/(d_i); d = 0 gives a free summand.
  static FPModule from_invariants(const Ring& R, const std::vector<Scalar>& ds) {
    std::vector<Scalar> nz;
    for (auto& d : ds)
      if (!R.is_zero(R.normalize(d))) nz.push_back(d);
    Matrix rel(ds.size(), nz.size());
    std::size_t c = 0;
    for (std::size_t i = 0; i < ds.size(); ++i)
      if (!R.is_zero(R.normalize(ds[i]))) rel(i, c++) = ds[i];
    return FPModule(R, ds.size(), rel);
  }

  const Ring& ring() const { return ring_; }
  std::size_t gens() const { return gens_; }
  const Matrix& relations() const { return rel_; }

  /// Whether v (a vector on generators) lies in the relation submodule.
  bool is_zero_element(const std::vector<Scalar>& v) const {
    if (gens_ == 0) return true;
    if (rel_.cols() == 0) {
      for (auto& x : v)
        if (!ring_.is_zero(ring_.normalize(x))) return false;
      return true;
    }
    return smith_solve(solver(), v, ring_).has_value();
  }

  /// Invariant factors: non-unit ideal generators in divisibility order.
  /// Zero entries stand for free summands. Over Z/m the full ring appears as m.
  std::vector<Scalar> invariants() const {
    const SmithResult& S = solver();
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < gens_; ++i) {
      Scalar d = i < S.diag.size() ? S.diag[i] : Scalar(0);
      Scalar g = ring_.ideal_generator(d);
      if (ring_.kind() == RingKind::IntegersMod && g == 0) g = ring_.parameter();
      if (g == 1) continue;
      out.push_back(g);
    }
    // divisibility order: torsion by size, free parts last
    std::stable_sort(out.begin(), out.end(), [](const Scalar& a, const Scalar& b) {
      if (sgn(a) == 0) return false;
      if (sgn(b) == 0) return true;
      return a < b;
    });
    return out;
  }

  bool is_zero() const { return invariants().empty(); }

  std::size_t free_rank() const {
    if (ring_.kind() == RingKind::IntegersMod) return 0;
    std::size_t r = 0;
    for (auto& x : invariants())
      if (sgn(x) == 0) ++r;
    return r;
  }

  std::string describe() const {
    auto inv = invariants();
    if (inv.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < inv.size(); ++i) {
      if (i) s += " + ";
      if (sgn(inv[i]) == 0)
        s += ring_.name();
      else if (ring_.kind() == RingKind::IntegersMod)
        s += "(" + ring_.name() + ")/" + inv[i].get_str();
      else
        s += ring_.name() + "/" + inv[i].get_str();
    }
    return s;
  }

  const SmithResult& solver() const {
    std::call_once(cache_->once, [this] { cache_->smith = smith(rel_, ring_); });
    return cache_->smith;
  }

 private:
  struct Cache {
    std::once_flag once;
    SmithResult smith;
  };
  Ring ring_;
  std::size_t gens_ = 0;
  Matrix rel_;
  std::shared_ptr<Cache> cache_;
};

inline bool modules_isomorphic(const FPModule& a, const FPModule& b) {
  if (a.ring() != b.ring()) throw DomainError("modules_isomorphic: ring mismatch");
  return a.invariants() == b.invariants();
}

inline FPModule direct_sum(const FPModule& a, const FPModule& b) {
  if (a.ring() != b.ring()) throw DomainError("direct_sum: ring mismatch");
  return FPModule(a.ring(), a.gens() + b.gens(), Matrix::direct_sum(a.relations(), b.relations()));
}

inline FPModule direct_sum(const Ring& R, const std::vector<FPModule>& ms) {
  FPModule out = FPModule::zero(R);
  for (auto& m : ms) out = direct_sum(out, m);
  return out;
}

/// Tensor product over the common ring; generator (i, j) has index i * b.gens() + j.
inline FPModule tensor(const FPModule& a, const FPModule& b) {
  if (a.ring() != b.ring()) throw DomainError("tensor: ring mismatch");
  Matrix r1 = Matrix::kron(a.relations(), Matrix::identity(b.gens()));
  Matrix r2 = Matrix::kron(Matrix::identity(a.gens()), b.relations());
  return FPModule(a.ring(), a.gens() * b.gens(), Matrix::hcat(r1, r2));
}

/// Homomorphism given on generators; matrix is target.gens x source.gens.
class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(FPModule source, FPModule target, Matrix m)
      : src_(std::move(source)), tgt_(std::move(target)), mat_(m.normalized(src_.ring())) {
    if (src_.ring() != tgt_.ring()) throw DomainError("module map: ring mismatch");
    if (mat_.rows() != tgt_.gens() || mat_.cols() != src_.gens()) throw DomainError("module map: matrix shape mismatch");
  }

  static ModuleMap identity(const FPModule& M) { return ModuleMap(M, M, Matrix::identity(M.gens())); }
  static ModuleMap zero(const FPModule& S, const FPModule& T) { return ModuleMap(S, T, Matrix(T.gens(), S.gens())); }

  const FPModule& source() const { return src_; }
  const FPModule& target() const { return tgt_; }
  const Matrix& matrix() const { return mat_; }
  const Ring& ring() const { return src_.ring(); }

  /// Each source relation must map into the target relations.
  bool well_defined() const {
    const Matrix& r = src_.relations();
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (!tgt_.is_zero_element(mat_.apply(r.col(j)))) return false;
    return true;
  }

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
    auto w = mat_.apply(v);
    for (auto& x : w) x = ring().normalize(x);
    return w;
  }

  bool is_zero() const {
    for (std::size_t j = 0; j < src_.gens(); ++j)
      if (!tgt_.is_zero_element(mat_.col(j))) return false;
    return true;
  }

  /// Equality as homomorphisms (differences vanish in the target).
  bool equals(const ModuleMap& o) const {
    if (src_.gens() != o.src_.gens() || tgt_.gens() != o.tgt_.gens()) return false;
    return ModuleMap(src_, tgt_, mat_ - o.mat_).is_zero();
  }

  ModuleMap operator+(const ModuleMap& o) const { return ModuleMap(src_, tgt_, mat_ + o.mat_); }
  ModuleMap operator-(const ModuleMap& o) const { return ModuleMap(src_, tgt_, mat_ - o.mat_); }
  ModuleMap operator-() const { return ModuleMap(src_, tgt_, -mat_); }
  ModuleMap scaled(const Scalar& c) const { return ModuleMap(src_, tgt_, c * mat_); }

 private:
  FPModule src_, tgt_;
  Matrix mat_;
};

/// g after f.
inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (g.source().gens() != f.target().gens()) throw std::logic_error("compose: shape mismatch");
  return ModuleMap(f.source(), g.target(), g.matrix() * f.matrix());
}

inline ModuleMap direct_sum(const ModuleMap& a, const ModuleMap& b) {
  return ModuleMap(direct_sum(a.source(), b.source()), direct_sum(a.target(), b.target()),
                   Matrix::direct_sum(a.matrix(), b.matrix()));
}

inline ModuleMap tensor(const ModuleMap& a, const ModuleMap& b) {
  return ModuleMap(tensor(a.source(), b.source()), tensor(a.target(), b.target()),
                   Matrix::kron(a.matrix(), b.matrix()));
}

/// Module in minimal (diagonal) form together with mutually inverse maps.
struct Simplified {
  FPModule module;
  ModuleMap to;    // original -> simplified
  ModuleMap from;  // simplified -> original
};

inline Simplified simplify(const FPModule& M) {
  const Ring& R = M.ring();
  const SmithResult& S = M.solver();
  std::vector<std::size_t> keep;
  std::vector<Scalar> ds;
  for (std::size_t i = 0; i < M.gens(); ++i) {
    Scalar d = i < S.diag.size() ? S.diag[i] : Scalar(0);
    if (R.is_unit(d)) continue;
    keep.push_back(i);
    ds.push_back(d);
  }
  FPModule out = FPModule::from_invariants(R, ds);
  Matrix to = S.U.select_rows(keep);
  Matrix from = S.Uinv.select_cols(keep);
  return {out, ModuleMap(M, out, to), ModuleMap(out, M, from)};
}

/// Submodule of M generated by the columns of Z, modulo the columns of B (and M's relations).
/// Returns the subquotient and the map into M induced by Z (well defined only when B = 0).
struct Subquotient {
  FPModule module;
  Matrix generators;  // columns in M's coordinates
};

inline Subquotient subquotient(const FPModule& M, const Matrix& Z, const Matrix& B) {
  const Ring& R = M.ring();
  std::size_t k = Z.cols();
  Matrix big = Matrix::hcat(Matrix::hcat(Z, M.relations()), B.cols() ? B : Matrix(M.gens(), 0));
  Matrix ker = kernel_matrix(big, R);
  Matrix rel = ker.block(0, k, 0, ker.cols());
  FPModule raw(R, k, rel);
  Simplified s = simplify(raw);
  return {s.module, (Z * s.from.matrix()).normalized(R)};
}

struct KernelResult {
  FPModule module;
  ModuleMap inclusion;
};

/// Kernel of f, presented minimally, with its inclusion into f.source().
inline KernelResult kernel(const ModuleMap& f) {
  const Ring& R = f.ring();
  std::size_t gs = f.source().gens();
  Matrix big = Matrix::hcat(f.matrix(), f.target().relations());
  Matrix K = kernel_matrix(big, R);
  Matrix Kx = K.block(0, gs, 0, K.cols());
  Subquotient sq = subquotient(f.source(), Kx, Matrix(gs, 0));
  return {sq.module, ModuleMap(sq.module, f.source(), sq.generators)};
}

struct CokernelResult {
  FPModule module;
  ModuleMap projection;  // target -> cokernel
};

inline CokernelResult cokernel(const ModuleMap& f) {
  const FPModule& T = f.target();
  FPModule raw(T.ring(), T.gens(), Matrix::hcat(T.relations(), f.matrix()));
  Simplified s = simplify(raw);
  return {s.module, ModuleMap(T, s.module, s.to.matrix())};
}

/// Image of f as a subquotient of the target.
inline FPModule image(const ModuleMap& f) {
  return subquotient(f.target(), f.matrix(), Matrix(f.target().gens(), 0)).module;
}

inline bool is_injective(const ModuleMap& f) { return kernel(f).module.is_zero(); }
inline bool is_surjective(const ModuleMap& f) { return cokernel(f).module.is_zero(); }
inline bool is_isomorphism(const ModuleMap& f) { return is_injective(f) && is_surjective(f); }

/// Some preimage of each column of Y under f (Y in target coordinates), or nullopt.
inline std::optional<Matrix> lift(const ModuleMap& f, const Matrix& Y) {
  const Ring& R = f.ring();
  Matrix big = Matrix::hcat(f.matrix(), f.target().relations());
  SmithResult S = smith(big, R);
  Matrix X(f.source().gens(), Y.cols());
  for (std::size_t j = 0; j < Y.cols(); ++j) {
    auto x = smith_solve(S, Y.col(j), R);
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < X.rows(); ++i) X(i, j) = (*x)[i];
  }
  return X;
}

/// Bounded chain complex; modules outside [lo, hi] are zero. d(n): C_n -> C_{n-1}.
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(int lo, int hi, std::vector<FPModule> modules, std::map<int, ModuleMap> diffs,
               std::optional<Ring> R = std::nullopt)
      : lo_(lo), hi_(hi), mods_(std::move(modules)), d_(std::move(diffs)) {
    ring_ = R ? *R : (mods_.empty() ? Ring::integers() : mods_.front().ring());
    if (hi < lo - 1 || mods_.size() != static_cast<std::size_t>(hi - lo + 1))
      throw DomainError("chain complex: module count does not match window");
  }

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  const Ring& ring() const { return ring_; }

  FPModule module(int n) const {
    if (n < lo_ || n > hi_) return FPModule::zero(ring());
    return mods_[n - lo_];
  }

  ModuleMap d(int n) const {
    auto it = d_.find(n);
    if (it != d_.end()) return it->second;
    return ModuleMap::zero(module(n), module(n - 1));
  }

  bool is_complex() const {
    for (int n = lo_ + 1; n < hi_; ++n)
      if (!compose(d(n), d(n + 1)).is_zero()) return false;
    return true;
  }

  FPModule homology(int n) const {
    if (n < lo_ || n > hi_) return FPModule::zero(ring());
    if (!is_complex_at(n)) throw DomainError("homology: d∘d != 0 at degree " + std::to_string(n));
    ModuleMap dn = d(n), dn1 = d(n + 1);
    const Ring& R = dn.ring();
    Matrix K = kernel_matrix(Matrix::hcat(dn.matrix(), dn.target().relations()), R);
    Matrix Kx = K.block(0, module(n).gens(), 0, K.cols());
    return subquotient(module(n), Kx, dn1.matrix()).module;
  }

 private:
  bool is_complex_at(int n) const {
    if (n - 1 < lo_ || n + 1 > hi_) return true;
    return compose(d(n), d(n + 1)).is_zero();
  }

  int lo_ = 0, hi_ = -1;
  Ring ring_;
  std::vector<FPModule> mods_;
  std::map<int, ModuleMap> d_;
};

/// Degreewise maps f_n: A_n -> B_n.
struct ChainMap {
  ChainComplex source, target;
  std::map<int, ModuleMap> maps;

  ModuleMap at(int n) const {
    auto it = maps.find(n);
    if (it != maps.end()) return it->second;
    return ModuleMap::zero(source.module(n), target.module(n));
  }

  bool is_chain_map() const {
    int lo = std::min(source.lo(), target.lo()), hi = std::max(source.hi(), target.hi());
    for (int n = lo + 1; n <= hi; ++n)
      if (!compose(target.d(n), at(n)).equals(compose(at(n - 1), source.d(n)))) return false;
    return true;
  }
};

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
  ChainMap h{f.source, g.target, {}};
  for (int n = f.source.lo(); n <= f.source.hi(); ++n) h.maps[n] = compose(g.at(n), f.at(n));
  return h;
}

/// cone(f)_n = B_n + A_{n-1}, d(b, a) = (db + f a, -da).
inline ChainComplex mapping_cone(const ChainMap& f) {
  const ChainComplex &A = f.source, &B = f.target;
  int lo = std::min(B.lo(), A.lo() + 1), hi = std::max(B.hi(), A.hi() + 1);
  std::vector<FPModule> mods;
  for (int n = lo; n <= hi; ++n) mods.push_back(direct_sum(B.module(n), A.module(n - 1)));
  std::map<int, ModuleMap> d;
  for (int n = lo + 1; n <= hi; ++n) {
    const FPModule &src = mods[n - lo], &tgt = mods[n - 1 - lo];
    Matrix m(tgt.gens(), src.gens());
    std::size_t bn = B.module(n).gens(), bn1 = B.module(n - 1).gens();
    m.set_block(0, 0, B.d(n).matrix());
    m.set_block(0, bn, f.at(n - 1).matrix());
    m.set_block(bn1, bn, -A.d(n - 1).matrix());
    d[n] = ModuleMap(src, tgt, m);
  }
  return ChainComplex(lo, hi, mods, d, B.ring());
}

}  // namespace mackey
