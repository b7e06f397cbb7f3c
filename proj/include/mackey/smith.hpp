#pragma once

#include <optional>
#include <vector>

#include "mackey/matrix.hpp"

namespace mackey {

/// U * A * V = D with D diagonal, each diagonal entry dividing the next.
/// Uinv is kept alongside U so callers can change bases in both directions.
struct SmithResult {
  Matrix D, U, Uinv, V;
  std::vector<Scalar> diag;  // length min(rows, cols)
  std::size_t rank = 0;      // nonzero diagonal entries
};

namespace detail {

class SmithEngine {
 public:
  SmithEngine(const Matrix& A, const Ring& R)
      : R_(R), D_(A.normalized(R)), U_(Matrix::identity(A.rows())), Uinv_(Matrix::identity(A.rows())),
        V_(Matrix::identity(A.cols())) {}

  SmithResult run() {
    const std::size_t m = D_.rows(), n = D_.cols(), k = std::min(m, n);
    SmithResult out;
    for (std::size_t t = 0; t < k; ++t) {
      if (!place_pivot(t)) break;
      reduce_at(t);
      normalize_pivot(t);
    }
    out.diag.resize(k);
    for (std::size_t t = 0; t < k; ++t) {
      out.diag[t] = D_(t, t);
      if (!R_.is_zero(D_(t, t))) ++out.rank;
    }
    out.D = std::move(D_);
    out.U = std::move(U_);
    out.Uinv = std::move(Uinv_);
    out.V = std::move(V_);
    return out;
  }

 private:
  bool place_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < D_.rows(); ++i)
      for (std::size_t j = t; j < D_.cols(); ++j) {
        if (R_.is_zero(D_(i, j))) continue;
        Integer s = R_.pivot_size(D_(i, j));
        if (!found || s < best) {
          found = true;
          best = s;
          bi = i;
          bj = j;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void reduce_at(std::size_t t) {
    for (;;) {
      for (std::size_t i = t + 1; i < D_.rows(); ++i) {
        if (R_.is_zero(D_(i, t))) continue;
        if (R_.divides(D_(t, t), D_(i, t)))
          row_addmul(i, t, R_.neg(R_.quotient(D_(i, t), D_(t, t))));
        else
          row_bezout(t, i, R_.gcdx(D_(t, t), D_(i, t)));
      }
      for (std::size_t j = t + 1; j < D_.cols(); ++j) {
        if (R_.is_zero(D_(t, j))) continue;
        if (R_.divides(D_(t, t), D_(t, j)))
          col_addmul(j, t, R_.neg(R_.quotient(D_(t, j), D_(t, t))));
        else
          col_bezout(t, j, R_.gcdx(D_(t, t), D_(t, j)));
      }
      bool column_clean = true;
      for (std::size_t i = t + 1; i < D_.rows(); ++i)
        if (!R_.is_zero(D_(i, t))) column_clean = false;
      if (!column_clean) continue;
      // pivot must divide the remaining block
      bool fixed = false;
      for (std::size_t i = t + 1; i < D_.rows() && !fixed; ++i)
        for (std::size_t j = t + 1; j < D_.cols(); ++j)
          if (!R_.divides(D_(t, t), D_(i, j))) {
            row_addmul(t, i, Scalar(1));
            fixed = true;
            break;
          }
      if (!fixed) return;
    }
  }

  void normalize_pivot(std::size_t t) {
    const Scalar& d = D_(t, t);
    Scalar c(1);
    switch (R_.kind()) {
      case RingKind::Integers: c = sgn(d) < 0 ? Scalar(-1) : Scalar(1); break;
      case RingKind::Rationals: c = Scalar(1) / d; break;
      case RingKind::PLocalIntegers: c = R_.ideal_generator(d) / d; break;
      case RingKind::IntegersMod: {
        Integer m(R_.parameter());
        Integer g;
        mpz_gcd(g.get_mpz_t(), d.get_num().get_mpz_t(), m.get_mpz_t());
        Integer d1 = d.get_num() / g, m1 = m / g;
        if (m1 == 1) return;
        Integer c0;
        mpz_invert(c0.get_mpz_t(), d1.get_mpz_t(), m1.get_mpz_t());
        for (Integer cand = c0;; cand += m1) {
          Integer h;
          mpz_gcd(h.get_mpz_t(), cand.get_mpz_t(), m.get_mpz_t());
          if (h == 1) {
            c = Scalar(cand);
            break;
          }
        }
        break;
      }
    }
    if (c != 1) row_scale(t, c);
  }

  // --- elementary operations, mirrored into U, Uinv, V ---

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    D_.swap_rows(a, b);
    U_.swap_rows(a, b);
    Uinv_.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    D_.swap_cols(a, b);
    V_.swap_cols(a, b);
  }
  // row_i += q * row_t
  void row_addmul(std::size_t i, std::size_t t, const Scalar& q) {
    for (std::size_t j = 0; j < D_.cols(); ++j) D_(i, j) = R_.add(D_(i, j), R_.mul(q, D_(t, j)));
    for (std::size_t j = 0; j < U_.cols(); ++j) U_(i, j) = R_.add(U_(i, j), R_.mul(q, U_(t, j)));
    for (std::size_t r = 0; r < Uinv_.rows(); ++r) Uinv_(r, t) = R_.sub(Uinv_(r, t), R_.mul(q, Uinv_(r, i)));
  }
  // col_j += q * col_t
  void col_addmul(std::size_t j, std::size_t t, const Scalar& q) {
    for (std::size_t i = 0; i < D_.rows(); ++i) D_(i, j) = R_.add(D_(i, j), R_.mul(q, D_(i, t)));
    for (std::size_t i = 0; i < V_.rows(); ++i) V_(i, j) = R_.add(V_(i, j), R_.mul(q, V_(i, t)));
  }
  void row_scale(std::size_t i, const Scalar& c) {
    Scalar ci = R_.inverse(c);
    for (std::size_t j = 0; j < D_.cols(); ++j) D_(i, j) = R_.mul(c, D_(i, j));
    for (std::size_t j = 0; j < U_.cols(); ++j) U_(i, j) = R_.mul(c, U_(i, j));
    for (std::size_t r = 0; r < Uinv_.rows(); ++r) Uinv_(r, i) = R_.mul(ci, Uinv_(r, i));
  }
  // rows (a, b) <- [[s, t], [u, v]] * rows (a, b)
  void row_bezout(std::size_t a, std::size_t b, const Gcdx& g) {
    auto mix = [&](Matrix& M) {
      for (std::size_t j = 0; j < M.cols(); ++j) {
        Scalar x = M(a, j), y = M(b, j);
        M(a, j) = R_.add(R_.mul(g.s, x), R_.mul(g.t, y));
        M(b, j) = R_.add(R_.mul(g.u, x), R_.mul(g.v, y));
      }
    };
    mix(D_);
    mix(U_);
    // inverse of [[s,t],[u,v]] is det^{-1} [[v,-t],[-u,s]]
    Scalar det = R_.sub(R_.mul(g.s, g.v), R_.mul(g.t, g.u));
    Scalar di = R_.inverse(det);
    Scalar i00 = R_.mul(di, g.v), i01 = R_.mul(di, R_.neg(g.t)), i10 = R_.mul(di, R_.neg(g.u)), i11 = R_.mul(di, g.s);
    for (std::size_t r = 0; r < Uinv_.rows(); ++r) {
      Scalar x = Uinv_(r, a), y = Uinv_(r, b);
      Uinv_(r, a) = R_.add(R_.mul(x, i00), R_.mul(y, i10));
      Uinv_(r, b) = R_.add(R_.mul(x, i01), R_.mul(y, i11));
    }
  }
  // cols (a, b) <- cols (a, b) * [[s, u], [t, v]]
  void col_bezout(std::size_t a, std::size_t b, const Gcdx& g) {
    auto mix = [&](Matrix& M) {
      for (std::size_t i = 0; i < M.rows(); ++i) {
        Scalar x = M(i, a), y = M(i, b);
        M(i, a) = R_.add(R_.mul(g.s, x), R_.mul(g.t, y));
        M(i, b) = R_.add(R_.mul(g.u, x), R_.mul(g.v, y));
      }
    };
    mix(D_);
    mix(V_);
  }

  Ring R_;
  Matrix D_, U_, Uinv_, V_;
};

}  // namespace detail

inline SmithResult smith(const Matrix& A, const Ring& R) { return detail::SmithEngine(A, R).run(); }

/// Integer Smith normal form: U * A * V = D.
struct SmithForm {
  Matrix D, U, V;
};
inline SmithForm smith_form(const Matrix& A) {
  auto s = smith(A, Ring::integers());
  return {s.D, s.U, s.V};
}

/// Some x with A x = b, or nullopt.
inline std::optional<std::vector<Scalar>> smith_solve(const SmithResult& S, const std::vector<Scalar>& b,
                                                      const Ring& R) {
  const std::size_t m = S.U.rows(), n = S.V.rows();
  std::vector<Scalar> c = S.U.apply(b);
  for (auto& x : c) x = R.normalize(x);
  std::vector<Scalar> y(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < S.diag.size() && !R.is_zero(S.diag[i])) {
      if (!R.divides(S.diag[i], c[i])) return std::nullopt;
      y[i] = R.quotient(c[i], S.diag[i]);
    } else if (!R.is_zero(c[i])) {
      return std::nullopt;
    }
  }
  std::vector<Scalar> x = S.V.apply(y);
  for (auto& v : x) v = R.normalize(v);
  return x;
}

/// Columns generating {x : A x = 0}.
inline Matrix smith_kernel(const SmithResult& S, const Ring& R) {
  const std::size_t n = S.V.rows();
  std::vector<std::vector<Scalar>> cols;
  for (std::size_t j = 0; j < n; ++j) {
    Scalar d = j < S.diag.size() ? S.diag[j] : Scalar(0);
    Scalar a = R.annihilator(d);
    if (R.is_zero(a)) continue;
    std::vector<Scalar> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = R.mul(a, S.V(i, j));
    cols.push_back(std::move(v));
  }
  Matrix K(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) K(i, j) = cols[j][i];
  return K;
}

inline Matrix kernel_matrix(const Matrix& A, const Ring& R) { return smith_kernel(smith(A, R), R); }

}  // namespace mackey
