#pragma once

#include <vector>

#include "mackey/mackey.hpp"

namespace mackey {

/// Box product with its presentation data: at level H the generators are
/// the blocks M^K ⊗ N^K for K ⊆ H, in increasing subgroup order.
struct BoxProduct {
  MackeyFunctor functor;
  MackeyFunctor left, right;                    // simplified factors
  std::vector<std::vector<int>> blocks;         // H -> subgroups K ⊆ H
  std::vector<std::vector<std::size_t>> offset; // H -> generator offset of each block
};

namespace detail {

inline std::size_t block_index(const std::vector<int>& blocks, int k) {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i] == k) return i;
  throw std::logic_error("box: missing block");
}

}  // namespace detail

inline BoxProduct box_product_full(const MackeyFunctor& Min, const MackeyFunctor& Nin) {
  if (!Min.group().same_as(Nin.group())) throw DomainError("box_product: functors over different groups");
  if (Min.ring() != Nin.ring()) throw DomainError("box_product: coefficient rings differ");
  BoxProduct B;
  B.left = simplify(Min).functor;
  B.right = simplify(Nin).functor;
  const MackeyFunctor &M = B.left, &N = B.right;
  const Group& G = M.group();
  const Ring& R = M.ring();
  const auto& L = G.lattice();
  const int ns = L.size();
  auto gens_of = [&](int k) { return M.value(k).gens() * N.value(k).gens(); };

  B.blocks.resize(ns);
  B.offset.resize(ns);
  std::vector<FPModule> values(ns);
  for (int h = 0; h < ns; ++h) {
    B.blocks[h] = L.subgroups_of(h);
    std::size_t off = 0;
    for (int k : B.blocks[h]) {
      B.offset[h].push_back(off);
      off += gens_of(k);
    }
    const std::size_t total = off;
    std::vector<Matrix> rels;
    auto add_rel = [&](const Matrix& m) {
      if (m.cols()) rels.push_back(m);
    };
    for (std::size_t bi = 0; bi < B.blocks[h].size(); ++bi) {
      int k = B.blocks[h][bi];
      std::size_t o = B.offset[h][bi];
      // tensor relations
      FPModule t = tensor(M.value(k), N.value(k));
      Matrix r(total, t.relations().cols());
      r.set_block(o, 0, t.relations());
      add_rel(r);
      // conjugation by h' in H: (conj m ⊗ conj n) at hKh^-1 equals m ⊗ n at K
      for (int x : L.subgroup(h)) {
        int xk = L.conj(x, k);
        if (xk == k && x != 0 && M.conj(x, k).matrix() == Matrix::identity(M.value(k).gens()) &&
            N.conj(x, k).matrix() == Matrix::identity(N.value(k).gens()))
          continue;
        Matrix c = Matrix::kron(M.conj(x, k).matrix(), N.conj(x, k).matrix());
        Matrix rr(total, gens_of(k));
        rr.add_block(B.offset[h][detail::block_index(B.blocks[h], xk)], 0, c);
        rr.add_block(o, 0, -Matrix::identity(gens_of(k)));
        add_rel(rr);
      }
      // Frobenius: tr(m') ⊗ n ~ m' ⊗ res(n) and m ⊗ tr(n') ~ res(m) ⊗ n'
      for (std::size_t bj = 0; bj < B.blocks[h].size(); ++bj) {
        int kp = B.blocks[h][bj];
        if (kp == k || !L.contains(k, kp)) continue;
        std::size_t op = B.offset[h][bj];
        {
          Matrix top = Matrix::kron(M.tr(k, kp).matrix(), Matrix::identity(N.value(k).gens()));
          Matrix bot = Matrix::kron(Matrix::identity(M.value(kp).gens()), N.res(k, kp).matrix());
          Matrix rr(total, top.cols());
          rr.add_block(o, 0, top);
          rr.add_block(op, 0, -bot);
          add_rel(rr);
        }
        {
          Matrix top = Matrix::kron(Matrix::identity(M.value(k).gens()), N.tr(k, kp).matrix());
          Matrix bot = Matrix::kron(M.res(k, kp).matrix(), Matrix::identity(N.value(kp).gens()));
          Matrix rr(total, top.cols());
          rr.add_block(o, 0, top);
          rr.add_block(op, 0, -bot);
          add_rel(rr);
        }
      }
    }
    Matrix all(total, 0);
    for (auto& r : rels) all = Matrix::hcat(all, r);
    values[h] = FPModule(R, total, all);
  }

  MackeyFunctor P(G, R);
  for (int h = 0; h < ns; ++h) P.set_value(h, values[h]);
  for (int h = 0; h < ns; ++h)
    for (int l = 0; l < ns; ++l) {
      if (!L.contains(h, l)) continue;
      // transfer: block K of L goes to block K of H
      Matrix tr(values[h].gens(), values[l].gens());
      for (std::size_t bi = 0; bi < B.blocks[l].size(); ++bi) {
        int k = B.blocks[l][bi];
        tr.add_block(B.offset[h][detail::block_index(B.blocks[h], k)], B.offset[l][bi],
                     Matrix::identity(gens_of(k)));
      }
      P.set_tr(h, l, tr);
      // restriction of tr^H_K(m ⊗ n) by the double coset formula over L\H/K
      Matrix res(values[l].gens(), values[h].gens());
      for (std::size_t bi = 0; bi < B.blocks[h].size(); ++bi) {
        int k = B.blocks[h][bi];
        for (auto& dc : double_cosets_in(G, L.subgroup(h), L.subgroup(l), L.subgroup(k))) {
          int x = dc.rep;
          int meet = L.index_of(dc.intersection);  // L ∩ x K x^-1
          int pre = L.conj(G.inv(x), meet);        // x^-1 L x ∩ K
          Matrix mm = M.conj(x, pre).matrix() * M.res(k, pre).matrix();
          Matrix nn = N.conj(x, pre).matrix() * N.res(k, pre).matrix();
          res.add_block(B.offset[l][detail::block_index(B.blocks[l], meet)], B.offset[h][bi], Matrix::kron(mm, nn));
        }
      }
      P.set_res(h, l, res);
    }
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < ns; ++h) {
      int gh = L.conj(g, h);
      Matrix c(values[gh].gens(), values[h].gens());
      for (std::size_t bi = 0; bi < B.blocks[h].size(); ++bi) {
        int k = B.blocks[h][bi];
        int gk = L.conj(g, k);
        c.add_block(B.offset[gh][detail::block_index(B.blocks[gh], gk)], B.offset[h][bi],
                    Matrix::kron(M.conj(g, k).matrix(), N.conj(g, k).matrix()));
      }
      P.set_conj(g, h, c);
    }
  B.functor = P;
  return B;
}

inline MackeyFunctor box_product(const MackeyFunctor& M, const MackeyFunctor& N) {
  return box_product_full(M, N).functor;
}

/// The unit map A □ M -> M: at level H the generator [K/L] ⊗ m in block K
/// goes to tr^H_L res^K_L m.
inline MackeyMorphism box_unit_map(const MackeyFunctor& M) {
  const Group& G = M.group();
  const Ring& R = M.ring();
  const auto& L = G.lattice();
  MackeyFunctor A = burnside_mackey(G, R);
  BoxProduct B = box_product_full(A, M);
  const MackeyFunctor &Ms = B.right;
  SimplifiedFunctor sM = simplify(M);
  MackeyMorphism f{B.functor, M, {}};
  for (int h = 0; h < L.size(); ++h) {
    Matrix m(M.value(h).gens(), B.functor.value(h).gens());
    for (std::size_t bi = 0; bi < B.blocks[h].size(); ++bi) {
      int k = B.blocks[h][bi];
      auto basis = burnside_basis_at(G, k);  // A^K is free, already minimal
      std::size_t mk = Ms.value(k).gens();
      for (std::size_t a = 0; a < basis.size(); ++a) {
        int l = basis[a];
        Matrix img = Ms.tr(h, l).matrix() * Ms.res(k, l).matrix();  // Ms^K -> Ms^H
        img = sM.from.level[h].matrix() * img;                        // into M^H
        m.set_block(0, B.offset[h][bi] + a * mk, img);
      }
    }
    f.level.push_back(ModuleMap(B.functor.value(h), M.value(h), m));
  }
  return f;
}

}  // namespace mackey
