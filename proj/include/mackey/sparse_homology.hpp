#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "mackey/module.hpp"

namespace mackey {

/// Integer chain complex given implicitly by cell counts and a boundary oracle.
/// Degrees run 0..top; the boundary of a degree-n cell lists (face index, coefficient)
/// among degree n-1 cells. Repeated faces may appear; they are merged.
struct SparseCells {
  std::vector<std::size_t> count;
  std::function<void(int, std::size_t, std::vector<std::pair<std::size_t, long long>>&)> boundary;
};

namespace detail {

struct Csr {
  std::vector<std::uint64_t> start;
  std::vector<std::uint32_t> idx;
  std::vector<std::int32_t> coef;
};

}  // namespace detail

/// Integer homology in degrees 0..max_degree. Requires count.size() >= max_degree + 2.
/// Cells are first cancelled in pairs by elementary reductions and coreductions
/// (a pair joined by a unit coefficient where one side has no other alive incidence);
/// what survives is handed to dense Smith reduction.
inline std::vector<FPModule> sparse_homology(const SparseCells& C, int max_degree, std::size_t dense_limit = 4000) {
  const int top = static_cast<int>(C.count.size()) - 1;
  if (top < max_degree + 1) throw DomainError("sparse_homology: complex too short for requested degree");
  const Ring Z = Ring::integers();
  std::vector<detail::Csr> faces(top + 1), cofaces(top + 1);
  std::vector<std::pair<std::size_t, long long>> buf;
  for (int n = 1; n <= top; ++n) {
    auto& F = faces[n];
    F.start.assign(C.count[n] + 1, 0);
    for (std::size_t i = 0; i < C.count[n]; ++i) {
      buf.clear();
      C.boundary(n, i, buf);
      std::sort(buf.begin(), buf.end());
      std::size_t w = 0;
      for (std::size_t r = 0; r < buf.size();) {
        std::size_t s = r;
        long long c = 0;
        while (s < buf.size() && buf[s].first == buf[r].first) c += buf[s++].second;
        if (c != 0) buf[w++] = {buf[r].first, c};
        r = s;
      }
      for (std::size_t k = 0; k < w; ++k) {
        F.idx.push_back(static_cast<std::uint32_t>(buf[k].first));
        F.coef.push_back(static_cast<std::int32_t>(buf[k].second));
      }
      F.start[i + 1] = F.idx.size();
    }
    auto& T = cofaces[n - 1];
    T.start.assign(C.count[n - 1] + 1, 0);
    for (auto j : F.idx) ++T.start[j + 1];
    for (std::size_t j = 0; j < C.count[n - 1]; ++j) T.start[j + 1] += T.start[j];
    T.idx.resize(F.idx.size());
    T.coef.resize(F.idx.size());
    std::vector<std::uint64_t> fill(T.start.begin(), T.start.end() - 1);
    for (std::size_t i = 0; i < C.count[n]; ++i)
      for (auto k = F.start[i]; k < F.start[i + 1]; ++k) {
        auto pos = fill[F.idx[k]]++;
        T.idx[pos] = static_cast<std::uint32_t>(i);
        T.coef[pos] = F.coef[k];
      }
  }
  if (faces[0].start.empty()) faces[0].start.assign(C.count[0] + 1, 0);
  if (cofaces[top].start.empty()) cofaces[top].start.assign(C.count[top] + 1, 0);

  std::vector<std::vector<char>> alive(top + 1);
  std::vector<std::vector<std::uint32_t>> nf(top + 1), ncf(top + 1);
  for (int n = 0; n <= top; ++n) {
    alive[n].assign(C.count[n], 1);
    nf[n].resize(C.count[n]);
    ncf[n].resize(C.count[n]);
    for (std::size_t i = 0; i < C.count[n]; ++i) {
      nf[n][i] = static_cast<std::uint32_t>(faces[n].start[i + 1] - faces[n].start[i]);
      ncf[n][i] = static_cast<std::uint32_t>(cofaces[n].start[i + 1] - cofaces[n].start[i]);
    }
  }

  std::deque<std::pair<int, std::uint32_t>> queue;
  for (int n = 0; n <= top; ++n)
    for (std::size_t i = 0; i < C.count[n]; ++i)
      if (nf[n][i] == 1 || ncf[n][i] == 1) queue.push_back({n, static_cast<std::uint32_t>(i)});

  auto kill = [&](int n, std::uint32_t i) {
    alive[n][i] = 0;
    const auto& F = faces[n];
    if (n > 0)
      for (auto k = F.start[i]; k < F.start[i + 1]; ++k) {
        auto j = F.idx[k];
        if (!alive[n - 1][j]) continue;
        if (--ncf[n - 1][j] == 1) queue.push_back({n - 1, j});
      }
    const auto& T = cofaces[n];
    if (n < top)
      for (auto k = T.start[i]; k < T.start[i + 1]; ++k) {
        auto j = T.idx[k];
        if (!alive[n + 1][j]) continue;
        if (--nf[n + 1][j] == 1) queue.push_back({n + 1, j});
      }
  };

  while (!queue.empty()) {
    auto [n, i] = queue.front();
    queue.pop_front();
    if (!alive[n][i]) continue;
    if (nf[n][i] == 1) {
      // coreduction: the only alive face of i
      const auto& F = faces[n];
      for (auto k = F.start[i]; k < F.start[i + 1]; ++k) {
        auto j = F.idx[k];
        if (!alive[n - 1][j]) continue;
        if (F.coef[k] == 1 || F.coef[k] == -1) {
          kill(n, i);
          kill(n - 1, j);
        }
        break;
      }
      if (!alive[n][i]) continue;
    }
    if (ncf[n][i] == 1 && n < top) {
      // reduction: i is a free face of its only alive coface
      const auto& T = cofaces[n];
      for (auto k = T.start[i]; k < T.start[i + 1]; ++k) {
        auto j = T.idx[k];
        if (!alive[n + 1][j]) continue;
        if (T.coef[k] == 1 || T.coef[k] == -1) {
          kill(n, i);
          kill(n + 1, j);
        }
        break;
      }
    }
  }

  // dense remainder
  std::vector<std::vector<std::uint32_t>> rest(top + 1);
  for (int n = 0; n <= top; ++n)
    for (std::size_t i = 0; i < C.count[n]; ++i)
      if (alive[n][i]) rest[n].push_back(static_cast<std::uint32_t>(i));
  int hi = max_degree + 1;
  for (int n = 0; n < hi; ++n)
    if (rest[n].size() > dense_limit)
      throw DomainError("sparse_homology: " + std::to_string(rest[n].size()) + " cells survive reduction in degree " +
                        std::to_string(n));
  std::vector<FPModule> mods;
  std::vector<Matrix> dm(hi + 1);
  for (int n = 1; n <= hi; ++n) {
    std::vector<std::int64_t> pos(C.count[n - 1], -1);
    for (std::size_t r = 0; r < rest[n - 1].size(); ++r) pos[rest[n - 1][r]] = static_cast<std::int64_t>(r);
    const auto& F = faces[n];
    if (n < hi) {
      Matrix m(rest[n - 1].size(), rest[n].size());
      for (std::size_t c = 0; c < rest[n].size(); ++c) {
        auto i = rest[n][c];
        for (auto k = F.start[i]; k < F.start[i + 1]; ++k)
          if (pos[F.idx[k]] >= 0) m(pos[F.idx[k]], c) = F.coef[k];
      }
      dm[n] = m;
      continue;
    }
    // only the image of the top differential matters: keep a basis of its column span,
    // folding in the surviving columns a chunk at a time
    const std::size_t r = rest[n - 1].size();
    Matrix basis(r, 0);
    std::vector<std::vector<std::pair<std::size_t, long long>>> cols;
    auto fold = [&]() {
      if (cols.empty()) return;
      Matrix m(r, basis.cols() + cols.size());
      m.set_block(0, 0, basis);
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (auto& [row, v] : cols[c]) m(row, basis.cols() + c) = Scalar(static_cast<long>(v));
      cols.clear();
      SmithResult S = smith(m, Z);
      basis = (S.Uinv * S.D).block(0, r, 0, S.rank);
    };
    std::vector<std::pair<std::size_t, long long>> col;
    for (auto i : rest[n]) {
      col.clear();
      for (auto k = F.start[i]; k < F.start[i + 1]; ++k)
        if (pos[F.idx[k]] >= 0) col.push_back({static_cast<std::size_t>(pos[F.idx[k]]), F.coef[k]});
      if (col.empty()) continue;
      cols.push_back(col);
      if (cols.size() >= 256) fold();
    }
    fold();
    rest[n].resize(basis.cols());
    dm[n] = basis;
  }
  for (int n = 0; n <= hi; ++n) mods.push_back(FPModule::free(Z, rest[n].size()));
  std::map<int, ModuleMap> d;
  for (int n = 1; n <= hi; ++n) d[n] = ModuleMap(mods[n], mods[n - 1], dm[n]);
  ChainComplex cc(0, hi, mods, d, Z);
  std::vector<FPModule> out;
  for (int n = 0; n <= max_degree; ++n) out.push_back(cc.homology(n));
  return out;
}

}  // namespace mackey
