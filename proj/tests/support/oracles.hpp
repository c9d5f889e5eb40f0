#pragma once

// Independent reference implementations for tests. Nothing here calls into the
// library's filtration or reduction code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

struct Pt {
  double x, y;
};

struct Bar {
  int dim;
  double birth, death;  // death = +inf for essential classes
};

inline double dist(const Pt& a, const Pt& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

// GF(2) rank of a matrix given as a list of columns, each a set of row ids.
inline std::size_t gf2_rank(const std::vector<std::vector<int>>& cols, int n_rows) {
  const std::size_t words = static_cast<std::size_t>(n_rows) / 64 + 1;
  std::vector<std::vector<std::uint64_t>> m;
  for (const auto& c : cols) {
    std::vector<std::uint64_t> v(words, 0);
    for (int r : c) v[r / 64] ^= std::uint64_t{1} << (r % 64);
    m.push_back(std::move(v));
  }
  std::size_t rank = 0;
  for (int bit = 0; bit < n_rows && rank < m.size(); ++bit) {
    const std::size_t w = bit / 64;
    const std::uint64_t mask = std::uint64_t{1} << (bit % 64);
    std::size_t piv = rank;
    while (piv < m.size() && !(m[piv][w] & mask)) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != rank && (m[i][w] & mask)) {
        for (std::size_t k = 0; k < words; ++k) m[i][k] ^= m[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

// Barcode from persistent Betti numbers:
//   beta_k^{i,j} = dim Z_k(K_i) - dim(B_k(K_j) cap Z_k(K_i)),
// with bar multiplicities recovered by inclusion-exclusion over the grid of
// distinct filtration values. Zero-length bars are invisible to this method.
inline std::vector<Bar> persistence_by_ranks(const std::vector<Pt>& pts, double F) {
  const int n = static_cast<int>(pts.size());
  using Splx = std::vector<int>;
  std::map<Splx, double> value;
  for (int i = 0; i < n; ++i) value[{i}] = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist(pts[i], pts[j]) <= F) value[{i, j}] = dist(pts[i], pts[j]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (value.count({i, j}) && value.count({i, k}) && value.count({j, k}))
          value[{i, j, k}] = std::max({value[{i, j}], value[{i, k}], value[{j, k}]});

  std::set<double> grid_set;
  for (const auto& [s, v] : value) grid_set.insert(v);
  const std::vector<double> t(grid_set.begin(), grid_set.end());
  const int m = static_cast<int>(t.size());

  // simplices of each dimension, with a stable row index
  std::vector<std::vector<Splx>> by_dim(3);
  for (const auto& [s, v] : value) by_dim[s.size() - 1].push_back(s);
  auto index_of = [&](int d) {
    std::map<Splx, int> idx;
    for (std::size_t i = 0; i < by_dim[d].size(); ++i) idx[by_dim[d][i]] = static_cast<int>(i);
    return idx;
  };
  const std::vector<std::map<Splx, int>> idx = {index_of(0), index_of(1), index_of(2)};

  auto faces = [](const Splx& s) {
    std::vector<Splx> out;
    if (s.size() == 1) return out;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Splx f;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) f.push_back(s[i]);
      out.push_back(f);
    }
    return out;
  };

  // rank of boundary d_k restricted to simplices with value <= t[a]; rows optionally
  // restricted to (k-1)-simplices with value > t[b] (the complement of K_b)
  auto boundary_rank = [&](int k, int a, int b_out) {
    if (k == 0 || k > 2) return std::size_t{0};
    std::vector<std::vector<int>> cols;
    for (const auto& s : by_dim[k]) {
      if (value.at(s) > t[a]) continue;
      std::vector<int> col;
      for (const auto& f : faces(s)) {
        if (b_out >= 0 && value.at(f) <= t[b_out]) continue;
        col.push_back(idx[k - 1].at(f));
      }
      cols.push_back(col);
    }
    return gf2_rank(cols, static_cast<int>(by_dim[k - 1].size()));
  };
  auto count = [&](int k, int a) {
    std::size_t c = 0;
    for (const auto& s : by_dim[k]) c += value.at(s) <= t[a];
    return c;
  };

  // beta[k][i][j], i <= j
  std::vector<std::vector<std::vector<long>>> beta(2, std::vector<std::vector<long>>(m, std::vector<long>(m, 0)));
  for (int k = 0; k <= 1; ++k) {
    for (int i = 0; i < m; ++i) {
      const long z = static_cast<long>(count(k, i) - boundary_rank(k, i, -1));
      for (int j = i; j < m; ++j) {
        const long bj = static_cast<long>(boundary_rank(k + 1, j, -1));
        const long outside = static_cast<long>(boundary_rank(k + 1, j, i));
        beta[k][i][j] = z - (bj - outside);
      }
    }
  }
  auto B = [&](int k, int i, int j) -> long { return i < 0 ? 0 : beta[k][i][j]; };

  std::vector<Bar> bars;
  for (int k = 0; k <= 1; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        const long mu = B(k, i, j - 1) - B(k, i - 1, j - 1) - B(k, i, j) + B(k, i - 1, j);
        for (long r = 0; r < mu; ++r) bars.push_back({k, t[i], t[j]});
      }
      const long ess = B(k, i, m - 1) - B(k, i - 1, m - 1);
      for (long r = 0; r < ess; ++r) bars.push_back({k, t[i], std::numeric_limits<double>::infinity()});
    }
  }
  std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
    return std::tie(a.dim, a.birth, a.death) < std::tie(b.dim, b.birth, b.death);
  });
  return bars;
}

inline std::vector<Pt> random_cloud(std::mt19937_64& rng, int n, double extent) {
  std::uniform_real_distribution<double> u(0.0, extent);
  std::vector<Pt> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

// Plain Gaussian elimination with partial pivoting on a dense row-major system.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

}  // namespace oracle
