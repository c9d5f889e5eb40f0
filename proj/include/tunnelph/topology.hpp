#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace tunnelph {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultMaxFiltration = 30.0;

struct BlockPoint {
  std::string block_id;
  double x = 0.0;
  double y = 0.0;

  bool operator==(const BlockPoint&) const = default;
};

/// Labeled 2-D block centroids of one snapshot. Validated on construction:
/// at least one point, unique ids, finite coordinates.
class PointCloud {
public:
  explicit PointCloud(std::vector<BlockPoint> points);

  std::size_t size() const noexcept { return points_.size(); }
  const BlockPoint& operator[](std::size_t i) const { return points_[i]; }
  std::span<const BlockPoint> points() const noexcept { return points_; }

  bool operator==(const PointCloud&) const = default;

private:
  std::vector<BlockPoint> points_;
};

/// Dense symmetric matrix of pairwise Euclidean distances.
class DistanceMatrix {
public:
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

private:
  std::size_t n_;
  std::vector<double> d_;
};

DistanceMatrix compute_distance_matrix(const PointCloud& pc);

using VertexIndex = std::uint32_t;

/// Simplex of dimension 0..2 with its Vietoris-Rips filtration value.
struct Simplex {
  std::array<VertexIndex, 3> vertex{};  // sorted ascending, first dim+1 entries used
  int dim = 0;
  double value = 0.0;

  std::span<const VertexIndex> vertices() const noexcept {
    return {vertex.data(), static_cast<std::size_t>(dim + 1)};
  }
};

/// Filtration order: (value, dim, lexicographic vertices).
bool filtration_less(const Simplex& a, const Simplex& b);

class Filtration {
public:
  Filtration(std::vector<Simplex> simplices, double max_filtration, int max_dim);

  std::span<const Simplex> simplices() const noexcept { return simplices_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  const Simplex& operator[](std::size_t i) const { return simplices_[i]; }
  double max_filtration() const noexcept { return max_filtration_; }
  int max_dim() const noexcept { return max_dim_; }

private:
  std::vector<Simplex> simplices_;
  double max_filtration_;
  int max_dim_;
};

/// Vertices at 0, edges with d <= max_filtration, triangles whose three edges are present.
Filtration build_vr_filtration(const DistanceMatrix& dm, double max_filtration = kDefaultMaxFiltration,
                               int max_dim = 2);

/// A chain over Z2: the set of simplices with coefficient 1. Only vertex sets
/// matter, filtration values are not part of chain identity.
class Chain {
public:
  using Key = std::vector<VertexIndex>;

  Chain() = default;
  explicit Chain(std::vector<Key> simplices);

  /// Z2 addition (symmetric difference).
  Chain& operator+=(const Chain& other);
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }

  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool contains(const Key& k) const;
  const std::vector<Key>& terms() const noexcept { return terms_; }

  bool operator==(const Chain&) const = default;

private:
  std::vector<Key> terms_;  // sorted, unique
};

/// Z2 boundary of one simplex: its (dim-1)-faces. Empty for vertices.
Chain boundary(std::span<const VertexIndex> simplex);
Chain boundary(const Simplex& s);
/// Boundary extended linearly to chains.
Chain boundary(const Chain& c);

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;

  double length() const noexcept { return death - birth; }
  /// Still alive at the end of the filtration.
  bool censored() const noexcept { return death == kInfinity; }

  bool operator==(const PersistencePair&) const = default;
};

class Barcode {
public:
  Barcode() = default;
  Barcode(std::vector<PersistencePair> pairs, double max_filtration);

  std::span<const PersistencePair> pairs() const noexcept { return pairs_; }
  double max_filtration() const noexcept { return max_filtration_; }
  std::vector<PersistencePair> bars(int dim) const;

  bool operator==(const Barcode&) const = default;

private:
  std::vector<PersistencePair> pairs_;
  double max_filtration_ = kDefaultMaxFiltration;
};

struct PersistenceOptions {
  bool keep_zero_persistence = false;
};

/// H0 and H1 barcode by Z2 column reduction of the filtered boundary matrix.
Barcode compute_persistence(const Filtration& f, PersistenceOptions opts = {});

struct BettiNumbers {
  std::size_t b0 = 0;
  std::size_t b1 = 0;

  bool operator==(const BettiNumbers&) const = default;
};

/// Number of bars with birth <= scale < death. Throws QueryError outside [0, F].
BettiNumbers betti_numbers(const Barcode& b, double scale);

/// Number of bars alive over the whole window [scale, scale + p].
BettiNumbers persistent_betti(const Barcode& b, double scale, double p);

}  // namespace tunnelph
