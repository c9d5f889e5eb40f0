#include "tunnelph/topology.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "tunnelph/errors.hpp"

namespace tunnelph {

PointCloud::PointCloud(std::vector<BlockPoint> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw InputError("point cloud is empty");
  }
  std::unordered_set<std::string> seen;
  for (const auto& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InputError("non-finite coordinate for block '" + p.block_id + "'");
    }
    if (!seen.insert(p.block_id).second) {
      throw InputError("duplicate block_id '" + p.block_id + "'");
    }
  }
}

DistanceMatrix compute_distance_matrix(const PointCloud& pc) {
  DistanceMatrix dm(pc.size());
  for (std::size_t i = 0; i < pc.size(); ++i) {
    for (std::size_t j = i + 1; j < pc.size(); ++j) {
      dm.set(i, j, std::hypot(pc[i].x - pc[j].x, pc[i].y - pc[j].y));
    }
  }
  return dm;
}

bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dim != b.dim) return a.dim < b.dim;
  return std::lexicographical_compare(a.vertex.begin(), a.vertex.begin() + a.dim + 1,
                                      b.vertex.begin(), b.vertex.begin() + b.dim + 1);
}

Filtration::Filtration(std::vector<Simplex> simplices, double max_filtration, int max_dim)
    : simplices_(std::move(simplices)), max_filtration_(max_filtration), max_dim_(max_dim) {
  std::sort(simplices_.begin(), simplices_.end(), filtration_less);
}

Filtration build_vr_filtration(const DistanceMatrix& dm, double max_filtration, int max_dim) {
  if (!(max_filtration > 0.0) || std::isnan(max_filtration)) {
    throw InputError("max_filtration must be positive");
  }
  if (max_dim < 0 || max_dim > 2) {
    throw InputError("max_dim must be 0, 1 or 2");
  }
  const auto n = static_cast<VertexIndex>(dm.size());
  std::vector<Simplex> out;
  out.reserve(n);
  for (VertexIndex i = 0; i < n; ++i) {
    out.push_back({{i, 0, 0}, 0, 0.0});
  }
  if (max_dim >= 1) {
    for (VertexIndex i = 0; i < n; ++i) {
      for (VertexIndex j = i + 1; j < n; ++j) {
        if (dm(i, j) <= max_filtration) out.push_back({{i, j, 0}, 1, dm(i, j)});
      }
    }
  }
  if (max_dim >= 2) {
    for (VertexIndex i = 0; i < n; ++i) {
      for (VertexIndex j = i + 1; j < n; ++j) {
        if (dm(i, j) > max_filtration) continue;
        for (VertexIndex k = j + 1; k < n; ++k) {
          if (dm(i, k) > max_filtration || dm(j, k) > max_filtration) continue;
          out.push_back({{i, j, k}, 2, std::max({dm(i, j), dm(i, k), dm(j, k)})});
        }
      }
    }
  }
  return Filtration(std::move(out), max_filtration, max_dim);
}

Chain::Chain(std::vector<Key> simplices) {
  for (auto& k : simplices) std::sort(k.begin(), k.end());
  std::sort(simplices.begin(), simplices.end());
  // pairs of equal terms cancel
  for (std::size_t i = 0; i < simplices.size();) {
    std::size_t j = i;
    while (j < simplices.size() && simplices[j] == simplices[i]) ++j;
    if ((j - i) % 2 == 1) terms_.push_back(std::move(simplices[i]));
    i = j;
  }
}

Chain& Chain::operator+=(const Chain& other) {
  std::vector<Key> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(),
                                other.terms_.end(), std::back_inserter(merged));
  terms_ = std::move(merged);
  return *this;
}

bool Chain::contains(const Key& k) const {
  return std::binary_search(terms_.begin(), terms_.end(), k);
}

Chain boundary(std::span<const VertexIndex> simplex) {
  std::vector<Chain::Key> faces;
  if (simplex.size() < 2) return {};
  for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
    Chain::Key face;
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i != drop) face.push_back(simplex[i]);
    }
    faces.push_back(std::move(face));
  }
  return Chain(std::move(faces));
}

Chain boundary(const Simplex& s) { return boundary(s.vertices()); }

Chain boundary(const Chain& c) {
  Chain out;
  for (const auto& term : c.terms()) out += boundary(std::span<const VertexIndex>(term));
  return out;
}

Barcode::Barcode(std::vector<PersistencePair> pairs, double max_filtration)
    : pairs_(std::move(pairs)), max_filtration_(max_filtration) {
  if (!(max_filtration > 0.0)) {
    throw InputError("barcode max_filtration must be positive");
  }
  for (const auto& p : pairs_) {
    if (p.dim < 0 || std::isnan(p.birth) || std::isnan(p.death) || !std::isfinite(p.birth)) {
      throw InputError("invalid persistence pair");
    }
    if (p.birth < 0.0) throw InputError("persistence pair with negative birth");
    if (p.death < p.birth) throw InputError("persistence pair with death < birth");
  }
}

std::vector<PersistencePair> Barcode::bars(int dim) const {
  std::vector<PersistencePair> out;
  std::copy_if(pairs_.begin(), pairs_.end(), std::back_inserter(out),
               [dim](const PersistencePair& p) { return p.dim == dim; });
  return out;
}

namespace {

struct ArrayHash {
  std::size_t operator()(const std::array<VertexIndex, 3>& a) const noexcept {
    std::size_t h = a[0];
    h = h * 1000003u ^ a[1];
    h = h * 1000003u ^ a[2];
    return h;
  }
};

constexpr VertexIndex kNoVertex = static_cast<VertexIndex>(-1);

std::array<VertexIndex, 3> padded_key(std::span<const VertexIndex> vertices) {
  std::array<VertexIndex, 3> key{kNoVertex, kNoVertex, kNoVertex};
  std::copy(vertices.begin(), vertices.end(), key.begin());
  return key;
}

using Column = std::vector<std::size_t>;  // sorted row indices with coefficient 1

void add_column(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

Barcode compute_persistence(const Filtration& f, PersistenceOptions opts) {
  const auto simplices = f.simplices();
  const std::size_t n = simplices.size();

  std::unordered_map<std::array<VertexIndex, 3>, std::size_t, ArrayHash> position;
  position.reserve(n);
  for (std::size_t i = 0; i < n; ++i) position.emplace(padded_key(simplices[i].vertices()), i);

  std::vector<Column> columns(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (simplices[j].dim == 0) continue;
    const Chain faces = boundary(simplices[j]);
    for (const auto& face : faces.terms()) {
      columns[j].push_back(position.at(padded_key(face)));
    }
    std::sort(columns[j].begin(), columns[j].end());
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> column_with_low(n, kNone);
  std::vector<bool> paired(n, false);
  std::vector<PersistencePair> pairs;
  Column scratch;

  for (std::size_t j = 0; j < n; ++j) {
    Column& col = columns[j];
    while (!col.empty() && column_with_low[col.back()] != kNone) {
      add_column(col, columns[column_with_low[col.back()]], scratch);
    }
    if (col.empty()) continue;
    const std::size_t low = col.back();
    column_with_low[low] = j;
    paired[low] = true;
    paired[j] = true;
    const Simplex& creator = simplices[low];
    if (creator.dim > 1) continue;
    const double birth = creator.value;
    const double death = simplices[j].value;
    if (birth == death && !opts.keep_zero_persistence) continue;
    pairs.push_back({creator.dim, birth, death});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!paired[i] && simplices[i].dim <= 1) {
      pairs.push_back({simplices[i].dim, simplices[i].value, kInfinity});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return Barcode(std::move(pairs), f.max_filtration());
}

namespace {

void check_scale(const Barcode& b, double scale) {
  if (std::isnan(scale) || scale < 0.0) throw QueryError("scale must be non-negative");
  if (scale > b.max_filtration()) {
    throw QueryError("scale " + std::to_string(scale) + " exceeds max filtration " +
                     std::to_string(b.max_filtration()));
  }
}

}  // namespace

BettiNumbers betti_numbers(const Barcode& b, double scale) {
  check_scale(b, scale);
  BettiNumbers out;
  for (const auto& p : b.pairs()) {
    if (p.birth <= scale && scale < p.death) {
      if (p.dim == 0) ++out.b0;
      else if (p.dim == 1) ++out.b1;
    }
  }
  return out;
}

BettiNumbers persistent_betti(const Barcode& b, double scale, double p) {
  if (std::isnan(p) || p < 0.0) throw InputError("persistence window p must be non-negative");
  check_scale(b, scale);
  check_scale(b, scale + p);
  BettiNumbers out;
  for (const auto& bar : b.pairs()) {
    if (bar.birth <= scale && bar.death > scale + p) {
      if (bar.dim == 0) ++out.b0;
      else if (bar.dim == 1) ++out.b1;
    }
  }
  return out;
}

}  // namespace tunnelph
