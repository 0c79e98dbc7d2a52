#include "piuniv/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "piuniv/geometry.hpp"
#include "piuniv/io.hpp"

namespace piuniv {

namespace {

struct CellHash {
  std::size_t operator()(const std::vector<std::int64_t>& c) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : c) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

std::vector<std::vector<std::uint32_t>> neighbor_graph(const PointCloud& cloud,
                                                       double cutoff) {
  const std::size_t n = cloud.size();
  const int d = cloud.d;
  std::vector<std::vector<std::uint32_t>> adj(n);
  if (n == 0 || cutoff <= 0.0) return adj;
  if (!std::isfinite(cutoff)) {
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    return adj;
  }

  std::unordered_map<std::vector<std::int64_t>, std::vector<std::uint32_t>,
                     CellHash>
      grid;
  std::vector<std::int64_t> cell(d);
  auto cell_of = [&](const double* p) {
    for (int i = 0; i < d; ++i)
      cell[i] = static_cast<std::int64_t>(std::floor(p[i] / cutoff));
    return cell;
  };
  for (std::size_t i = 0; i < n; ++i)
    grid[cell_of(cloud.p(i))].push_back(static_cast<std::uint32_t>(i));

  const double cut2 = cutoff * cutoff;
  std::vector<std::int64_t> nb(d);
  for (std::size_t i = 0; i < n; ++i) {
    cell_of(cloud.p(i));
    std::vector<std::int64_t> base = cell;
    // scan the 3^d neighborhood
    std::vector<int> off(d, -1);
    for (;;) {
      for (int t = 0; t < d; ++t) nb[t] = base[t] + off[t];
      auto it = grid.find(nb);
      if (it != grid.end()) {
        for (std::uint32_t j : it->second) {
          if (j <= i) continue;
          if (dist2(cloud.p(i), cloud.p(j), d) <= cut2) {
            adj[i].push_back(j);
            adj[j].push_back(static_cast<std::uint32_t>(i));
          }
        }
      }
      int t = 0;
      while (t < d && off[t] == 1) off[t++] = -1;
      if (t == d) break;
      ++off[t];
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

void FilteredComplex::sort_canonical() {
  const std::size_t m = size();
  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto vs = [&](std::size_t i) { return vertices_of(i); };
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (value[a] != value[b]) return value[a] < value[b];
    if (dim[a] != dim[b]) return dim[a] < dim[b];
    auto va = vs(a), vb = vs(b);
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(),
                                        vb.end());
  });
  FilteredComplex out;
  out.flavor = flavor;
  out.d = d;
  out.r_max = r_max;
  out.max_dim = max_dim;
  out.n_points = n_points;
  out.value.reserve(m);
  out.dim.reserve(m);
  out.verts.reserve(verts.size());
  out.vbegin.reserve(m + 1);
  out.vbegin.push_back(0);
  for (auto i : order) {
    out.value.push_back(value[i]);
    out.dim.push_back(dim[i]);
    auto v = vs(i);
    out.verts.insert(out.verts.end(), v.begin(), v.end());
    out.vbegin.push_back(out.verts.size());
  }
  *this = std::move(out);
}

namespace {

void push_simplex(FilteredComplex& fc, std::span<const std::uint32_t> v,
                  double value) {
  fc.value.push_back(value);
  fc.dim.push_back(static_cast<std::int8_t>(v.size() - 1));
  fc.verts.insert(fc.verts.end(), v.begin(), v.end());
  fc.vbegin.push_back(fc.verts.size());
}

// depth-first clique expansion; value_fn(cur, prefix_value) returns the
// filtration value of the candidate simplex or a negative number to reject.
template <typename ValueFn>
void expand_rec(const std::vector<std::vector<std::uint32_t>>& adj, int max_dim,
                ValueFn& value_fn, FilteredComplex& fc,
                std::vector<std::uint32_t>& cur, double prefix_value,
                std::span<const std::uint32_t> cand) {
  for (std::size_t ci = 0; ci < cand.size(); ++ci) {
    const std::uint32_t j = cand[ci];
    cur.push_back(j);
    double val = value_fn(cur, prefix_value);
    if (val >= 0.0) {
      push_simplex(fc, cur, val);
      if (static_cast<int>(cur.size()) - 1 < max_dim) {
        std::vector<std::uint32_t> next;
        const auto& aj = adj[j];
        for (std::size_t t = ci + 1; t < cand.size(); ++t)
          if (std::binary_search(aj.begin(), aj.end(), cand[t]))
            next.push_back(cand[t]);
        expand_rec(adj, max_dim, value_fn, fc, cur, val, next);
      }
    }
    cur.pop_back();
  }
}

template <typename ValueFn>
void expand(const std::vector<std::vector<std::uint32_t>>& adj, int max_dim,
            ValueFn&& value_fn, FilteredComplex& fc) {
  const std::size_t n = adj.size();
  std::vector<std::uint32_t> cur;
  for (std::uint32_t i = 0; i < n; ++i) {
    push_simplex(fc, std::span(&i, 1), 0.0);
    if (max_dim < 1) continue;
    cur.assign(1, i);
    auto lo = std::upper_bound(adj[i].begin(), adj[i].end(), i);
    std::span<const std::uint32_t> cand(&*lo, adj[i].end() - lo);
    if (lo == adj[i].end()) cand = {};
    expand_rec(adj, max_dim, value_fn, fc, cur, 0.0, cand);
  }
}

}  // namespace

FilteredComplex build_rips(const PointCloud& cloud, double r_max, int max_dim) {
  if (max_dim < 1) throw std::invalid_argument("build_rips: max_dim >= 1");
  FilteredComplex fc;
  fc.flavor = Flavor::rips;
  fc.d = cloud.d;
  fc.r_max = r_max;
  fc.max_dim = max_dim;
  fc.n_points = cloud.size();
  auto adj = neighbor_graph(cloud, r_max);
  // Rips value: max pairwise distance = max(value(prefix), dists to the new vertex)
  auto value_fn = [&](const std::vector<std::uint32_t>& cur,
                      double prefix) -> double {
    double v = prefix;
    const std::uint32_t last = cur.back();
    for (std::size_t t = 0; t + 1 < cur.size(); ++t)
      v = std::max(v, dist(cloud.p(cur[t]), cloud.p(last), cloud.d));
    return v <= fc.r_max ? v : -1.0;
  };
  expand(adj, max_dim, value_fn, fc);
  fc.sort_canonical();
  return fc;
}

FilteredComplex build_cech(const PointCloud& cloud, double r_max, int max_dim) {
  if (max_dim < 1) throw std::invalid_argument("build_cech: max_dim >= 1");
  FilteredComplex fc;
  fc.flavor = Flavor::cech;
  fc.d = cloud.d;
  fc.r_max = r_max;
  fc.max_dim = max_dim;
  fc.n_points = cloud.size();
  auto adj = neighbor_graph(cloud, 2.0 * r_max);
  std::vector<const double*> pts;
  auto value_fn = [&](const std::vector<std::uint32_t>& cur,
                      double /*prefix*/) -> double {
    double v;
    if (cur.size() == 2) {
      v = 0.5 * dist(cloud.p(cur[0]), cloud.p(cur[1]), cloud.d);
    } else {
      pts.clear();
      for (auto i : cur) pts.push_back(cloud.p(i));
      v = geom::meb_radius(pts.data(), static_cast<int>(pts.size()), cloud.d);
    }
    return v <= fc.r_max ? v : -1.0;
  };
  expand(adj, max_dim, value_fn, fc);
  fc.sort_canonical();
  return fc;
}

LinkComplex link_of_edge(const PointCloud& cloud, std::uint32_t u,
                         std::uint32_t v, double rho, int max_dim) {
  LinkComplex link;
  const int d = cloud.d;
  PointCloud sub;
  sub.d = d;
  const double rho2 = rho * rho;
  for (std::uint32_t z = 0; z < cloud.size(); ++z) {
    if (z == u || z == v) continue;
    if (dist2(cloud.p(z), cloud.p(u), d) <= rho2 &&
        dist2(cloud.p(z), cloud.p(v), d) <= rho2) {
      link.orig_ids.push_back(z);
      auto p = cloud.point(z);
      sub.xs.insert(sub.xs.end(), p.begin(), p.end());
    }
  }
  link.fc = build_rips(sub, rho, std::max(1, max_dim));
  return link;
}

bool contains_simplex(const FilteredComplex& fc,
                      std::span<const std::uint32_t> verts) {
  for (std::size_t i = 0; i < fc.size(); ++i) {
    auto vi = fc.vertices_of(i);
    if (vi.size() == verts.size() &&
        std::equal(vi.begin(), vi.end(), verts.begin()))
      return true;
  }
  return false;
}

FilteredComplex insert_simplex(const FilteredComplex& fc, const Simplex& sigma,
                               double value) {
  if (!std::is_sorted(sigma.v.begin(), sigma.v.end()) ||
      std::adjacent_find(sigma.v.begin(), sigma.v.end()) != sigma.v.end())
    throw std::invalid_argument("insert_simplex: vertices must be strictly increasing");
  if (contains_simplex(fc, sigma.v))
    throw std::invalid_argument("insert_simplex: simplex already present");
  if (sigma.v.size() > 1) {
    // every proper face must exist with value <= the inserted value
    std::vector<std::uint32_t> face(sigma.v.size() - 1);
    for (std::size_t skip = 0; skip < sigma.v.size(); ++skip) {
      std::size_t t = 0;
      for (std::size_t i = 0; i < sigma.v.size(); ++i)
        if (i != skip) face[t++] = sigma.v[i];
      bool ok = false;
      for (std::size_t i = 0; i < fc.size(); ++i) {
        auto vi = fc.vertices_of(i);
        if (vi.size() == face.size() &&
            std::equal(vi.begin(), vi.end(), face.begin())) {
          ok = fc.value[i] <= value;
          break;
        }
      }
      if (!ok)
        throw std::invalid_argument(
            "insert_simplex: missing or later-valued face");
    }
  }
  FilteredComplex out = fc;
  push_simplex(out, sigma.v, value);
  out.max_dim = std::max(out.max_dim, sigma.dim());
  out.sort_canonical();
  return out;
}

void dump(const FilteredComplex& fc, std::ostream& os) {
  for (std::size_t i = 0; i < fc.size(); ++i) {
    os << io::fmt(fc.value[i]) << ' ' << static_cast<int>(fc.dim[i]);
    for (auto v : fc.vertices_of(i)) os << ' ' << v;
    os << '\n';
  }
}

PointGrid::PointGrid(const PointCloud& cloud, double cell)
    : cloud_(cloud), cell_(cell) {
  const int d = cloud.d;
  const std::size_t n = cloud.size();
  mins_.assign(d, 0);
  dims_.assign(d, 1);
  if (n == 0) return;
  std::vector<std::int64_t> maxs(d);
  for (int t = 0; t < d; ++t) {
    double lo = cloud.p(0)[t], hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, cloud.p(i)[t]);
      hi = std::max(hi, cloud.p(i)[t]);
    }
    mins_[t] = static_cast<std::int64_t>(std::floor(lo / cell_));
    maxs[t] = static_cast<std::int64_t>(std::floor(hi / cell_));
    dims_[t] = maxs[t] - mins_[t] + 1;
  }
  std::int64_t total = 1;
  for (int t = 0; t < d; ++t) total *= dims_[t];
  buckets_.assign(static_cast<std::size_t>(total), {});
  for (std::size_t i = 0; i < n; ++i)
    buckets_[bucket_index(cloud.p(i))].push_back(
        static_cast<std::uint32_t>(i));
}

std::int64_t PointGrid::bucket_index(const double* p) const {
  std::int64_t idx = 0;
  for (int t = cloud_.d - 1; t >= 0; --t) {
    std::int64_t c = static_cast<std::int64_t>(std::floor(p[t] / cell_)) -
                     mins_[t];
    c = std::clamp<std::int64_t>(c, 0, dims_[t] - 1);
    idx = idx * dims_[t] + c;
  }
  return idx;
}

void PointGrid::query_ball(const double* center, double r,
                           std::vector<std::uint32_t>& out) const {
  const int d = cloud_.d;
  const double r2 = r * r;
  std::vector<std::int64_t> lo(d), hi(d), cur(d);
  for (int t = 0; t < d; ++t) {
    lo[t] = std::max<std::int64_t>(
        static_cast<std::int64_t>(std::floor((center[t] - r) / cell_)) -
            mins_[t],
        0);
    hi[t] = std::min<std::int64_t>(
        static_cast<std::int64_t>(std::floor((center[t] + r) / cell_)) -
            mins_[t],
        dims_[t] - 1);
    if (lo[t] > hi[t]) return;
    cur[t] = lo[t];
  }
  for (;;) {
    std::int64_t idx = 0;
    for (int t = d - 1; t >= 0; --t) idx = idx * dims_[t] + cur[t];
    for (std::uint32_t i : buckets_[static_cast<std::size_t>(idx)])
      if (dist2(cloud_.p(i), center, d) <= r2) out.push_back(i);
    int t = 0;
    while (t < d && cur[t] == hi[t]) cur[t] = lo[t], ++t;
    if (t == d) break;
    ++cur[t];
  }
}

bool PointGrid::ball_contains_other(const double* center, double r_strict,
                                    std::uint32_t skip_a,
                                    std::uint32_t skip_b) const {
  const int d = cloud_.d;
  const double r2 = r_strict * r_strict;
  std::vector<std::int64_t> lo(d), hi(d), cur(d);
  for (int t = 0; t < d; ++t) {
    lo[t] = std::max<std::int64_t>(
        static_cast<std::int64_t>(std::floor((center[t] - r_strict) / cell_)) -
            mins_[t],
        0);
    hi[t] = std::min<std::int64_t>(
        static_cast<std::int64_t>(std::floor((center[t] + r_strict) / cell_)) -
            mins_[t],
        dims_[t] - 1);
    if (lo[t] > hi[t]) return false;
    cur[t] = lo[t];
  }
  for (;;) {
    std::int64_t idx = 0;
    for (int t = d - 1; t >= 0; --t) idx = idx * dims_[t] + cur[t];
    for (std::uint32_t i : buckets_[static_cast<std::size_t>(idx)]) {
      if (i == skip_a || i == skip_b) continue;
      if (dist2(cloud_.p(i), center, d) < r2) return true;
    }
    int t = 0;
    while (t < d && cur[t] == hi[t]) cur[t] = lo[t], ++t;
    if (t == d) break;
    ++cur[t];
  }
  return false;
}

}  // namespace piuniv
