#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "piuniv/points.hpp"

namespace piuniv {

enum class Flavor { cech, rips };

struct Simplex {
  std::vector<std::uint32_t> v;  // strictly increasing vertex ids
  int dim() const { return static_cast<int>(v.size()) - 1; }
};

// Totally ordered filtration truncated at r_max and dimension max_dim.
// Simplices are stored in the total order (value, dim, lex vertices); faces
// always precede cofaces.
struct FilteredComplex {
  Flavor flavor = Flavor::rips;
  int d = 0;
  double r_max = 0.0;
  int max_dim = 1;
  std::size_t n_points = 0;

  std::vector<double> value;
  std::vector<std::int8_t> dim;
  std::vector<std::uint32_t> verts;
  std::vector<std::uint64_t> vbegin;  // size() + 1 offsets into verts

  std::size_t size() const { return value.size(); }
  std::span<const std::uint32_t> vertices_of(std::size_t i) const {
    return {verts.data() + vbegin[i],
            static_cast<std::size_t>(vbegin[i + 1] - vbegin[i])};
  }
  // re-establish the canonical total order after edits
  void sort_canonical();
};

FilteredComplex build_rips(const PointCloud& cloud, double r_max, int max_dim);
FilteredComplex build_cech(const PointCloud& cloud, double r_max, int max_dim);

// Rips sub-complex on the common neighbors of (u,v) at radius rho, i.e. the
// combinatorial link of the edge. orig_ids maps link vertices back to cloud
// indices.
struct LinkComplex {
  FilteredComplex fc;
  std::vector<std::uint32_t> orig_ids;
};
LinkComplex link_of_edge(const PointCloud& cloud, std::uint32_t u,
                         std::uint32_t v, double rho, int max_dim);

// fc ∪ sigma at the given filtration value, re-sorted into the canonical
// order. Throws std::invalid_argument unless all proper faces of sigma are
// present with values <= value and sigma itself is absent.
FilteredComplex insert_simplex(const FilteredComplex& fc, const Simplex& sigma,
                               double value);

bool contains_simplex(const FilteredComplex& fc,
                      std::span<const std::uint32_t> verts);

// one simplex per line: value dim v0 v1 ...
void dump(const FilteredComplex& fc, std::ostream& os);

// neighbor lists of the distance graph at the given cutoff (grid-bucketed;
// an infinite cutoff yields the complete graph)
std::vector<std::vector<std::uint32_t>> neighbor_graph(const PointCloud& cloud,
                                                       double cutoff);

// bucket grid for ball queries
class PointGrid {
 public:
  PointGrid(const PointCloud& cloud, double cell);
  // indices of points with |p - center| <= r (squared compare), appended
  void query_ball(const double* center, double r,
                  std::vector<std::uint32_t>& out) const;
  // any cloud point strictly inside the ball, excluding the listed ids
  bool ball_contains_other(const double* center, double r_strict,
                           std::span<const std::uint32_t> skip) const;

 private:
  const PointCloud& cloud_;
  double cell_;
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::vector<std::int64_t> mins_;
  std::vector<std::int64_t> dims_;
  std::int64_t bucket_index(const double* p) const;
};

}  // namespace piuniv
