#include "piuniv/persistence.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <map>
#include <stdexcept>

namespace piuniv {

namespace {

constexpr int kMaxVerts = 8;
using Key = std::array<std::uint32_t, kMaxVerts>;

Key key_of(std::span<const std::uint32_t> v) {
  Key k{};
  k.fill(0xffffffffu);
  std::copy(v.begin(), v.end(), k.begin());
  return k;
}

// per-dimension sorted (vertex key -> order index) tables for face lookup
struct FaceIndex {
  std::vector<std::vector<std::pair<Key, std::uint32_t>>> by_dim;

  explicit FaceIndex(const FilteredComplex& fc, int up_to_dim) {
    by_dim.resize(up_to_dim + 1);
    for (std::size_t i = 0; i < fc.size(); ++i) {
      int p = fc.dim[i];
      if (p <= up_to_dim)
        by_dim[p].emplace_back(key_of(fc.vertices_of(i)),
                               static_cast<std::uint32_t>(i));
    }
    for (auto& v : by_dim) std::sort(v.begin(), v.end());
  }

  std::int64_t find(int p, const Key& k) const {
    const auto& v = by_dim[p];
    auto it = std::lower_bound(v.begin(), v.end(), k,
                               [](const auto& a, const Key& b) {
                                 return a.first < b;
                               });
    if (it == v.end() || it->first != k) return kNone;
    return it->second;
  }
};

void xor_merge(std::vector<std::uint32_t>& a,
               const std::vector<std::uint32_t>& b,
               std::vector<std::uint32_t>& tmp) {
  tmp.clear();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      tmp.push_back(a[i++]);
    else if (b[j] < a[i])
      tmp.push_back(b[j++]);
    else {
      ++i;
      ++j;
    }
  }
  tmp.insert(tmp.end(), a.begin() + i, a.end());
  tmp.insert(tmp.end(), b.begin() + j, b.end());
  a.swap(tmp);
}

}  // namespace

Reduction reduce(const FilteredComplex& fc) {
  const std::size_t m = fc.size();
  Reduction out;
  out.pairing.positive.assign(m, 1);
  out.pairing.partner.assign(m, kNone);
  int top = 0;
  for (std::size_t i = 0; i < m; ++i) top = std::max(top, int(fc.dim[i]));
  if (top + 1 >= kMaxVerts)
    throw std::invalid_argument("reduce: simplex dimension above supported cap");
  out.dgms.max_dim = top;

  // vertices: the order-first vertex kills the empty simplex (reduced
  // homology); all other vertices are positive.
  bool seen_vertex = false;
  for (std::size_t i = 0; i < m && !seen_vertex; ++i) {
    if (fc.dim[i] == 0) {
      out.pairing.positive[i] = 0;
      seen_vertex = true;
    }
  }

  FaceIndex faces(fc, std::max(0, top - 1));

  // columns of the current dimension, keyed by pivot row
  std::vector<std::int64_t> owner(m, kNone);
  std::vector<std::vector<std::uint32_t>> cols(m);
  std::vector<std::uint32_t> col, tmp;
  std::vector<std::uint8_t> cleared(m, 0);

  for (int p = top; p >= 1; --p) {
    std::vector<std::uint32_t> reduced_this_dim;
    for (std::size_t j = 0; j < m; ++j) {
      if (fc.dim[j] != p || cleared[j]) continue;
      // boundary of j
      auto vj = fc.vertices_of(j);
      col.clear();
      Key face{};
      for (std::size_t skip = 0; skip < vj.size(); ++skip) {
        face.fill(0xffffffffu);
        std::size_t t = 0;
        for (std::size_t a = 0; a < vj.size(); ++a)
          if (a != skip) face[t++] = vj[a];
        std::int64_t fi = faces.find(p - 1, face);
        if (fi == kNone)
          throw std::logic_error("reduce: complex not closed under faces");
        col.push_back(static_cast<std::uint32_t>(fi));
      }
      std::sort(col.begin(), col.end());
      while (!col.empty()) {
        std::uint32_t piv = col.back();
        if (owner[piv] == kNone) break;
        xor_merge(col, cols[owner[piv]], tmp);
      }
      if (col.empty()) continue;  // positive (stays 1)
      std::uint32_t piv = col.back();
      owner[piv] = static_cast<std::int64_t>(j);
      cols[j] = col;
      reduced_this_dim.push_back(static_cast<std::uint32_t>(j));
      out.pairing.positive[j] = 0;
      out.pairing.partner[j] = piv;
      out.pairing.partner[piv] = static_cast<std::int64_t>(j);
    }
    // clearing: pivot rows of this dimension are positive, skip their columns
    for (std::uint32_t j : reduced_this_dim) {
      cleared[static_cast<std::size_t>(out.pairing.partner[j])] = 1;
      cols[j].clear();
      cols[j].shrink_to_fit();
    }
  }

  // diagrams
  for (std::size_t i = 0; i < m; ++i) {
    if (!out.pairing.positive[i]) continue;
    PersistencePair pr;
    pr.dim = fc.dim[i];
    pr.birth = fc.value[i];
    pr.birth_simplex = static_cast<std::uint32_t>(i);
    if (out.pairing.partner[i] != kNone) {
      pr.death_simplex = out.pairing.partner[i];
      pr.death = fc.value[pr.death_simplex];
      if (!(pr.birth < pr.death)) continue;  // zero-persistence, dropped
    }
    out.dgms.pairs.push_back(pr);
  }
  std::sort(out.dgms.pairs.begin(), out.dgms.pairs.end(),
            [](const PersistencePair& a, const PersistencePair& b) {
              if (a.dim != b.dim) return a.dim < b.dim;
              if (a.birth != b.birth) return a.birth < b.birth;
              return a.death < b.death;
            });
  return out;
}

std::vector<PersistencePair> Diagrams::in_dim(int k) const {
  std::vector<PersistencePair> out;
  for (const auto& p : pairs)
    if (p.dim == k) out.push_back(p);
  return out;
}

long reduced_betti(const FilteredComplex& fc, int j) {
  if (fc.size() == 0) return j == -1 ? 1 : 0;
  if (j < 0) return 0;
  auto red = reduce(fc);
  long b = 0;
  for (std::size_t i = 0; i < fc.size(); ++i)
    if (fc.dim[i] == j && red.pairing.positive[i] &&
        red.pairing.partner[i] == kNone)
      ++b;
  return b;
}

PiMeasure pi_measure(const Diagrams& dgms, int k, double r_max) {
  PiMeasure m;
  m.k = k;
  m.r_max = r_max;
  for (const auto& p : dgms.pairs)
    if (p.dim == k && p.finite() && p.death <= r_max)
      m.pi.push_back(p.pi());
  std::sort(m.pi.begin(), m.pi.end());
  m.total = m.pi.size();
  return m;
}

std::size_t pi_count_alpha(const PiMeasure& m, double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("pi_count_alpha: alpha >= 1");
  auto it = std::lower_bound(m.pi.begin(), m.pi.end(), alpha);
  return static_cast<std::size_t>(m.pi.end() - it);
}

double StepCdf::operator()(double x) const {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  return static_cast<double>(it - xs.begin()) / static_cast<double>(total);
}

StepCdf empirical_cdf(const PiMeasure& m) {
  if (m.total == 0)
    throw std::invalid_argument("empirical_cdf: empty measure");
  return StepCdf{m.pi, m.total};
}

std::size_t alpha_persistent_count(const Diagrams& dgms, int k, double alpha,
                                   double r_max) {
  std::size_t c = 0;
  for (const auto& p : dgms.pairs) {
    if (p.dim != k) continue;
    if (!p.finite()) {
      if (r_max == kInf) ++c;  // pi = infinity
      continue;
    }
    if (p.death <= r_max && p.pi() >= alpha) ++c;
  }
  return c;
}

StabilityReport stability_probe(const FilteredComplex& fc, const Simplex& sigma,
                                double value, double alpha, int k,
                                double r_max) {
  StabilityReport rep;
  rep.dim_sigma = sigma.dim();
  rep.cutoff_active = r_max != kInf;
  auto base = reduce(fc);
  auto ins = reduce(insert_simplex(fc, sigma, value));
  long before =
      static_cast<long>(alpha_persistent_count(base.dgms, k, alpha, r_max));
  long after =
      static_cast<long>(alpha_persistent_count(ins.dgms, k, alpha, r_max));
  rep.delta = after - before;
  if (rep.dim_sigma == k && rep.cutoff_active)
    rep.pass = rep.delta == 0;
  else if (rep.dim_sigma == k || rep.dim_sigma == k + 1)
    rep.pass = std::labs(rep.delta) <= 1;
  else
    rep.pass = rep.delta == 0;
  return rep;
}

namespace {

// full pairing of degree-k classes keyed by the birth simplex vertices
struct ClassInfo {
  double birth;
  double death;                 // kInf when unpaired
  std::uint64_t birth_pos;      // order index
  std::uint64_t death_pos;      // ~0 when unpaired
  std::optional<Key> killer;    // vertices of the death simplex
};

std::map<Key, ClassInfo> class_map(const FilteredComplex& fc,
                                   const Reduction& red, int k) {
  std::map<Key, ClassInfo> out;
  for (std::size_t i = 0; i < fc.size(); ++i) {
    if (fc.dim[i] != k || !red.pairing.positive[i]) continue;
    ClassInfo ci;
    ci.birth = fc.value[i];
    ci.birth_pos = i;
    if (red.pairing.partner[i] != kNone) {
      auto pj = static_cast<std::size_t>(red.pairing.partner[i]);
      ci.death = fc.value[pj];
      ci.death_pos = pj;
      ci.killer = key_of(fc.vertices_of(pj));
    } else {
      ci.death = kInf;
      ci.death_pos = ~0ULL;
      ci.killer = std::nullopt;
    }
    out.emplace(key_of(fc.vertices_of(i)), ci);
  }
  return out;
}

}  // namespace

CascadeReport cascade_verify(const FilteredComplex& fc, const Simplex& sigma,
                             double value) {
  CascadeReport rep;
  const int k = sigma.dim() - 1;
  if (k < 0) throw std::invalid_argument("cascade_verify: dim(sigma) >= 1");
  auto fcp = insert_simplex(fc, sigma, value);
  auto base = reduce(fc);
  auto ins = reduce(fcp);

  const Key sigma_key = key_of(sigma.v);
  std::int64_t sigma_pos = kNone;
  for (std::size_t i = 0; i < fcp.size(); ++i)
    if (key_of(fcp.vertices_of(i)) == sigma_key) {
      sigma_pos = static_cast<std::int64_t>(i);
      break;
    }
  rep.sigma_negative = sigma_pos != kNone &&
                       !ins.pairing.positive[static_cast<std::size_t>(sigma_pos)];
  if (!rep.sigma_negative) return rep;  // NotNegative

  auto before = class_map(fc, base, k);
  auto after = class_map(fcp, ins, k);

  struct CascadePoint {
    Key birth_key;
    ClassInfo old_info;
    ClassInfo new_info;
  };
  std::vector<CascadePoint> cascade;
  for (const auto& [key, oldi] : before) {
    auto it = after.find(key);
    if (it == after.end())
      throw std::logic_error("cascade_verify: class lost across insertion");
    const auto& newi = it->second;
    bool changed = oldi.killer.has_value() != newi.killer.has_value() ||
                   (oldi.killer && *oldi.killer != *newi.killer);
    if (changed) cascade.push_back({key, oldi, it->second});
  }
  rep.cascade_size = cascade.size();
  // decreasing birth, in the total order of the extended filtration
  std::sort(cascade.begin(), cascade.end(),
            [](const CascadePoint& a, const CascadePoint& b) {
              return a.new_info.birth_pos > b.new_info.birth_pos;
            });
  if (cascade.empty()) {
    rep.order_a = rep.kills_b = rep.shift_c = rep.nested = true;
    rep.pass = true;
    return rep;
  }
  // (A): w(sigma) <= d_1 <= ... <= d_m on values, strictly increasing in the
  // total order
  rep.order_a = value <= cascade[0].old_info.death;
  for (std::size_t j = 0; j + 1 < cascade.size() && rep.order_a; ++j)
    rep.order_a = cascade[j].old_info.death <= cascade[j + 1].old_info.death &&
                  cascade[j].old_info.death_pos < cascade[j + 1].old_info.death_pos;
  // (B): the largest-birth class is now killed by sigma
  rep.kills_b = cascade[0].new_info.killer.has_value() &&
                *cascade[0].new_info.killer == sigma_key;
  // (C): new killer of gamma_j is the old killer of gamma_{j-1}
  rep.shift_c = true;
  for (std::size_t j = 1; j < cascade.size() && rep.shift_c; ++j) {
    const auto& exp = cascade[j - 1].old_info.killer;
    const auto& got = cascade[j].new_info.killer;
    rep.shift_c = exp.has_value() == got.has_value() &&
                  (!exp.has_value() || *exp == *got);
  }
  // nesting of the old intervals
  rep.nested = true;
  for (std::size_t j = 0; j + 1 < cascade.size() && rep.nested; ++j)
    rep.nested = cascade[j].old_info.birth >= cascade[j + 1].old_info.birth &&
                 cascade[j].old_info.death <= cascade[j + 1].old_info.death;
  rep.pass = rep.order_a && rep.kills_b && rep.shift_c && rep.nested;
  return rep;
}

}  // namespace piuniv
