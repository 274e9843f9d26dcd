#include "toric/cohomology.hpp"


#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <set>
#include <unordered_map>

#include "toric/checked.hpp"
#include "toric/errors.hpp"
#include "toric/parallel.hpp"

namespace toric {

std::uint32_t to_mask(const IndexSet& s) {
  std::uint32_t mask = 0;
  for (auto i : s) mask |= std::uint32_t{1} << i;
  return mask;
}

IndexSet from_mask(std::uint32_t mask, std::size_t m) {
  IndexSet s;
  for (std::size_t i = 0; i < m; ++i)
    if (mask & (std::uint32_t{1} << i)) s.push_back(i);
  return s;
}

namespace {

// Every face of the fan as a bitmask (subsets of maximal cones).
std::vector<std::uint32_t> fan_faces(const Fan& fan) {
  std::set<std::uint32_t> faces;
  for (const auto& c : fan.max_cones) {
    const std::uint32_t full = to_mask(c);
    for (std::uint32_t sub = full;; sub = (sub - 1) & full) {
      faces.insert(sub);
      if (sub == 0) break;
    }
  }
  return {faces.begin(), faces.end()};
}

std::vector<std::size_t> homology_of_faces(std::size_t dim, std::vector<std::uint32_t> faces) {
  // faces_by_size[k] holds faces with k vertices; k = 0 is the empty face.
  std::vector<std::vector<std::uint32_t>> by_size(dim + 1);
  for (auto f : faces) {
    auto k = static_cast<std::size_t>(std::popcount(f));
    if (k <= dim) by_size[k].push_back(f);
  }
  // rank of boundary from k-vertex faces to (k-1)-vertex faces, k = 1..dim
  std::vector<std::size_t> boundary_rank(dim + 2, 0);
  for (std::size_t k = 1; k <= dim; ++k) {
    const auto& rows = by_size[k - 1];
    const auto& cols = by_size[k];
    if (rows.empty() || cols.empty()) continue;
    IntMatrix B(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      int sign = 1;
      for (std::uint32_t bits = cols[j]; bits; bits &= bits - 1) {
        std::uint32_t low = bits & (~bits + 1);
        auto it = std::lower_bound(rows.begin(), rows.end(), cols[j] & ~low);
        B(static_cast<std::size_t>(it - rows.begin()), j) = sign;
        sign = -sign;
      }
    }
    boundary_rank[k] = rank(B);
  }
  // degree d = k - 1: rank H~_d = #C_d - rank(d_k) - rank(d_{k+1})
  std::vector<std::size_t> ranks(dim + 1);
  for (std::size_t k = 0; k <= dim; ++k)
    ranks[k] = by_size[k].size() - boundary_rank[k] - boundary_rank[k + 1];
  return ranks;
}

struct Census {
  std::unordered_map<std::uint32_t, std::uint64_t> inner;
  std::unordered_map<std::uint32_t, std::uint64_t> outer;
  bool zero_one_inner = false;
  bool zero_one_outer = false;
};

// Sign patterns of a' = a + P u over the box of radius R + 2, with the points
// inside radius R tallied separately.
Census census(const PicBasisContext& ctx, const ToricDivisor& d, std::int64_t radius) {
  if (radius < 1) throw Error("box radius must be at least 1");
  const Fan& fan = ctx.fan();
  const std::size_t n = fan.dim;
  const std::size_t m = fan.ray_count();
  if (m > 32) throw TooManyRays("pattern masks hold at most 32 rays");
  const ToricDivisor a = ctx.representative(ctx.to_class(d));
  const std::int64_t outer = radius + 2;

  Census c;
  std::vector<std::int64_t> u(n, -outer);
  for (;;) {
    bool inside = std::all_of(u.begin(), u.end(), [&](auto x) { return x >= -radius && x <= radius; });
    std::uint32_t mask = 0;
    bool zero_one = true;
    for (std::size_t r = 0; r < m; ++r) {
      std::int64_t x = a.coeffs[r];
      for (std::size_t k = 0; k < n; ++k) x = checked::add(x, checked::mul(u[k], fan.rays[r][k]));
      if (x >= 0) mask |= std::uint32_t{1} << r;
      if (x != 0 && x != 1) zero_one = false;
    }
    ++c.outer[mask];
    if (zero_one) c.zero_one_outer = true;
    if (inside) {
      ++c.inner[mask];
      if (zero_one) c.zero_one_inner = true;
    }
    std::size_t k = 0;
    while (k < n && ++u[k] > outer) u[k++] = -outer;
    if (k == n) break;
  }
  return c;
}

std::int64_t radius_for(const PicBasisContext& ctx, const ToricDivisor& d,
                        std::optional<std::int64_t> box_radius) {
  return box_radius ? *box_radius : default_box_radius(ctx, d);
}

[[noreturn]] void unstable(const PicBasisContext& ctx, const ToricDivisor& d, std::int64_t r,
                           const char* what) {
  throw BoxUnstable(std::string(what) + " for " + ctx.format(ctx.to_class(d)) +
                    " changed between box radius " + std::to_string(r) + " and " +
                    std::to_string(r + 2));
}

template <typename Pred>
bool any_pattern(const std::unordered_map<std::uint32_t, std::uint64_t>& counts, Pred&& pred) {
  return std::any_of(counts.begin(), counts.end(), [&](const auto& kv) { return pred(kv.first); });
}

}  // namespace

SimplicialSubcomplex SimplicialSubcomplex::full_subcomplex(const Fan& fan, const IndexSet& vertex_set) {
  SimplicialSubcomplex c;
  c.dim = fan.dim;
  c.vertex_set = vertex_set;
  const std::uint32_t I = to_mask(vertex_set);
  std::vector<IndexSet> faces;
  for (auto f : fan_faces(fan))
    if ((f & ~I) == 0) faces.push_back(from_mask(f, fan.ray_count()));
  std::sort(faces.begin(), faces.end(), [](const IndexSet& x, const IndexSet& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  c.faces = std::move(faces);
  return c;
}

std::vector<std::size_t> reduced_homology_ranks(const SimplicialSubcomplex& c) {
  std::vector<std::uint32_t> faces;
  for (const auto& f : c.faces) faces.push_back(to_mask(f));
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  return homology_of_faces(c.dim, std::move(faces));
}

bool ForbiddenSetReport::is_forbidden(std::uint32_t mask) const {
  if (mask == (std::uint32_t{1} << ray_count) - 1) return false;
  const auto& r = homology.at(mask);
  return std::any_of(r.begin(), r.end(), [](auto x) { return x != 0; });
}

ForbiddenSetReport forbidden_sets(const Fan& fan) {
  const std::size_t m = fan.ray_count();
  if (m > kMaxForbiddenSweepRays)
    throw TooManyRays(std::to_string(m) + " rays exceed the exhaustive sweep limit of " +
                      std::to_string(kMaxForbiddenSweepRays));
  ForbiddenSetReport report;
  report.dim = fan.dim;
  report.ray_count = m;
  report.fano = is_fano(fan);

  const auto faces = fan_faces(fan);
  const std::size_t subsets = std::size_t{1} << m;
  report.homology.resize(subsets);
  parallel_for_slices(subsets, [&](std::size_t s) {
    const auto I = static_cast<std::uint32_t>(s);
    std::vector<std::uint32_t> inside;
    for (auto f : faces)
      if ((f & ~I) == 0) inside.push_back(f);
    report.homology[s] = homology_of_faces(fan.dim, std::move(inside));
  });

  for (std::size_t s = 0; s + 1 < subsets; ++s)
    if (report.is_forbidden(static_cast<std::uint32_t>(s))) {
      report.forbidden.push_back(from_mask(static_cast<std::uint32_t>(s), m));
    }
  std::sort(report.forbidden.begin(), report.forbidden.end(), [](const IndexSet& x, const IndexSet& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  for (const auto& f : report.forbidden) report.forbidden_ranks.push_back(report.homology[to_mask(f)]);
  return report;
}

std::int64_t default_box_radius(const PicBasisContext& ctx, const ToricDivisor& d) {
  // Vertices of the arrangement <u, v_r> = c_r, c_r in {-a_r, -a_r - 1}: for
  // each independent n-subset of rays, u = adj(M) c / det(M).
  const Fan& fan = ctx.fan();
  const std::size_t n = fan.dim;
  const std::size_t m = fan.ray_count();
  const ToricDivisor a = ctx.representative(ctx.to_class(d));
  std::int64_t bound = 1;
  if (n == 0 || n > m) return bound;
  std::vector<std::size_t> pick(n);
  for (std::size_t t = 0; t < n; ++t) pick[t] = t;
  for (;;) {
    IntMatrix M(n, n);
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t c = 0; c < n; ++c) M(t, c) = fan.rays[pick[t]][c];
    const std::int64_t det = to_int64(determinant(M));
    if (det != 0) {
      for (std::size_t c = 0; c < n; ++c) {
        // row c of adj(M): adj(c, t) = (-1)^{c+t} minor(t, c)
        std::int64_t hi = 0, lo = 0;
        for (std::size_t t = 0; t < n; ++t) {
          std::int64_t cof = 1;
          if (n > 1) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t i = 0, ri = 0; i < n; ++i) {
              if (i == t) continue;
              for (std::size_t j = 0, rj = 0; j < n; ++j)
                if (j != c) minor(ri, rj++) = M(i, j);
              ++ri;
            }
            cof = to_int64(determinant(minor));
            if ((c + t) % 2) cof = -cof;
          }
          const std::int64_t x = checked::mul(cof, -a.coeffs[pick[t]]);
          const std::int64_t y = checked::mul(cof, checked::sub(-a.coeffs[pick[t]], 1));
          hi = checked::add(hi, std::max(x, y));
          lo = checked::add(lo, std::min(x, y));
        }
        const std::int64_t num = std::max(std::abs(hi), std::abs(lo));
        const std::int64_t q = (num + std::abs(det) - 1) / std::abs(det);
        bound = std::max(bound, q);
      }
    }
    std::size_t t = n;
    while (t > 0 && pick[t - 1] == m - n + t - 1) --t;
    if (t == 0) break;
    ++pick[t - 1];
    for (std::size_t k = t; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
  return bound;
}

bool is_forbidden_form(const PicBasisContext& ctx, const ToricDivisor& d, const IndexSet& forbidden,
                       std::int64_t box_radius) {
  const std::uint32_t I = to_mask(forbidden);
  const Census c = census(ctx, d, box_radius);
  const bool inner = c.inner.count(I) > 0;
  if (inner != (c.outer.count(I) > 0)) unstable(ctx, d, box_radius, "forbidden-form search");
  return inner;
}

bool is_acyclic(const PicBasisContext& ctx, const ToricDivisor& d, const ForbiddenSetReport& report,
                std::optional<std::int64_t> box_radius, bool mustata_filter) {
  if (report.ray_count != ctx.ray_count()) throw Error("forbidden-set report is for another fan");
  const std::int64_t r = radius_for(ctx, d, box_radius);
  const Census c = census(ctx, d, r);
  if (mustata_filter && report.fano && c.zero_one_inner) return true;
  auto bad = [&](std::uint32_t mask) { return report.is_forbidden(mask); };
  const bool inner = any_pattern(c.inner, bad);
  if (inner != any_pattern(c.outer, bad)) unstable(ctx, d, r, "acyclicity verdict");
  return !inner;
}

bool has_nonzero_global_sections(const PicBasisContext& ctx, const ToricDivisor& d,
                                 std::optional<std::int64_t> box_radius) {
  const std::int64_t r = radius_for(ctx, d, box_radius);
  const std::uint32_t all = static_cast<std::uint32_t>((std::uint64_t{1} << ctx.ray_count()) - 1);
  const Census c = census(ctx, d, r);
  const bool inner = c.inner.count(all) > 0;
  if (inner != (c.outer.count(all) > 0)) unstable(ctx, d, r, "section search");
  return inner;
}

CohomologyTable cohomology_table(const PicBasisContext& ctx, const ToricDivisor& d,
                                 const ForbiddenSetReport& report,
                                 std::optional<std::int64_t> box_radius) {
  if (report.ray_count != ctx.ray_count()) throw Error("forbidden-set report is for another fan");
  const std::size_t n = report.dim;
  const std::int64_t r = radius_for(ctx, d, box_radius);
  const Census c = census(ctx, d, r);

  auto dims = [&](const std::unordered_map<std::uint32_t, std::uint64_t>& counts) {
    std::vector<std::uint64_t> h(n + 1, 0);
    for (const auto& [mask, count] : counts) {
      const auto& ranks = report.homology[mask];
      // h^p picks up H~_{n-1-p}, stored at index n - p
      for (std::size_t p = 0; p <= n; ++p) h[p] += count * ranks[n - p];
    }
    return h;
  };
  CohomologyTable t;
  t.cls = ctx.to_class(d);
  t.dims = dims(c.inner);
  t.box_radius_used = r;
  if (t.dims != dims(c.outer)) unstable(ctx, d, r, "cohomology dimensions");
  return t;
}

}  // namespace toric
