#include "toric/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "toric/checked.hpp"
#include "toric/errors.hpp"

namespace toric {

namespace {

bool is_subset(const IndexSet& small, const IndexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Visits every k-subset of {0..m-1} in lexicographic order.
template <typename Fn>
void for_each_combination(std::size_t m, std::size_t k, Fn&& fn) {
  if (k > m) return;
  IndexSet idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::int64_t gcd_of(const LatticeVector& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

}  // namespace

bool Fan::spans_cone(const IndexSet& s) const {
  if (s.empty()) return true;
  return std::any_of(max_cones.begin(), max_cones.end(),
                     [&](const IndexSet& c) { return is_subset(s, c); });
}

IntMatrix Fan::cone_matrix(std::size_t cone) const {
  const IndexSet& c = max_cones.at(cone);
  IntMatrix A(c.size(), dim);
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t k = 0; k < dim; ++k) A(j, k) = static_cast<long>(rays.at(c[j]).at(k));
  return A;
}

std::vector<std::vector<std::int64_t>> cone_inverses(const Fan& fan) {
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(fan.max_cones.size());
  for (std::size_t i = 0; i < fan.max_cones.size(); ++i)
    out.push_back(unimodular_inverse(fan.cone_matrix(i)).to_int64());
  return out;
}

std::vector<std::int64_t> cone_coordinates(const std::vector<std::int64_t>& inverse,
                                           const LatticeVector& x) {
  const std::size_t n = x.size();
  std::vector<std::int64_t> c(n, 0);
  // x^T = c^T A  =>  c^T = x^T B
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t k = 0; k < n; ++k)
      c[t] = checked::add(c[t], checked::mul(x[k], inverse[k * n + t]));
  return c;
}

FanValidation validate_fan(const Fan& fan) {
  FanValidation report;
  auto fail = [&](bool FanValidation::*flag, std::string msg) {
    report.*flag = false;
    report.failures.push_back(std::move(msg));
  };

  const std::size_t n = fan.dim;
  const std::size_t m = fan.ray_count();
  if (n == 0) fail(&FanValidation::well_formed, "dimension must be positive");
  for (std::size_t r = 0; r < m; ++r) {
    if (fan.rays[r].size() != n) {
      fail(&FanValidation::well_formed, "ray " + std::to_string(r) + " has wrong length");
      continue;
    }
    std::int64_t g = gcd_of(fan.rays[r]);
    if (g == 0)
      fail(&FanValidation::primitive_rays, "ray " + std::to_string(r) + " is zero");
    else if (g != 1)
      fail(&FanValidation::primitive_rays, "ray " + std::to_string(r) + " is not primitive");
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (fan.rays[a] == fan.rays[b])
        fail(&FanValidation::distinct_rays,
             "rays " + std::to_string(a) + " and " + std::to_string(b) + " coincide");

  for (std::size_t i = 0; i < fan.max_cones.size(); ++i) {
    const IndexSet& c = fan.max_cones[i];
    bool ok = c.size() == n && std::is_sorted(c.begin(), c.end()) &&
              std::adjacent_find(c.begin(), c.end()) == c.end() &&
              std::all_of(c.begin(), c.end(), [&](std::size_t r) { return r < m; });
    if (!ok)
      fail(&FanValidation::well_formed,
           "maximal cone " + std::to_string(i) + " is not a sorted set of " + std::to_string(n) +
               " valid ray indices");
  }
  if (fan.max_cones.empty()) fail(&FanValidation::well_formed, "fan has no maximal cones");
  if (!report.well_formed) return report;

  for (std::size_t r = 0; r < m; ++r)
    if (!fan.spans_cone({r}))
      fail(&FanValidation::rays_covered, "ray " + std::to_string(r) + " lies in no maximal cone");

  for (std::size_t i = 0; i < fan.max_cones.size(); ++i) {
    Integer det = determinant(fan.cone_matrix(i));
    if (abs(det) != 1)
      fail(&FanValidation::smooth, "maximal cone " + format_index_set(fan.max_cones[i], false) +
                                       " has determinant " + det.get_str());
  }

  // Pseudo-manifold condition: each ridge lies in exactly two maximal cones.
  std::map<IndexSet, int> ridges;
  for (const auto& c : fan.max_cones)
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
      IndexSet ridge;
      for (std::size_t j = 0; j < c.size(); ++j)
        if (j != drop) ridge.push_back(c[j]);
      ++ridges[ridge];
    }
  for (const auto& [ridge, count] : ridges)
    if (count != 2)
      fail(&FanValidation::complete, "ridge " + format_index_set(ridge, false) + " lies in " +
                                         std::to_string(count) + " maximal cone(s)");

  if (!report.smooth || !report.distinct_rays) {
    fail(&FanValidation::complete, "covering check skipped: fan is not smooth");
    return report;
  }

  const auto inverses = cone_inverses(fan);
  std::mt19937_64 rng(0x5eedf00dULL);
  std::uniform_int_distribution<std::int64_t> coord(-997, 997);
  int accepted = 0;
  for (int attempt = 0; attempt < 4096 && accepted < 64; ++attempt) {
    LatticeVector x(n);
    for (auto& xi : x) xi = coord(rng);
    int interior = 0;
    bool on_boundary = false;
    for (const auto& inv : inverses) {
      auto c = cone_coordinates(inv, x);
      bool nonneg = std::all_of(c.begin(), c.end(), [](auto v) { return v >= 0; });
      if (!nonneg) continue;
      if (std::all_of(c.begin(), c.end(), [](auto v) { return v > 0; }))
        ++interior;
      else
        on_boundary = true;
    }
    if (on_boundary) continue;
    ++accepted;
    if (interior != 1) {
      std::ostringstream os;
      os << "direction (";
      for (std::size_t k = 0; k < n; ++k) os << (k ? "," : "") << x[k];
      os << ") lies in the interior of " << interior << " maximal cones";
      fail(&FanValidation::complete, os.str());
      break;
    }
  }
  return report;
}

void require_valid(const Fan& fan) {
  FanValidation v = validate_fan(fan);
  if (v.ok()) return;
  std::string msg = "invalid fan:";
  for (const auto& f : v.failures) msg += "\n  " + f;
  throw InvalidFan(msg);
}

std::vector<IndexSet> primitive_collections(const Fan& fan) {
  std::vector<IndexSet> out;
  const std::size_t m = fan.ray_count();
  for (std::size_t k = 1; k <= std::min(m, fan.dim + 1); ++k) {
    for_each_combination(m, k, [&](const IndexSet& s) {
      if (fan.spans_cone(s)) return;
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        IndexSet sub;
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != drop) sub.push_back(s[j]);
        if (!fan.spans_cone(sub)) return;
      }
      out.push_back(s);
    });
  }
  return out;
}

std::vector<PrimitiveRelation> primitive_relations(const Fan& fan) {
  const auto inverses = cone_inverses(fan);
  std::vector<PrimitiveRelation> out;
  for (const auto& coll : primitive_collections(fan)) {
    LatticeVector sum(fan.dim, 0);
    for (auto r : coll)
      for (std::size_t k = 0; k < fan.dim; ++k) sum[k] = checked::add(sum[k], fan.rays[r][k]);

    bool found = false;
    for (std::size_t i = 0; i < fan.max_cones.size() && !found; ++i) {
      auto c = cone_coordinates(inverses[i], sum);
      if (!std::all_of(c.begin(), c.end(), [](auto v) { return v >= 0; })) continue;
      PrimitiveRelation rel;
      rel.collection = coll;
      std::vector<std::pair<std::size_t, std::int64_t>> terms;
      for (std::size_t t = 0; t < c.size(); ++t)
        if (c[t] > 0) terms.emplace_back(fan.max_cones[i][t], c[t]);
      std::sort(terms.begin(), terms.end());
      std::int64_t total = 0;
      for (auto [ray, coef] : terms) {
        rel.target_cone.push_back(ray);
        rel.coefficients.push_back(coef);
        total += coef;
      }
      rel.degree = static_cast<std::int64_t>(coll.size()) - total;
      out.push_back(std::move(rel));
      found = true;
    }
    if (!found)
      throw InteriorCoverFailure("sum of primitive collection " + format_index_set(coll) +
                                 " lies in no maximal cone");
  }
  return out;
}

bool is_fano(const Fan& fan) {
  const auto rels = primitive_relations(fan);
  return std::all_of(rels.begin(), rels.end(), [](const auto& r) { return r.degree > 0; });
}

std::string format_index_set(const IndexSet& s, bool one_based) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + (one_based ? 1 : 0);
  os << '}';
  return os.str();
}

}  // namespace toric
