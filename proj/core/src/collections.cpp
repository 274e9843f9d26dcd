#include "toric/collections.hpp"

#include <algorithm>
#include <map>

#include "toric/errors.hpp"
#include "toric/parallel.hpp"

namespace toric {

OrderedCollection OrderedCollection::parse(const PicBasisContext& ctx,
                                           const std::vector<std::string>& items) {
  OrderedCollection c;
  for (const auto& s : items) c.bundles.push_back(ctx.parse(s));
  if (c.class_set().size() != c.bundles.size()) throw Error("collection repeats a class");
  return c;
}

bool VerificationReport::strongly_exceptional() const {
  if (!distinct) return false;
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      if (!acyclic[a][b]) return false;
      if (a > b && sections[a][b]) return false;
    }
  return true;
}

KoszulCertificate koszul_reduction_certificate(const PicBasisContext& ctx,
                                               const OrderedCollection& coll,
                                               const DivisorClass& extra, const IndexSet& pcoll) {
  const auto pcs = primitive_collections(ctx.fan());
  if (std::find(pcs.begin(), pcs.end(), pcoll) == pcs.end())
    throw NotPrimitive(format_index_set(pcoll) + " is not a primitive collection");
  const auto members = coll.class_set();
  if (members.count(extra)) throw ExtraInCollection(ctx.format(extra) + " is already in the collection");

  KoszulCertificate cert{extra, pcoll, {}};
  const std::size_t k = pcoll.size();
  std::vector<std::map<DivisorClass, std::uint64_t>> by_degree(k + 1);
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << k); ++s) {
    DivisorClass cls = extra;
    std::size_t degree = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (s & (std::uint32_t{1} << i)) {
        cls = cls + ctx.class_of_ray(pcoll[i]);
        ++degree;
      }
    ++by_degree[degree][cls];
  }

  std::vector<std::string> missing;
  for (std::size_t j = 0; j <= k; ++j)
    for (const auto& [cls, mult] : by_degree[j]) {
      cert.terms.push_back({j, cls, mult});
      if (j > 0 && !members.count(cls)) missing.push_back(ctx.format(cls));
    }
  if (!missing.empty()) {
    std::string msg = "Koszul complex of " + format_index_set(pcoll) + " twisted by " +
                      ctx.format(extra) + " leaves the collection:";
    for (const auto& m : missing) msg += " " + m;
    throw TermOutsideCollection(msg);
  }
  return cert;
}

FullnessCertificate fullness_certificate(const PicBasisContext& ctx, const OrderedCollection& coll,
                                         const std::set<DivisorClass>& summands) {
  FullnessCertificate cert;
  const auto members = coll.class_set();
  if (members == summands && members.size() == ctx.fan().max_cones.size()) {
    cert.kind = FullnessCertificate::Kind::SummandSetMatchesK0Rank;
    return cert;
  }
  const auto pcs = primitive_collections(ctx.fan());
  for (const auto& s : summands) {
    if (members.count(s)) continue;
    bool reduced = false;
    for (const auto& pc : pcs) {
      try {
        cert.reductions.push_back(koszul_reduction_certificate(ctx, coll, s, pc));
        reduced = true;
        break;
      } catch (const TermOutsideCollection&) {
      }
    }
    if (!reduced) cert.unexplained.push_back(s);
  }
  cert.kind = cert.unexplained.empty() ? FullnessCertificate::Kind::KoszulReduction
                                       : FullnessCertificate::Kind::NotCertified;
  return cert;
}

VerificationReport verify_strongly_exceptional(const PicBasisContext& ctx,
                                               const OrderedCollection& coll,
                                               const ForbiddenSetReport& report) {
  const std::size_t k = coll.bundles.size();
  VerificationReport out;
  out.size = k;
  out.distinct = coll.class_set().size() == k;
  std::vector<std::vector<char>> acyclic(k, std::vector<char>(k, 0));
  std::vector<std::vector<char>> sections(k, std::vector<char>(k, 0));

  parallel_for_slices(k, [&](std::size_t a) {
    for (std::size_t b = 0; b < k; ++b) {
      const DivisorClass diff = coll.bundles[b] - coll.bundles[a];
      const ToricDivisor d = ctx.representative(diff);
      try {
        acyclic[a][b] = is_acyclic(ctx, d, report);
        if (a > b) sections[a][b] = has_nonzero_global_sections(ctx, d);
      } catch (const BoxUnstable& e) {
        throw BoxUnstable("pair (" + std::to_string(a) + ", " + std::to_string(b) + "): " + e.what());
      }
    }
  });

  out.acyclic.assign(k, std::vector<bool>(k));
  out.sections.assign(k, std::vector<bool>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      out.acyclic[a][b] = acyclic[a][b] != 0;
      out.sections[a][b] = sections[a][b] != 0;
    }
  return out;
}

}  // namespace toric
