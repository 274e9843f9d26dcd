#pragma once

// Ordered line-bundle collections: strong exceptionality through pairwise
// cohomology vanishing, and fullness through the Frobenius summands plus
// Koszul reductions along primitive collections.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toric/cohomology.hpp"
#include "toric/picard.hpp"

namespace toric {

struct OrderedCollection {
  std::vector<DivisorClass> bundles;

  /// Parses each entry with ctx.parse; throws Error on repeated classes.
  static OrderedCollection parse(const PicBasisContext& ctx, const std::vector<std::string>& items);
  std::set<DivisorClass> class_set() const { return {bundles.begin(), bundles.end()}; }
};

struct KoszulTerm {
  std::size_t degree = 0;  // number of collection divisors added to `extra`
  DivisorClass cls;
  std::uint64_t multiplicity = 0;
  friend bool operator==(const KoszulTerm&, const KoszulTerm&) = default;
};

/// 0 -> O(E) -> (+) O(E + Z_i) -> (+) O(E + Z_i + Z_j) -> ... -> O(E + sum Z_i) -> 0,
/// the dual Koszul complex of a primitive collection twisted by O(E).
struct KoszulCertificate {
  DivisorClass extra;
  IndexSet primitive_collection;
  std::vector<KoszulTerm> terms;  // by degree, then class; degree 0 is `extra` itself
};

/// Builds the twisted Koszul complex for `pcoll`. Throws NotPrimitive when
/// pcoll is not a primitive collection of the fan, ExtraInCollection when
/// `extra` already belongs to the collection, and TermOutsideCollection
/// (listing the classes) when some term of positive degree is missing.
KoszulCertificate koszul_reduction_certificate(const PicBasisContext& ctx,
                                               const OrderedCollection& coll,
                                               const DivisorClass& extra, const IndexSet& pcoll);

struct FullnessCertificate {
  enum class Kind { SummandSetMatchesK0Rank, KoszulReduction, NotCertified };
  Kind kind = Kind::NotCertified;
  std::vector<KoszulCertificate> reductions;  // one per summand outside the collection
  std::vector<DivisorClass> unexplained;      // summands no reduction could reach

  bool certified() const { return kind != Kind::NotCertified; }
};

/// Fullness from the distinct Frobenius summands, which generate D^b(X).
FullnessCertificate fullness_certificate(const PicBasisContext& ctx, const OrderedCollection& coll,
                                         const std::set<DivisorClass>& summands);

struct VerificationReport {
  std::size_t size = 0;
  /// acyclic[a][b]: L_b - L_a is acyclic (required for all a, b).
  std::vector<std::vector<bool>> acyclic;
  /// sections[a][b] for a > b: L_b - L_a has a nonzero global section (must be false).
  std::vector<std::vector<bool>> sections;
  std::optional<FullnessCertificate> fullness;

  bool distinct = true;
  bool strongly_exceptional() const;
  bool full() const { return fullness && fullness->certified(); }
};

/// Fills every entry of both matrices. BoxUnstable is rethrown with the pair.
VerificationReport verify_strongly_exceptional(const PicBasisContext& ctx,
                                               const OrderedCollection& coll,
                                               const ForbiddenSetReport& report);

}  // namespace toric
