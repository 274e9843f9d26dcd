#pragma once

// Fans of smooth complete toric varieties, described by ray generators and
// maximal cones (index sets into the ray list). Since smooth fans are
// simplicial, "spans a cone" means "is a subset of some maximal cone".

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

/// Sorted list of 0-based ray indices.
using IndexSet = std::vector<std::size_t>;
using LatticeVector = std::vector<std::int64_t>;

struct Fan {
  std::size_t dim = 0;
  std::vector<LatticeVector> rays;
  std::vector<IndexSet> max_cones;

  std::size_t ray_count() const { return rays.size(); }

  /// True when `s` is contained in some maximal cone (the empty set always is).
  bool spans_cone(const IndexSet& s) const;

  /// A_i: row j holds the coordinates of the j-th ray of maximal cone i.
  IntMatrix cone_matrix(std::size_t cone) const;

  friend bool operator==(const Fan&, const Fan&) = default;
};

struct FanValidation {
  bool well_formed = true;
  bool primitive_rays = true;
  bool distinct_rays = true;
  bool smooth = true;
  bool complete = true;
  bool rays_covered = true;
  std::vector<std::string> failures;

  bool ok() const {
    return well_formed && primitive_rays && distinct_rays && smooth && complete && rays_covered;
  }
};

/// Structural checks: primitive distinct rays, unimodular maximal cones,
/// every ridge shared by exactly two maximal cones, every ray used, and a
/// seeded sample of generic directions each landing in the interior of
/// exactly one maximal cone. Never throws on bad data.
FanValidation validate_fan(const Fan& fan);

/// Throws InvalidFan with the collected failures unless validate_fan passes.
void require_valid(const Fan& fan);

/// Minimal non-faces, ordered by cardinality then lexicographically.
std::vector<IndexSet> primitive_collections(const Fan& fan);

struct PrimitiveRelation {
  IndexSet collection;
  IndexSet target_cone;
  std::vector<std::int64_t> coefficients;  // parallel to target_cone, all > 0
  std::int64_t degree = 0;                 // |collection| - sum(coefficients)

  friend bool operator==(const PrimitiveRelation&, const PrimitiveRelation&) = default;
};

/// One relation per primitive collection. Throws InteriorCoverFailure if a
/// collection's ray sum lies in no maximal cone.
std::vector<PrimitiveRelation> primitive_relations(const Fan& fan);

bool is_fano(const Fan& fan);

/// B_i = A_i^{-1} for each maximal cone, narrowed to int64 (row-major n x n).
std::vector<std::vector<std::int64_t>> cone_inverses(const Fan& fan);

/// Coordinates c of `x` in the ray basis of a maximal cone (x = sum_t c_t v_t),
/// given that cone's inverse matrix from cone_inverses().
std::vector<std::int64_t> cone_coordinates(const std::vector<std::int64_t>& inverse,
                                           const LatticeVector& x);

std::string format_index_set(const IndexSet& s, bool one_based = true);

}  // namespace toric
