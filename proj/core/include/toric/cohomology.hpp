#pragma once

// Line-bundle cohomology on smooth complete toric varieties through full
// subcomplexes of the fan.
//
// For a representative a of D write I_a = { rho : a_rho >= 0 } and C_I for the
// cones whose rays all lie in I. Then
//
//   h^p(O(D)) = sum over u in M of rank H~_{n-1-p}(C_{I_{a + P u}})
//
// with reduced simplicial homology over a field of characteristic 0. A set I
// is forbidden when C_I has nontrivial reduced homology; O(D) fails to be
// acyclic exactly when some representative realizes a forbidden proper I.
//
// Representatives are searched in the box ||u||_inf <= R around the basis
// representative of the class, and every verdict is re-checked on the box of
// radius R + 2. A change raises BoxUnstable. The default R bounds every
// bounded cell of the sign-pattern arrangement.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "toric/fan.hpp"
#include "toric/picard.hpp"

namespace toric {

struct SimplicialSubcomplex {
  std::size_t dim = 0;
  IndexSet vertex_set;
  std::vector<IndexSet> faces;  // every cone of the fan inside vertex_set, empty face first

  static SimplicialSubcomplex full_subcomplex(const Fan& fan, const IndexSet& vertex_set);
};

/// Ranks of reduced homology in degrees -1 .. dim-1 (entry d+1 holds degree d).
std::vector<std::size_t> reduced_homology_ranks(const SimplicialSubcomplex& c);

struct ForbiddenSetReport {
  std::size_t dim = 0;
  std::size_t ray_count = 0;
  bool fano = false;
  /// Proper subsets with nontrivial reduced homology, by size then lexicographic.
  std::vector<IndexSet> forbidden;
  std::vector<std::vector<std::size_t>> forbidden_ranks;  // parallel to `forbidden`
  /// Reduced homology ranks of C_I for every subset I, indexed by bitmask.
  std::vector<std::vector<std::size_t>> homology;

  bool is_forbidden(std::uint32_t mask) const;
};

inline constexpr std::size_t kMaxForbiddenSweepRays = 20;

/// Exhaustive sweep over all 2^m subsets; throws TooManyRays for m > 20.
ForbiddenSetReport forbidden_sets(const Fan& fan);

std::uint32_t to_mask(const IndexSet& s);
IndexSet from_mask(std::uint32_t mask, std::size_t m);

/// Radius around the basis representative a containing every vertex of the
/// arrangement <u, v_rho> = -a_rho, -a_rho - 1. Every u whose sign pattern has
/// nontrivial homology lies in a bounded cell, so this box sees all of them.
std::int64_t default_box_radius(const PicBasisContext& ctx, const ToricDivisor& d);

/// True iff some representative a' has a'_rho >= 0 exactly for rho in I.
bool is_forbidden_form(const PicBasisContext& ctx, const ToricDivisor& d, const IndexSet& forbidden,
                       std::int64_t box_radius);

/// Borisov-Hua criterion. With `mustata_filter` on a Fano fan, a representative
/// with all coefficients in {0, 1} proves acyclicity at once.
bool is_acyclic(const PicBasisContext& ctx, const ToricDivisor& d, const ForbiddenSetReport& report,
                std::optional<std::int64_t> box_radius = {}, bool mustata_filter = true);

/// True iff D is linearly equivalent to a divisor with all coefficients >= 0.
bool has_nonzero_global_sections(const PicBasisContext& ctx, const ToricDivisor& d,
                                 std::optional<std::int64_t> box_radius = {});

struct CohomologyTable {
  DivisorClass cls;
  std::vector<std::uint64_t> dims;  // h^0 .. h^n
  std::int64_t box_radius_used = 0;
};

CohomologyTable cohomology_table(const PicBasisContext& ctx, const ToricDivisor& d,
                                 const ForbiddenSetReport& report,
                                 std::optional<std::int64_t> box_radius = {});

}  // namespace toric
