#pragma once

// Thomsen's splitting of the Frobenius pushforward.
//
// For a prime p the toric endomorphism pi_p (t |-> t^p on the torus) pushes a
// line bundle forward to a rank p^n bundle that splits into line bundles:
//
//   (pi_p)_* O(D)^dual = sum over v in P_p of O(D_v),
//   P_p = { v in Z^n : 0 <= v_t < p }.
//
// Each D_v is read off from integer divisions C_{li} v + u_{li} = p h_i + r_i
// performed in the coordinates of every maximal cone sigma_i relative to a
// fixed base cone sigma_l.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "toric/fan.hpp"
#include "toric/lattice.hpp"
#include "toric/picard.hpp"

namespace toric {

/// Per-cone matrices: A_i has the cone's rays as rows, B_i = A_i^{-1}, and
/// C_i = B_i^{-1} B_l = A_i B_l for the base cone l.
struct ConeFrame {
  std::size_t base_cone = 0;
  std::vector<IntMatrix> A;
  std::vector<IntMatrix> B;
  std::vector<IntMatrix> C;

  static ConeFrame build(const Fan& fan, std::size_t base_cone);
};

struct DivisionStep {
  std::vector<std::int64_t> quotient;   // h
  std::vector<std::int64_t> remainder;  // r, each entry in [0, p)
};

/// The unique h, r with C v + w = p h + r and 0 <= r_t < p.
DivisionStep divide_step(const IntMatrix& C, std::span<const std::int64_t> w,
                         std::span<const std::int64_t> v, std::int64_t p);

/// All data needed to evaluate D_v for one (fan, D, p, base cone).
class ThomsenSplitter {
 public:
  /// Throws RayNotCovered if a ray lies in no maximal cone.
  ThomsenSplitter(const Fan& fan, const ToricDivisor& divisor, std::int64_t p,
                  std::size_t base_cone = 0);

  const ConeFrame& frame() const { return frame_; }
  std::int64_t prime() const { return p_; }
  std::size_t dim() const { return n_; }

  /// u_{li} = u_i - C_{li} u_l for the Cartier data of the input divisor.
  const std::vector<std::int64_t>& shift(std::size_t cone) const { return shifts_[cone]; }

  std::vector<std::int64_t> h_vector(std::size_t cone, std::span<const std::int64_t> v) const;
  /// l_{sigma_i} = B_i h_i, an element of M.
  std::vector<std::int64_t> functional(std::size_t cone, std::span<const std::int64_t> v) const;

  /// D_v with coefficient -l_{sigma_k}(v_j) on Z_j, sigma_k a cone containing ray j.
  ToricDivisor summand_divisor(std::span<const std::int64_t> v) const;

  /// -l_{sigma_k}(v_j) evaluated in every maximal cone sigma_k that contains ray j.
  std::vector<std::int64_t> coefficient_over_cones(std::span<const std::int64_t> v,
                                                   std::size_t ray) const;

 private:
  std::int64_t pairing_with_ray(std::size_t cone, std::span<const std::int64_t> v,
                                std::size_t ray) const;

  Fan fan_;
  ConeFrame frame_;
  std::int64_t p_;
  std::size_t n_;
  std::vector<std::vector<std::int64_t>> C64_;  // row-major n x n per cone
  std::vector<std::vector<std::int64_t>> B64_;
  std::vector<std::vector<std::int64_t>> shifts_;
  std::vector<std::size_t> home_cone_;  // first maximal cone containing each ray
};

struct FrobeniusDecomposition {
  std::int64_t prime = 0;
  DivisorClass divisor_input;
  std::map<DivisorClass, std::uint64_t> summands;

  std::uint64_t total_multiplicity() const;
  std::set<DivisorClass> distinct_classes() const;
};

/// Sweeps all p^n vectors of P_p and aggregates the classes of the D_v.
/// Work is split by the first coordinate of v across worker threads; the
/// merge is a multiset union, so the result is schedule-independent.
FrobeniusDecomposition decompose(const PicBasisContext& ctx, const ToricDivisor& divisor,
                                 std::int64_t p, std::size_t base_cone = 0);

/// Distinct summand classes, required to agree across every prime given.
/// Throws NotStabilized (listing the per-prime sets) when they differ.
std::set<DivisorClass> stable_summands(const PicBasisContext& ctx, const ToricDivisor& divisor,
                                       std::span<const std::int64_t> primes);

inline constexpr std::int64_t kDefaultPrimes[] = {31, 37};

bool is_prime(std::int64_t p);

}  // namespace toric
