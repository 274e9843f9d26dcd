#pragma once

// Divisor classes through 0 -> M -> Z^m -> Pic(X) -> 0, where M maps to Z^m by
// u |-> (<u, v_rho>)_rho.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toric/fan.hpp"
#include "toric/lattice.hpp"

namespace toric {

/// Integer combination sum_rho coeffs[rho] * Z_rho of torus-invariant prime divisors.
struct ToricDivisor {
  std::vector<std::int64_t> coeffs;

  static ToricDivisor zero(std::size_t m) { return {std::vector<std::int64_t>(m, 0)}; }
  static ToricDivisor prime(std::size_t m, std::size_t rho);
  /// -K_X = sum of all Z_rho.
  static ToricDivisor anticanonical(std::size_t m) { return {std::vector<std::int64_t>(m, 1)}; }

  friend ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b);
  friend ToricDivisor operator-(const ToricDivisor& a, const ToricDivisor& b);
  friend ToricDivisor operator-(const ToricDivisor& a);
  friend bool operator==(const ToricDivisor&, const ToricDivisor&) = default;
};

/// Coordinates of a class in Pic(X) with respect to the context's basis.
struct DivisorClass {
  std::vector<std::int64_t> coords;

  friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
  friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
  friend DivisorClass operator-(const DivisorClass& a);
  friend DivisorClass operator*(std::int64_t k, const DivisorClass& a);
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;

  bool is_zero() const;
  std::int64_t max_abs() const;
};

class PicBasisContext {
 public:
  /// Builds the class encoder. With `basis_divisors` (0-based ray indices) the
  /// coordinates are expressed in the classes of those divisors; throws
  /// NotABasis if they do not freely generate Pic. Without it, the SNF
  /// quotient basis is used. Throws TorsionInPicard if Z^m / M has torsion.
  static PicBasisContext build(const Fan& fan, std::optional<IndexSet> basis_divisors = {});

  const Fan& fan() const { return fan_; }
  std::size_t ray_count() const { return fan_.ray_count(); }
  /// Picard number m - n.
  std::size_t rank() const { return encoder_.size(); }
  const IntMatrix& pairing() const { return pairing_; }
  const std::optional<IndexSet>& basis_divisors() const { return basis_; }

  DivisorClass to_class(const ToricDivisor& d) const;
  /// A divisor whose class is `c`; with a named basis this is sum c_k Z_{b_k}.
  ToricDivisor representative(const DivisorClass& c) const;
  bool are_linearly_equivalent(const ToricDivisor& a, const ToricDivisor& b) const;

  DivisorClass zero_class() const { return {std::vector<std::int64_t>(rank(), 0)}; }
  DivisorClass anticanonical_class() const;
  DivisorClass canonical_class() const { return -anticanonical_class(); }
  DivisorClass class_of_ray(std::size_t rho) const;

  /// Human-readable class: "O(Z4+2Z5)" style in a named basis (positive terms
  /// first), "O(c1,c2,...)" otherwise; the zero class prints as "O".
  std::string format(const DivisorClass& c) const;
  /// Parses "O", "O(Z6-Z4)", "Z1+Z5+2Z7", or whitespace-separated coordinates.
  /// Z-terms may name any ray (1-based) and are reduced to a class.
  DivisorClass parse(std::string_view text) const;

 private:
  Fan fan_;
  IntMatrix pairing_;
  std::optional<IndexSet> basis_;
  // class coords = encoder_ * divisor coeffs (rank x m)
  std::vector<std::vector<std::int64_t>> encoder_;
  // representative divisor of a unit class vector, one column per basis element (m x rank)
  std::vector<std::vector<std::int64_t>> decoder_;
};

}  // namespace toric
