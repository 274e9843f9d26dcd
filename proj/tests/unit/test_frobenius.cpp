#include <doctest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "toric/errors.hpp"
#include "toric/frobenius.hpp"

using namespace toric;
using testing_support::context;
using testing_support::projective_space;

namespace {

std::size_t cone_index(const Fan& fan, IndexSet cone) {
  std::sort(cone.begin(), cone.end());
  auto it = std::find(fan.max_cones.begin(), fan.max_cones.end(), cone);
  REQUIRE(it != fan.max_cones.end());
  return static_cast<std::size_t>(it - fan.max_cones.begin());
}

std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// h^0(P^n, O(k))
std::int64_t h0_projective(std::int64_t n, std::int64_t k) { return k < 0 ? 0 : binom(k + n, n); }

std::map<DivisorClass, std::uint64_t> slow_decompose(const PicBasisContext& ctx, const ToricDivisor& d,
                                                     std::int64_t p) {
  ThomsenSplitter s(ctx.fan(), d, p);
  const std::size_t n = ctx.fan().dim;
  std::map<DivisorClass, std::uint64_t> out;
  std::vector<std::int64_t> v(n, 0);
  for (;;) {
    ++out[ctx.to_class(s.summand_divisor(v))];
    std::size_t t = 0;
    while (t < n && ++v[t] == p) v[t++] = 0;
    if (t == n) break;
  }
  return out;
}

}  // namespace

TEST_SUITE("frobenius") {
  TEST_CASE("projective line") {
    Fan p1 = projective_space(1);
    auto ctx = PicBasisContext::build(p1, IndexSet{1});
    for (std::int64_t p : {2, 3, 5, 7})
      for (std::int64_t a = -8; a <= 8; ++a) {
        std::map<DivisorClass, std::uint64_t> expected;
        for (std::int64_t j = 0; j < p; ++j) {
          std::int64_t num = j - a;
          std::int64_t c = num >= 0 ? (num + p - 1) / p : -((-num) / p);
          ++expected[DivisorClass{{c}}];
        }
        auto dec = decompose(ctx, ToricDivisor{{0, a}}, p);
        CHECK(dec.summands == expected);
      }
  }

  TEST_CASE("projective spaces satisfy the Hilbert function identity") {
    for (std::int64_t n = 2; n <= 3; ++n) {
      Fan f = projective_space(static_cast<std::size_t>(n));
      auto ctx = PicBasisContext::build(f, IndexSet{static_cast<std::size_t>(n)});
      for (std::int64_t p : {2, 3, 5})
        for (std::int64_t a = -6; a <= 6; ++a) {
          ToricDivisor d = ToricDivisor::zero(f.ray_count());
          d.coeffs[0] = a;
          auto dec = decompose(ctx, d, p);
          std::uint64_t rank = 1;
          for (std::int64_t i = 0; i < n; ++i) rank *= static_cast<std::uint64_t>(p);
          CHECK(dec.total_multiplicity() == rank);
          for (std::int64_t t = -4; t <= 6; ++t) {
            std::int64_t lhs = 0;
            for (const auto& [cls, mult] : dec.summands)
              lhs += static_cast<std::int64_t>(mult) * h0_projective(n, t - cls.coords[0]);
            CHECK(lhs == h0_projective(n, a + p * t));
          }
        }
    }
    auto ctx = PicBasisContext::build(projective_space(3), IndexSet{3});
    auto classes = decompose(ctx, ToricDivisor::zero(4), 5).distinct_classes();
    CHECK(classes == std::set<DivisorClass>{{{0}}, {{1}}, {{2}}, {{3}}});
  }

  TEST_CASE("first Chern class is conserved") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> dist(-3, 3);
    for (const auto& r : load_catalog()) {
      auto ctx = PicBasisContext::build(r.fan, r.basis);
      for (std::int64_t p : {2, 3}) {
        ToricDivisor d = ToricDivisor::zero(r.fan.ray_count());
        for (auto& x : d.coeffs) x = dist(rng);
        auto dec = decompose(ctx, d, p);
        DivisorClass sum = ctx.zero_class();
        for (const auto& [cls, mult] : dec.summands) sum = sum + static_cast<std::int64_t>(mult) * cls;
        // p^{n-1} ((p-1)/2 (-K) - D), doubled to stay integral
        DivisorClass expected = (p * p) * ((p - 1) * ctx.anticanonical_class() - 2 * ctx.to_class(d));
        CHECK_MESSAGE(2 * sum == expected, r.id);
        CHECK(dec.total_multiplicity() == static_cast<std::uint64_t>(p * p * p));
      }
    }
  }

  TEST_CASE("fast kernel, base cone and projection formula") {
    for (const char* id : {"D1", "E1", "F2", "C5"}) {
      auto ctx = context(id);
      const auto& fan = ctx.fan();
      ToricDivisor d = ToricDivisor::zero(fan.ray_count());
      d.coeffs[0] = 2;
      d.coeffs[fan.ray_count() - 1] = -1;
      auto reference = decompose(ctx, d, 5);
      CHECK_MESSAGE(reference.summands == slow_decompose(ctx, d, 5), id);
      for (std::size_t base = 1; base < fan.max_cones.size(); base += 3)
        CHECK(decompose(ctx, d, 5, base).summands == reference.summands);

      ToricDivisor e = ToricDivisor::prime(fan.ray_count(), 1);
      ToricDivisor shifted = d;
      for (std::size_t i = 0; i < shifted.coeffs.size(); ++i) shifted.coeffs[i] += 5 * e.coeffs[i];
      std::map<DivisorClass, std::uint64_t> expected;
      for (const auto& [cls, mult] : reference.summands) expected[cls - ctx.to_class(e)] += mult;
      CHECK(decompose(ctx, shifted, 5).summands == expected);
    }
  }

  TEST_CASE("worked examples") {
    const auto& d1 = find_record("D1");
    ThomsenSplitter s(d1.fan, ToricDivisor::zero(6), 11, cone_index(d1.fan, {0, 1, 2}));
    std::size_t sigma3 = cone_index(d1.fan, {0, 3, 4});
    std::size_t sigma2 = cone_index(d1.fan, {0, 1, 5});
    for (std::int64_t a = 1; a < 11; ++a) {
      std::vector<std::int64_t> v1{a, 0, 0}, v3{0, 0, a};
      CHECK(s.h_vector(sigma3, v1) == std::vector<std::int64_t>{0, -1, -1});
      CHECK(s.h_vector(sigma2, v3) == std::vector<std::int64_t>{0, 0, -1});
    }
    auto ctx = context("D1");
    std::vector<std::int64_t> v{3, 0, 0};
    CHECK(ctx.format(ctx.to_class(s.summand_divisor(v))) == "O(Z4+Z5)");

    auto e1 = context("E1");
    ThomsenSplitter se(e1.fan(), ToricDivisor::zero(7), 11, cone_index(e1.fan(), {1, 2, 5}));
    std::vector<std::int64_t> w{0, 4, 0};
    CHECK(e1.format(e1.to_class(se.summand_divisor(w))) == "O(Z1+Z5+Z7)");
  }

  TEST_CASE("functionals agree on shared rays") {
    for (const char* id : {"D1", "E2", "F2"}) {
      auto ctx = context(id);
      ToricDivisor d = ToricDivisor::anticanonical(ctx.ray_count());
      ThomsenSplitter s(ctx.fan(), d, 7);
      std::mt19937_64 rng(3);
      std::uniform_int_distribution<std::int64_t> dist(0, 6);
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::int64_t> v{dist(rng), dist(rng), dist(rng)};
        for (std::size_t ray = 0; ray < ctx.ray_count(); ++ray) {
          auto vals = s.coefficient_over_cones(v, ray);
          REQUIRE_FALSE(vals.empty());
          CHECK(std::all_of(vals.begin(), vals.end(), [&](std::int64_t x) { return x == vals[0]; }));
        }
      }
    }
  }

  TEST_CASE("stabilization and argument checks") {
    auto ctx = context("D1");
    const std::int64_t primes[] = {31, 37};
    auto set = stable_summands(ctx, ToricDivisor::zero(6), primes);
    CHECK(set.size() == 9);
    CHECK_THROWS(decompose(ctx, ToricDivisor::zero(6), 9));
    const std::int64_t small[] = {2, 31};
    CHECK_THROWS_AS(stable_summands(ctx, ToricDivisor::zero(6), small), NotStabilized);
    CHECK(is_prime(2));
    CHECK(is_prime(37));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
  }
}
