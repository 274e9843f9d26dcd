#pragma once

#include "toric/catalog.hpp"
#include "toric/fan.hpp"
#include "toric/picard.hpp"

namespace testing_support {

inline toric::Fan projective_space(std::size_t n) {
  toric::Fan f;
  f.dim = n;
  for (std::size_t i = 0; i < n; ++i) {
    toric::LatticeVector e(n, 0);
    e[i] = 1;
    f.rays.push_back(e);
  }
  f.rays.push_back(toric::LatticeVector(n, -1));
  for (std::size_t skip = n + 1; skip-- > 0;) {
    toric::IndexSet c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    f.max_cones.push_back(c);
  }
  return f;
}

// Hirzebruch surface F_a: rays (1,0), (0,1), (-1,a), (0,-1).
inline toric::Fan hirzebruch(std::int64_t a) {
  return {2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
}

inline toric::PicBasisContext context(const char* id) {
  const auto& r = toric::find_record(id);
  return toric::PicBasisContext::build(r.fan, r.basis);
}

}  // namespace testing_support
