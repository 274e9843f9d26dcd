#include "toric/frobenius.hpp"

#include <algorithm>
#include <sstream>

#include "toric/checked.hpp"
#include "toric/errors.hpp"
#include "toric/parallel.hpp"

namespace toric {

ConeFrame ConeFrame::build(const Fan& fan, std::size_t base_cone) {
  if (base_cone >= fan.max_cones.size()) throw Error("base cone index out of range");
  ConeFrame f;
  f.base_cone = base_cone;
  for (std::size_t i = 0; i < fan.max_cones.size(); ++i) {
    f.A.push_back(fan.cone_matrix(i));
    f.B.push_back(unimodular_inverse(f.A.back()));
  }
  for (std::size_t i = 0; i < fan.max_cones.size(); ++i) f.C.push_back(f.A[i] * f.B[base_cone]);
  return f;
}

DivisionStep divide_step(const IntMatrix& C, std::span<const std::int64_t> w,
                         std::span<const std::int64_t> v, std::int64_t p) {
  const std::size_t n = C.rows();
  if (C.cols() != v.size() || w.size() != n) throw Error("divide_step: dimension mismatch");
  if (p <= 0) throw Error("divide_step: modulus must be positive");
  DivisionStep out;
  out.quotient.resize(n);
  out.remainder.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    Integer d = static_cast<long>(w[t]);
    for (std::size_t k = 0; k < v.size(); ++k) d += C(t, k) * static_cast<long>(v[k]);
    Integer h, r;
    mpz_fdiv_qr_ui(h.get_mpz_t(), r.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(p));
    out.quotient[t] = to_int64(h);
    out.remainder[t] = to_int64(r);
  }
  return out;
}

ThomsenSplitter::ThomsenSplitter(const Fan& fan, const ToricDivisor& divisor, std::int64_t p,
                                 std::size_t base_cone)
    : fan_(fan), frame_(ConeFrame::build(fan, base_cone)), p_(p), n_(fan.dim) {
  if (p < 2) throw Error("Thomsen splitting needs p >= 2");
  if (divisor.coeffs.size() != fan.ray_count())
    throw Error("divisor length does not match the ray count");

  const std::size_t cones = fan.max_cones.size();
  for (std::size_t i = 0; i < cones; ++i) {
    C64_.push_back(frame_.C[i].to_int64());
    B64_.push_back(frame_.B[i].to_int64());
  }

  // Cartier data in cone coordinates: the t-th entry is <m_i, v_{i_t}> = a_{i_t}.
  std::vector<std::vector<std::int64_t>> local(cones, std::vector<std::int64_t>(n_));
  for (std::size_t i = 0; i < cones; ++i)
    for (std::size_t t = 0; t < n_; ++t) local[i][t] = divisor.coeffs[fan.max_cones[i][t]];

  const auto& ul = local[base_cone];
  shifts_.assign(cones, std::vector<std::int64_t>(n_));
  for (std::size_t i = 0; i < cones; ++i)
    for (std::size_t t = 0; t < n_; ++t) {
      std::int64_t acc = local[i][t];
      for (std::size_t k = 0; k < n_; ++k)
        acc = checked::sub(acc, checked::mul(C64_[i][t * n_ + k], ul[k]));
      shifts_[i][t] = acc;
    }

  home_cone_.assign(fan.ray_count(), cones);
  for (std::size_t i = cones; i-- > 0;)
    for (auto r : fan.max_cones[i]) home_cone_[r] = i;
  for (std::size_t r = 0; r < fan.ray_count(); ++r)
    if (home_cone_[r] == cones)
      throw RayNotCovered("ray " + std::to_string(r + 1) + " lies in no maximal cone");
}

std::vector<std::int64_t> ThomsenSplitter::h_vector(std::size_t cone,
                                                    std::span<const std::int64_t> v) const {
  const auto& C = C64_[cone];
  const auto& w = shifts_[cone];
  std::vector<std::int64_t> h(n_);
  for (std::size_t t = 0; t < n_; ++t) {
    std::int64_t d = w[t];
    for (std::size_t k = 0; k < n_; ++k) d = checked::add(d, checked::mul(C[t * n_ + k], v[k]));
    h[t] = checked::floor_div(d, p_);
  }
  return h;
}

std::vector<std::int64_t> ThomsenSplitter::functional(std::size_t cone,
                                                      std::span<const std::int64_t> v) const {
  const auto h = h_vector(cone, v);
  const auto& B = B64_[cone];
  std::vector<std::int64_t> l(n_, 0);
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t t = 0; t < n_; ++t) l[k] = checked::add(l[k], checked::mul(B[k * n_ + t], h[t]));
  return l;
}

std::int64_t ThomsenSplitter::pairing_with_ray(std::size_t cone, std::span<const std::int64_t> v,
                                               std::size_t ray) const {
  const auto l = functional(cone, v);
  std::int64_t acc = 0;
  for (std::size_t k = 0; k < n_; ++k) acc = checked::add(acc, checked::mul(l[k], fan_.rays[ray][k]));
  return acc;
}

ToricDivisor ThomsenSplitter::summand_divisor(std::span<const std::int64_t> v) const {
  if (v.size() != n_) throw Error("summand_divisor: vector has wrong length");
  const std::size_t m = fan_.ray_count();
  ToricDivisor d = ToricDivisor::zero(m);
  std::vector<std::vector<std::int64_t>> cache(frame_.A.size());
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t k = home_cone_[j];
    if (cache[k].empty()) cache[k] = functional(k, v);
    std::int64_t acc = 0;
    for (std::size_t c = 0; c < n_; ++c)
      acc = checked::add(acc, checked::mul(cache[k][c], fan_.rays[j][c]));
    d.coeffs[j] = -acc;
  }
  return d;
}

std::vector<std::int64_t> ThomsenSplitter::coefficient_over_cones(std::span<const std::int64_t> v,
                                                                  std::size_t ray) const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < fan_.max_cones.size(); ++i) {
    const auto& c = fan_.max_cones[i];
    if (std::find(c.begin(), c.end(), ray) != c.end()) out.push_back(-pairing_with_ray(i, v, ray));
  }
  return out;
}

std::uint64_t FrobeniusDecomposition::total_multiplicity() const {
  std::uint64_t total = 0;
  for (const auto& [cls, mult] : summands) total += mult;
  return total;
}

std::set<DivisorClass> FrobeniusDecomposition::distinct_classes() const {
  std::set<DivisorClass> out;
  for (const auto& [cls, mult] : summands) out.insert(cls);
  return out;
}

namespace {

// class(D_v) = sum over home cones k of G_k h_k(v), with
// G_k = -encoder[:, rays homed in k] * rays * B_k (rank x n).
struct ClassKernel {
  struct Term {
    std::vector<std::int64_t> C;      // n x n
    std::vector<std::int64_t> shift;  // n
    std::vector<std::int64_t> G;      // rank x n
  };
  std::vector<Term> terms;
  std::size_t n = 0;
  std::size_t rank = 0;
  std::int64_t p = 0;

  ClassKernel(const PicBasisContext& ctx, const ThomsenSplitter& s) : n(s.dim()), rank(ctx.rank()), p(s.prime()) {
    const Fan& fan = ctx.fan();
    const std::size_t m = fan.ray_count();
    std::vector<std::size_t> home(m, fan.max_cones.size());
    for (std::size_t i = fan.max_cones.size(); i-- > 0;)
      for (auto r : fan.max_cones[i]) home[r] = i;
    for (std::size_t k = 0; k < fan.max_cones.size(); ++k) {
      IntMatrix G(rank, n);
      bool used = false;
      for (std::size_t j = 0; j < m; ++j) {
        if (home[j] != k) continue;
        used = true;
        ToricDivisor e = ToricDivisor::prime(m, j);
        DivisorClass cls = ctx.to_class(e);
        for (std::size_t a = 0; a < rank; ++a)
          for (std::size_t c = 0; c < n; ++c)
            G(a, c) -= Integer(static_cast<long>(cls.coords[a])) * static_cast<long>(fan.rays[j][c]);
      }
      if (!used) continue;
      G = G * s.frame().B[k];
      terms.push_back({s.frame().C[k].to_int64(), s.shift(k), G.to_int64()});
    }
  }

  void evaluate(std::span<const std::int64_t> v, std::vector<std::int64_t>& h,
                std::vector<std::int64_t>& out) const {
    std::fill(out.begin(), out.end(), 0);
    for (const auto& t : terms) {
      for (std::size_t r = 0; r < n; ++r) {
        std::int64_t d = t.shift[r];
        for (std::size_t c = 0; c < n; ++c) d = checked::add(d, checked::mul(t.C[r * n + c], v[c]));
        h[r] = checked::floor_div(d, p);
      }
      for (std::size_t a = 0; a < rank; ++a)
        for (std::size_t c = 0; c < n; ++c) out[a] = checked::add(out[a], checked::mul(t.G[a * n + c], h[c]));
    }
  }
};

}  // namespace

FrobeniusDecomposition decompose(const PicBasisContext& ctx, const ToricDivisor& divisor,
                                 std::int64_t p, std::size_t base_cone) {
  if (!is_prime(p)) throw Error("decompose: " + std::to_string(p) + " is not prime");
  const ThomsenSplitter splitter(ctx.fan(), divisor, p, base_cone);
  const ClassKernel kernel(ctx, splitter);
  const std::size_t n = splitter.dim();

  std::vector<std::map<DivisorClass, std::uint64_t>> partial(static_cast<std::size_t>(p));
  parallel_for_slices(static_cast<std::size_t>(p), [&](std::size_t slice) {
    auto& local = partial[slice];
    std::vector<std::int64_t> v(n, 0), h(n);
    DivisorClass cls{std::vector<std::int64_t>(ctx.rank())};
    v[0] = static_cast<std::int64_t>(slice);
    for (;;) {
      kernel.evaluate(v, h, cls.coords);
      ++local[cls];
      std::size_t k = n;
      while (k > 1) {
        if (++v[k - 1] < p) break;
        v[k - 1] = 0;
        --k;
      }
      if (k <= 1) break;
    }
  });

  FrobeniusDecomposition out;
  out.prime = p;
  out.divisor_input = ctx.to_class(divisor);
  for (const auto& local : partial)
    for (const auto& [cls, mult] : local) out.summands[cls] += mult;
  return out;
}

std::set<DivisorClass> stable_summands(const PicBasisContext& ctx, const ToricDivisor& divisor,
                                       std::span<const std::int64_t> primes) {
  if (primes.empty()) throw Error("stable_summands: no primes supplied");
  std::vector<std::set<DivisorClass>> sets;
  for (auto p : primes) sets.push_back(decompose(ctx, divisor, p).distinct_classes());
  bool agree = std::all_of(sets.begin(), sets.end(), [&](const auto& s) { return s == sets.front(); });
  if (agree) return sets.front();

  std::ostringstream os;
  os << "summand sets differ across primes:";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    os << "\n  p=" << primes[i] << ":";
    for (const auto& c : sets[i]) os << ' ' << ctx.format(c);
  }
  throw NotStabilized(os.str());
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace toric
