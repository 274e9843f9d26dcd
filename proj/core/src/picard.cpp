#include "toric/picard.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "toric/checked.hpp"
#include "toric/errors.hpp"

namespace toric {

ToricDivisor ToricDivisor::prime(std::size_t m, std::size_t rho) {
  ToricDivisor d = zero(m);
  d.coeffs.at(rho) = 1;
  return d;
}

namespace {

template <typename V>
V combine(const V& a, const V& b, int sign) {
  if (a.size() != b.size()) throw Error("dimension mismatch in divisor arithmetic");
  V out = a;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = sign > 0 ? checked::add(a[i], b[i]) : checked::sub(a[i], b[i]);
  return out;
}

}  // namespace

ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b) {
  return {combine(a.coeffs, b.coeffs, 1)};
}
ToricDivisor operator-(const ToricDivisor& a, const ToricDivisor& b) {
  return {combine(a.coeffs, b.coeffs, -1)};
}
ToricDivisor operator-(const ToricDivisor& a) {
  return ToricDivisor::zero(a.coeffs.size()) - a;
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  return {combine(a.coords, b.coords, 1)};
}
DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
  return {combine(a.coords, b.coords, -1)};
}
DivisorClass operator-(const DivisorClass& a) {
  return DivisorClass{std::vector<std::int64_t>(a.coords.size(), 0)} - a;
}
DivisorClass operator*(std::int64_t k, const DivisorClass& a) {
  DivisorClass out = a;
  for (auto& x : out.coords) x = checked::mul(k, x);
  return out;
}

bool DivisorClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](auto x) { return x == 0; });
}

std::int64_t DivisorClass::max_abs() const {
  std::int64_t best = 0;
  for (auto x : coords) best = std::max(best, x < 0 ? -x : x);
  return best;
}

PicBasisContext PicBasisContext::build(const Fan& fan, std::optional<IndexSet> basis_divisors) {
  PicBasisContext ctx;
  ctx.fan_ = fan;
  const std::size_t m = fan.ray_count();
  const std::size_t n = fan.dim;
  ctx.pairing_ = IntMatrix::from_rows(fan.rays);

  SNFResult snf = smith_normal_form(ctx.pairing_);
  if (snf.rank() != n) throw TorsionInPicard("ray generators do not span the lattice");
  for (std::size_t i = 0; i < n; ++i)
    if (snf.D(i, i) != 1)
      throw TorsionInPicard("Pic has torsion: invariant factor " + snf.D(i, i).get_str());

  const std::size_t r = m - n;
  IntMatrix bottom(r, m);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m; ++j) bottom(i, j) = snf.U(n + i, j);

  IntMatrix encoder;
  IntMatrix decoder(m, r);
  if (basis_divisors) {
    IndexSet b = *basis_divisors;
    if (b.size() != r)
      throw NotABasis("expected " + std::to_string(r) + " basis divisors, got " +
                      std::to_string(b.size()));
    for (auto rho : b)
      if (rho >= m) throw NotABasis("basis divisor index out of range");
    IntMatrix E(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) E(i, k) = bottom(i, b[k]);
    if (!is_unimodular(E))
      throw NotABasis("classes of " + format_index_set(b) + " do not freely generate Pic");
    encoder = unimodular_inverse(E) * bottom;
    for (std::size_t k = 0; k < r; ++k) decoder(b[k], k) = 1;
    ctx.basis_ = std::move(b);
  } else {
    encoder = bottom;
    IntMatrix Uinv = unimodular_inverse(snf.U);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < r; ++k) decoder(j, k) = Uinv(j, n + k);
  }

  ctx.encoder_.assign(r, std::vector<std::int64_t>(m));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m; ++j) ctx.encoder_[i][j] = to_int64(encoder(i, j));
  ctx.decoder_.assign(m, std::vector<std::int64_t>(r));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < r; ++k) ctx.decoder_[j][k] = to_int64(decoder(j, k));
  return ctx;
}

DivisorClass PicBasisContext::to_class(const ToricDivisor& d) const {
  if (d.coeffs.size() != ray_count()) throw Error("divisor length does not match the ray count");
  DivisorClass c{std::vector<std::int64_t>(rank(), 0)};
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < ray_count(); ++j)
      c.coords[i] = checked::add(c.coords[i], checked::mul(encoder_[i][j], d.coeffs[j]));
  return c;
}

ToricDivisor PicBasisContext::representative(const DivisorClass& c) const {
  if (c.coords.size() != rank()) throw Error("class length does not match the Picard rank");
  ToricDivisor d = ToricDivisor::zero(ray_count());
  for (std::size_t j = 0; j < ray_count(); ++j)
    for (std::size_t k = 0; k < rank(); ++k)
      d.coeffs[j] = checked::add(d.coeffs[j], checked::mul(decoder_[j][k], c.coords[k]));
  return d;
}

bool PicBasisContext::are_linearly_equivalent(const ToricDivisor& a, const ToricDivisor& b) const {
  return to_class(a) == to_class(b);
}

DivisorClass PicBasisContext::anticanonical_class() const {
  return to_class(ToricDivisor::anticanonical(ray_count()));
}

DivisorClass PicBasisContext::class_of_ray(std::size_t rho) const {
  return to_class(ToricDivisor::prime(ray_count(), rho));
}

std::string PicBasisContext::format(const DivisorClass& c) const {
  if (c.is_zero()) return "O";
  std::ostringstream os;
  os << "O(";
  if (basis_) {
    bool first = true;
    auto emit = [&](bool positive) {
      for (std::size_t k = 0; k < c.coords.size(); ++k) {
        std::int64_t x = c.coords[k];
        if (x == 0 || (x > 0) != positive) continue;
        if (x < 0)
          os << '-';
        else if (!first)
          os << '+';
        std::int64_t a = x < 0 ? -x : x;
        if (a != 1) os << a;
        os << 'Z' << (*basis_)[k] + 1;
        first = false;
      }
    };
    emit(true);
    emit(false);
  } else {
    for (std::size_t k = 0; k < c.coords.size(); ++k) os << (k ? "," : "") << c.coords[k];
  }
  os << ')';
  return os.str();
}

DivisorClass PicBasisContext::parse(std::string_view text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) || (!s.empty() && s.back() != ' '))
      s.push_back(std::isspace(static_cast<unsigned char>(ch)) ? ' ' : ch);
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw ParseError("empty class expression");

  if (s.find('Z') == std::string::npos && s.find('z') == std::string::npos) {
    if (s == "O" || s == "0") return zero_class();
    std::istringstream is(s);
    std::vector<std::int64_t> coords;
    std::string tok;
    while (is >> tok) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw ParseError("bad coordinate '" + tok + "'");
        coords.push_back(v);
      } catch (const std::logic_error&) {
        throw ParseError("bad coordinate '" + tok + "'");
      }
    }
    if (coords.size() != rank())
      throw ParseError("expected " + std::to_string(rank()) + " class coordinates, got " +
                       std::to_string(coords.size()));
    return {coords};
  }

  std::string body;
  for (char ch : s)
    if (ch != ' ') body.push_back(ch);
  if (body.size() >= 3 && body[0] == 'O' && body[1] == '(' && body.back() == ')')
    body = body.substr(2, body.size() - 3);

  ToricDivisor d = ToricDivisor::zero(ray_count());
  std::size_t i = 0;
  auto fail = [&]() { throw ParseError("cannot parse class expression '" + std::string(text) + "'"); };
  while (i < body.size()) {
    std::int64_t sign = 1;
    if (body[i] == '+' || body[i] == '-') {
      sign = body[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail();
    }
    std::int64_t coef = 1;
    std::size_t start = i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
    if (i > start) coef = std::stoll(body.substr(start, i - start));
    if (i < body.size() && body[i] == '*') ++i;
    if (i >= body.size() || (body[i] != 'Z' && body[i] != 'z')) fail();
    ++i;
    if (i < body.size() && body[i] == '_') ++i;
    start = i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
    if (i == start) fail();
    std::size_t ray = std::stoul(body.substr(start, i - start));
    if (ray == 0 || ray > ray_count()) throw ParseError("ray index Z" + std::to_string(ray) + " out of range");
    d.coeffs[ray - 1] = checked::add(d.coeffs[ray - 1], checked::mul(sign, coef));
  }
  return to_class(d);
}

}  // namespace toric
