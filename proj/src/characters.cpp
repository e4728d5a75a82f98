#include "sfclust/characters.hpp"

#include <cmath>
#include <numeric>

#include "sfclust/arith.hpp"
#include "sfclust/errors.hpp"

namespace sfclust::expsum {

namespace {

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, b = a % m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

// least primitive root mod p^e (p odd prime)
std::uint64_t least_primitive_root(std::uint64_t pe, std::uint64_t p) {
  std::uint64_t phi = pe / p * (p - 1);
  auto factors = arith::factor_u64(phi);
  for (std::uint64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool primitive = true;
    for (auto [q, e] : factors) {
      (void)e;
      if (powmod(g, phi / q, pe) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw InternalError("least_primitive_root: none found (non-cyclic modulus?)");
}

GroupComponent cyclic_component(std::uint64_t pe, std::uint64_t g, std::uint64_t order) {
  GroupComponent c;
  c.prime_power = pe;
  c.generator = g;
  c.order = order;
  c.dlog.assign(pe, UINT32_MAX);
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    c.dlog[v] = static_cast<std::uint32_t>(i);
    v = static_cast<std::uint64_t>((unsigned __int128)v * g % pe);
  }
  return c;
}

}  // namespace

CharacterGroup::CharacterGroup(std::uint64_t q) : q_(q) {
  if (q < 1) throw InvalidInput("CharacterGroup: q >= 1 required");
  phi_ = arith::euler_phi_u64(q);
  for (auto [p, e] : arith::factor_u64(q)) {
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;  // trivial unit group
      if (e == 2) {
        comps_.push_back(cyclic_component(4, 3, 2));
        continue;
      }
      // (Z/2^e)* = <-1> x <5>
      comps_.push_back(cyclic_component(pe, pe - 1, 2));
      // dlog table of the <5> part needs the sign stripped; build both
      // jointly instead.
      GroupComponent five;
      five.prime_power = pe;
      five.generator = 5;
      five.order = pe / 4;
      five.dlog.assign(pe, UINT32_MAX);
      GroupComponent& sign = comps_.back();
      sign.dlog.assign(pe, UINT32_MAX);
      std::uint64_t v = 1;
      for (std::uint64_t j = 0; j < five.order; ++j) {
        sign.dlog[v] = 0;
        five.dlog[v] = static_cast<std::uint32_t>(j);
        std::uint64_t w = pe - v;  // -5^j
        sign.dlog[w] = 1;
        five.dlog[w] = static_cast<std::uint32_t>(j);
        v = static_cast<std::uint64_t>((unsigned __int128)v * 5 % pe);
      }
      comps_.push_back(std::move(five));
    } else {
      std::uint64_t order = pe / p * (p - 1);
      std::uint64_t g = least_primitive_root(pe, p);
      comps_.push_back(cyclic_component(pe, g, order));
    }
  }
}

std::optional<std::vector<std::uint32_t>> CharacterGroup::dlogs(std::uint64_t n) const {
  n %= q_;
  if (q_ == 1) return std::vector<std::uint32_t>{};
  if (std::gcd(n, q_) != 1) return std::nullopt;
  std::vector<std::uint32_t> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) {
    std::uint32_t l = c.dlog[n % c.prime_power];
    if (l == UINT32_MAX) return std::nullopt;
    out.push_back(l);
  }
  return out;
}

bool DirichletCharacter::principal() const {
  for (std::uint32_t e : exponents_)
    if (e != 0) return false;
  return true;
}

std::optional<std::pair<std::int64_t, std::int64_t>> DirichletCharacter::angle(
    std::uint64_t n) const {
  auto logs = group_->dlogs(n);
  if (!logs) return std::nullopt;
  // sum of e_c * l_c / ord_c as an exact fraction of a turn
  std::int64_t num = 0, den = 1;
  const auto& comps = group_->components();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto ord = static_cast<std::int64_t>(comps[c].order);
    auto contrib = static_cast<std::int64_t>(
        static_cast<__int128>(exponents_[c]) * (*logs)[c] % ord);
    std::int64_t g = std::gcd(den, ord);
    std::int64_t lcm = den / g * ord;
    num = num * (lcm / den) + contrib * (lcm / ord);
    den = lcm;
    num %= den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return std::make_pair(num, den);
}

std::complex<double> DirichletCharacter::operator()(std::uint64_t n) const {
  auto a = angle(n);
  if (!a) return {0.0, 0.0};
  double theta = 2.0 * M_PI * static_cast<double>(a->first) / static_cast<double>(a->second);
  return {std::cos(theta), std::sin(theta)};
}

std::vector<DirichletCharacter> characters_mod(std::uint64_t q) {
  auto group = std::make_shared<const CharacterGroup>(q);
  const auto& comps = group->components();
  std::vector<DirichletCharacter> out;
  out.reserve(group->order());
  std::vector<std::uint32_t> exps(comps.size(), 0);
  for (;;) {
    out.emplace_back(group, exps);
    std::size_t i = 0;
    while (i < comps.size() && ++exps[i] == comps[i].order) {
      exps[i] = 0;
      ++i;
    }
    if (i == comps.size()) break;
  }
  if (out.size() != group->order())
    throw InternalError("characters_mod: character count != phi(q)");
  return out;
}

}  // namespace sfclust::expsum
