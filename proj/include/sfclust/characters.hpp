#ifndef SFCLUST_CHARACTERS_HPP
#define SFCLUST_CHARACTERS_HPP

// Dirichlet characters mod q, stored as exponent vectors against fixed
// generators of the unit group: the least primitive root for each odd
// prime-power factor, and the pair (-1, 5) for powers of two.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace sfclust::expsum {

struct GroupComponent {
  std::uint64_t prime_power = 1;  // p^e
  std::uint64_t generator = 1;
  std::uint64_t order = 1;
  // discrete log of each residue mod p^e (only meaningful for units)
  std::vector<std::uint32_t> dlog;
};

// Cyclic decomposition of (Z/q)^* with per-residue discrete logs.
class CharacterGroup {
public:
  explicit CharacterGroup(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  std::uint64_t order() const { return phi_; }  // phi(q)
  const std::vector<GroupComponent>& components() const { return comps_; }

  // exponent of n against component c, or nullopt when gcd(n, q) > 1
  std::optional<std::vector<std::uint32_t>> dlogs(std::uint64_t n) const;

private:
  std::uint64_t q_;
  std::uint64_t phi_;
  std::vector<GroupComponent> comps_;
};

class DirichletCharacter {
public:
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group,
                     std::vector<std::uint32_t> exponents)
      : group_(std::move(group)), exponents_(std::move(exponents)) {}

  std::uint64_t modulus() const { return group_->modulus(); }
  const std::vector<std::uint32_t>& exponents() const { return exponents_; }
  bool principal() const;

  // chi(n); zero when gcd(n, q) > 1
  std::complex<double> operator()(std::uint64_t n) const;

  // exact angle of chi(n) as a reduced fraction of a full turn
  std::optional<std::pair<std::int64_t, std::int64_t>> angle(std::uint64_t n) const;

private:
  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::uint32_t> exponents_;
};

// All phi(q) characters mod q, in mixed-radix exponent order.
std::vector<DirichletCharacter> characters_mod(std::uint64_t q);

}  // namespace sfclust::expsum

#endif
