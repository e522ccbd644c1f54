#include <cmath>
#include <numbers>

#include "grassgeo/numkernel.hpp"

namespace grassgeo {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() {
  // 53 random mantissa bits, shifted into (0, 1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols, Field field) {
  Matrix m(rows, cols, field);
  for (auto& z : m.data()) {
    const double re = rng.gaussian();
    const double im = field == Field::complex ? rng.gaussian() : 0.0;
    z = Scalar(re, im);
  }
  return m;
}

Matrix random_hermitian(Rng& rng, std::size_t n, Field field) {
  return hermitian_part(random_gaussian(rng, n, n, field));
}

Matrix random_orthonormal_frame(Rng& rng, std::size_t n_ambient, std::size_t n_cols, Field field) {
  if (n_cols > n_ambient) {
    throw DomainError("random_orthonormal_frame: requested " + std::to_string(n_cols) +
                      " columns in dimension " + std::to_string(n_ambient));
  }
  // Gaussian columns are independent with probability one; redraw on the
  // measure-zero failure.
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return orthonormalize_columns(random_gaussian(rng, n_ambient, n_cols, field));
    } catch (const DomainError&) {
    }
  }
  throw DomainError("random_orthonormal_frame: repeated rank-deficient draws");
}

}  // namespace grassgeo
