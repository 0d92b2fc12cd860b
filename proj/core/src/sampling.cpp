#include "symstable/sampling.hpp"

#include <cmath>
#include <numbers>

namespace symstable {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) noexcept : seed_(seed), key_(mix(seed)) {}

std::uint64_t RngStream::next_u64() noexcept {
  ++counter_;
  return mix(key_ + counter_ * kGolden);
}

double RngStream::uniform_open() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

RngStream RngStream::split(std::uint64_t index) const noexcept {
  return RngStream(seed_, mix(key_ ^ mix(index + 0x632BE59BD9B4E019ULL)));
}

double sample_one(const StableParams& p, RngStream& rng) {
  const double a = p.alpha();
  const double u = std::numbers::pi * (rng.uniform_open() - 0.5);
  if (a == 1.0) return p.mu() + p.sigma() * std::tan(u);
  const double w = -std::log(rng.uniform_open());
  const double x = std::sin(a * u) / std::pow(std::cos(u), 1.0 / a) *
                   std::pow(std::cos((1.0 - a) * u) / w, (1.0 - a) / a);
  return p.mu() + p.sigma() * x;
}

std::vector<double> sample(const StableParams& p, std::size_t n, RngStream& rng) {
  std::vector<double> out(n);
  for (double& v : out) v = sample_one(p, rng);
  return out;
}

}  // namespace symstable
