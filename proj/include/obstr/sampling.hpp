#pragma once
/**
 * @file sampling.hpp
 * @brief Random admissible local action data for property suites.
 */

#include <cstdint>
#include <optional>
#include <random>

#include "obstr/ramification.hpp"

namespace obstr {

struct SamplerOptions {
  long long max_gap = 6;          ///< consecutive jump positions differ by 1..max_gap
  double tame_datum_rate = 0.5;   ///< probability of attaching a tame character datum
  ValidationLevel level = ValidationLevel::Structural;
  int attempts = 400;
};

/// Draws random normal chains inside the Sylow subgroup and keeps the first
/// one that passes validation at the requested level.
class Sampler {
 public:
  Sampler(GroupPtr G, int p, SamplerOptions options = {});
  ~Sampler();
  Sampler(Sampler&&) noexcept;
  std::optional<LocalActionData> draw(std::mt19937_64& rng) const;
  const Validator& validator() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace obstr
