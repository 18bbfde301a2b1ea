#pragma once

#include <cstdint>
#include <random>

namespace difflearn {

using Rng = std::mt19937_64;

// Independent stream tags so that each consumer of randomness draws from its
// own generator regardless of scheduling order.
enum class StreamTag : std::uint32_t {
  Topology = 1,
  AgentParams = 2,
  Environment = 3,
  Requests = 4,
  MonteCarlo = 5,
  Design = 6,
};

inline Rng make_stream(std::uint64_t master_seed, StreamTag tag,
                       std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(tag),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace difflearn
