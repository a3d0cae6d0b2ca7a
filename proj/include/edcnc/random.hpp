#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "edcnc/codec.hpp"

namespace edcnc {

template <typename Rng>
Generation random_generation(std::size_t d_raw, std::size_t l, Rng& rng, std::uint32_t generation_id = 0) {
  std::bernoulli_distribution coin(0.5);
  std::vector<BitStream> streams(d_raw, BitStream(l));
  for (auto& s : streams)
    for (std::size_t k = 0; k < l; ++k) s.set(k, coin(rng));
  return Generation(std::move(streams), generation_id);
}

}  // namespace edcnc
