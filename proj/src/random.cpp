// Copyright 2026 The cliquelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cliquelab/random.hpp"

namespace cliquelab {

SeedSpec SeedSpec::substream(std::uint64_t id) const {
  return SeedSpec{master_seed, splitmix64(stream_id ^ splitmix64(id + 0x5851F42D4C957F2DULL))};
}

Rng Rng::for_trial(const SeedSpec& seed, std::uint64_t trial) {
  std::uint64_t s = splitmix64(seed.master_seed);
  s = splitmix64(s ^ (seed.stream_id + 0xD1B54A32D192ED03ULL));
  s = splitmix64(s ^ (trial * 0x9E3779B97F4A7C15ULL + 1));
  return Rng(s);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection; exact for every bound.
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace cliquelab
