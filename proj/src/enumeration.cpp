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

#include "cliquelab/enumeration.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "cliquelab/parallel.hpp"

namespace cliquelab {
namespace {

void check_capacity(unsigned r, unsigned capacity) {
  if (r > capacity || r > 32)
    throw CapacityError("exact enumeration over " + std::to_string(r) + " variables exceeds capacity " +
                        std::to_string(capacity));
}

using Counts = std::vector<std::uint64_t>;

// Lane i of word b has bit b of i set.
constexpr std::uint64_t kLowBitLanes[6] = {0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
                                           0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};

Counts add_counts(Counts a, const Counts& b) {
  if (a.empty()) return b;
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

double BernoulliProfile::expectation(double p) const {
  double total = 0.0;
  for (unsigned k = 0; k <= variables; ++k) {
    if (counts[k] == 0) continue;
    total += static_cast<double>(counts[k]) * std::pow(p, k) * std::pow(1.0 - p, variables - k);
  }
  return total;
}

Rational BernoulliProfile::expectation(const Rational& p) const {
  // Common denominator: with p = a/b the weight of k ones is a^k (b-a)^(r-k) / b^r.
  const BigInt a = boost::multiprecision::numerator(p);
  const BigInt b = boost::multiprecision::denominator(p);
  const BigInt c = b - a;
  BigInt total = 0;
  BigInt a_pow = 1;
  std::vector<BigInt> c_pow(variables + 1);
  c_pow[0] = 1;
  for (unsigned k = 1; k <= variables; ++k) c_pow[k] = c_pow[k - 1] * c;
  for (unsigned k = 0; k <= variables; ++k) {
    if (counts[k] != 0) total += BigInt(counts[k]) * a_pow * c_pow[variables - k];
    a_pow *= a;
  }
  return Rational(total, boost::multiprecision::pow(b, variables));
}

std::vector<std::uint32_t> minimal_masks(std::span<const std::uint32_t> masks) {
  std::vector<std::uint32_t> sorted(masks.begin(), masks.end());
  std::sort(sorted.begin(), sorted.end(), [](std::uint32_t x, std::uint32_t y) {
    const int px = std::popcount(x), py = std::popcount(y);
    return px != py ? px < py : x < y;
  });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::uint32_t> out;
  for (std::uint32_t m : sorted) {
    const bool absorbed = std::any_of(out.begin(), out.end(), [m](std::uint32_t o) { return (o & ~m) == 0; });
    if (!absorbed) out.push_back(m);
  }
  return out;
}

BernoulliProfile covering_profile(std::span<const std::uint32_t> masks, unsigned r, unsigned capacity) {
  check_capacity(r, capacity);
  const std::vector<std::uint32_t> minimal = minimal_masks(masks);
  BernoulliProfile profile{r, Counts(r + 1, 0)};
  if (minimal.empty()) return profile;

  // One bit per assignment. Seed the masks, then close upwards one variable
  // at a time: variables below 6 move within a word, the rest across words.
  const std::uint64_t words = r < 6 ? 1 : std::uint64_t{1} << (r - 6);
  std::vector<std::uint64_t> covered(words, 0);
  for (std::uint32_t m : minimal) covered[m >> 6] |= std::uint64_t{1} << (m & 63);
  for (unsigned b = 0; b < std::min(r, 6u); ++b) {
    const std::uint64_t without = ~kLowBitLanes[b];
    for (auto& w : covered) w |= (w & without) << (1u << b);
  }
  for (unsigned b = 6; b < r; ++b) {
    const std::uint64_t stride = std::uint64_t{1} << (b - 6);
    for (std::uint64_t w = 0; w < words; ++w)
      if ((w & stride) == 0) covered[w | stride] |= covered[w];
  }

  std::array<std::uint64_t, 7> lanes_of_weight{};
  for (unsigned lane = 0; lane < 64; ++lane) lanes_of_weight[std::popcount(lane)] |= std::uint64_t{1} << lane;
  for (std::uint64_t w = 0; w < words; ++w) {
    const std::uint64_t bits = covered[w];
    if (bits == 0) continue;
    const unsigned high = static_cast<unsigned>(std::popcount(w));
    for (unsigned j = 0; j <= 6 && high + j <= r; ++j)
      profile.counts[high + j] += static_cast<std::uint64_t>(std::popcount(bits & lanes_of_weight[j]));
  }
  return profile;
}

BernoulliProfile max_overlap_profile(std::span<const std::uint32_t> masks, unsigned r, unsigned capacity) {
  check_capacity(r, capacity);
  BernoulliProfile profile{r, Counts(r + 1, 0)};
  if (masks.empty()) return profile;
  std::vector<std::uint32_t> distinct(masks.begin(), masks.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const std::uint64_t states = std::uint64_t{1} << r;
  profile.counts = parallel_reduce<Counts>(states, [&](std::uint64_t begin, std::uint64_t end) {
    Counts local(r + 1, 0);
    for (std::uint64_t s = begin; s < end; ++s) {
      const auto state = static_cast<std::uint32_t>(s);
      int best = 0;
      for (std::uint32_t m : distinct) best = std::max(best, std::popcount(state & m));
      local[std::popcount(state)] += static_cast<std::uint64_t>(best);
    }
    return local;
  }, add_counts);
  return profile;
}

}  // namespace cliquelab
