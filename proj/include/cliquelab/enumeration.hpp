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

#ifndef CLIQUELAB_ENUMERATION_HPP_
#define CLIQUELAB_ENUMERATION_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "cliquelab/common.hpp"

namespace cliquelab {

/// Largest number of independent Bernoulli variables enumerated exactly.
inline constexpr unsigned kExactCapacity = 24;

/// Sum of an integer statistic over all 2^r assignments of r i.i.d.
/// Bernoulli variables, bucketed by the number of ones. The expectation of
/// the statistic under Bernoulli(p) is sum_k counts[k] p^k (1-p)^(r-k), which
/// is exact for rational p.
struct BernoulliProfile {
  unsigned variables = 0;
  std::vector<std::uint64_t> counts;  // size variables + 1

  double expectation(double p) const;
  Rational expectation(const Rational& p) const;
};

/// Profile of the event "some mask is a subset of the assignment".
/// Throws CapacityError when r > capacity.
BernoulliProfile covering_profile(std::span<const std::uint32_t> masks, unsigned r,
                                  unsigned capacity = kExactCapacity);

/// Profile of max_i popcount(assignment & masks[i]); 0 for no masks.
BernoulliProfile max_overlap_profile(std::span<const std::uint32_t> masks, unsigned r,
                                     unsigned capacity = kExactCapacity);

/// Keeps only the inclusion-minimal masks, deduplicated and sorted.
std::vector<std::uint32_t> minimal_masks(std::span<const std::uint32_t> masks);

}  // namespace cliquelab

#endif  // CLIQUELAB_ENUMERATION_HPP_
