// Copyright 2026 The AlignDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Utility metrics comparing a true distribution against an estimate over the
// same support. All functions throw std::invalid_argument on empty or
// unequal-length inputs.

#ifndef ALIGNDP_METRICS_H_
#define ALIGNDP_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace aligndp {

inline constexpr double kKlFloor = 1e-12;

// KL(truth || estimate) in nats. Both sides are renormalized over the
// compared support; the estimate is first clamped to >= kKlFloor, so
// negative debiased entries are allowed. Terms with zero true mass
// contribute nothing.
double KlDivergence(std::span<const double> truth,
                    std::span<const double> estimate);

// |top_k(truth) ∩ top_k(estimate)| / k_top, with ties broken by ascending
// index. k_top is capped at the vector length.
double TopKAccuracy(std::span<const double> truth,
                    std::span<const double> estimate, std::size_t k_top);

// Pearson correlation of average ranks. Returns 0 when either side is
// constant (the rank correlation is undefined there).
double SpearmanRho(std::span<const double> truth,
                   std::span<const double> estimate);

double MeanAbsoluteError(std::span<const double> truth,
                         std::span<const double> estimate);

double MeanSquaredError(std::span<const double> truth,
                        std::span<const double> estimate);

// 1-based average ranks (ties share the mean of their positions).
std::vector<double> AverageRanks(std::span<const double> values);

}  // namespace aligndp

#endif  // ALIGNDP_METRICS_H_
