// tests/support/oracles.h

// Copyright 2026  The sre-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


// Reference implementations used to check the library. They favour the
// plainest possible computation over speed and share no code with core/.

#ifndef SRE_TESTS_ORACLES_H_
#define SRE_TESTS_ORACLES_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sre/metrics.h"

namespace sre::testing {

/// Minimum C_primary by trying every threshold: -inf, +inf and the midpoint
/// of each pair of consecutive distinct scores. Per-threshold rates are
/// counted trial by trial.
double brute_force_min_c_primary(std::span<const ScoredTrial> trials,
                                 const PartitionSchema &schema,
                                 std::span<const OperatingPoint> points);

/// Actual C_primary as the mean over cells of each cell's own C_primary.
double per_cell_actual_c_primary(std::span<const ScoredTrial> trials,
                                 const PartitionSchema &schema,
                                 std::span<const OperatingPoint> points);

/// Cost with every trial in one pool (no equalization).
double pooled_c_norm(std::span<const ScoredTrial> trials, double theta, double beta);

/// PLDA log-likelihood ratio by Gauss-Hermite integration over the latent
/// speaker variable, `nodes` points per dimension.
double quadrature_plda_llr(const Eigen::VectorXd &mu, const Eigen::MatrixXd &B,
                           const Eigen::MatrixXd &W,
                           const std::vector<Eigen::VectorXd> &enroll,
                           const Eigen::VectorXd &test, int nodes);

/// Smallest k-means inertia over all partitions into at most k groups.
double exhaustive_min_inertia(const std::vector<std::vector<double>> &points, std::size_t k);

/// Arithmetic mean of each coordinate, correctly rounded sum then divided.
std::vector<double> exact_mean(const std::vector<std::vector<double>> &points);

/// Inverse normal CDF in 50-digit arithmetic.
double reference_probit(double p);

}  // namespace sre::testing

#endif  // SRE_TESTS_ORACLES_H_
