// Copyright 2026 The qrc Authors
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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "qrc/quantum_core.hpp"
#include "qrc/reservoir.hpp"
#include "qrc/signal.hpp"

namespace qrc {

/// {0} plus 11 log-spaced points 1e-12 .. 1e-2.
std::vector<double> default_lambda_grid();

struct TrainingSpec {
    std::vector<double> lambda_grid = default_lambda_grid();
    double validation_fraction = 0.2;
    std::size_t tau_max = 30;

    void validate() const;
};

struct ReadoutModel {
    RealVector weights;
    double lambda_selected = 0.0;
    std::size_t tau = 0;

    RealVector predict(const RealMatrix& x) const;
};

/// Tikhonov least squares with a fixed design matrix. The Gram matrix is
/// formed once so that many (target, lambda) pairs can be solved cheaply.
/// All weights, bias included, are penalized uniformly.
class RidgeSolver {
public:
    explicit RidgeSolver(RealMatrix x);

    const RealMatrix& design() const { return x_; }

    /// argmin ||X w - y||^2 + lambda ||w||^2. For lambda = 0 and a
    /// rank-deficient X, the minimum-norm least-squares solution.
    RealVector solve(const RealVector& y, double lambda) const;

private:
    const Eigen::CompleteOrthogonalDecomposition<RealMatrix>& cod() const;

    RealMatrix x_;
    RealMatrix gram_;
    mutable std::optional<Eigen::CompleteOrthogonalDecomposition<RealMatrix>> cod_;
};

ReadoutModel ridge_fit(const RealMatrix& x, const RealVector& y, double lambda);

/// Squared Pearson correlation; 0 when either variance is below 1e-14.
double memory_capacity(std::span<const double> y, std::span<const double> ybar);
double memory_capacity(const RealVector& y, const RealVector& ybar);

/// Holdout selection: fit on the leading (1 - validation_fraction) rows,
/// score capacity on the tail, keep the best lambda (ties -> smaller), refit
/// on all rows.
ReadoutModel select_lambda(const RealMatrix& x_train, const RealVector& y_train, const TrainingSpec& spec,
                           std::size_t tau);

struct CapacityProfile {
    std::vector<double> per_tau;
    std::vector<double> lambda_selected;
    double total = 0.0;
};

/// One readout run: features for the post-washout rows of `signal`.
struct LabelledRun {
    const FeatureMatrix* features;
    const InputSignal* signal;
    std::size_t washout;
};

/// Rows (and delayed targets) of the given runs whose target s_{k-tau} exists.
struct RegressionData {
    RealMatrix x;
    RealVector y;
};
RegressionData assemble(std::span<const LabelledRun> runs, std::size_t tau);

/// Per-delay selection on the training runs, capacity on the test run, for
/// tau = 0..tau_max. total is the truncated sum.
CapacityProfile capacity_profile(std::span<const LabelledRun> train, const LabelledRun& test, const TrainingSpec& spec);

}  // namespace qrc
