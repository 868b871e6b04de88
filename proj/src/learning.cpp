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

#include "qrc/learning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qrc {

namespace {

constexpr double kVarianceFloor = 1e-14;

struct Split {
    Eigen::Index fit_rows;
    Eigen::Index validation_rows;
};

Split holdout_split(Eigen::Index rows, double validation_fraction) {
    const auto validation = static_cast<Eigen::Index>(std::floor(validation_fraction * static_cast<double>(rows)));
    if (validation < 2 || rows - validation < 1) {
        throw std::invalid_argument("too few rows (" + std::to_string(rows) + ") for the validation split");
    }
    return {rows - validation, validation};
}

std::vector<double> sorted_unique(std::vector<double> grid) {
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

// Selection + refit with solvers prepared for the fit split and the full set.
ReadoutModel select_with(const RidgeSolver& fit, const RidgeSolver& full, const RealMatrix& x_validation,
                         const RealVector& y, const std::vector<double>& grid, std::size_t tau) {
    const Eigen::Index n_fit = fit.design().rows();
    const RealVector y_fit = y.head(n_fit);
    const RealVector y_validation = y.tail(x_validation.rows());

    double best_lambda = grid.front();
    double best_score = -1.0;
    for (double lambda : grid) {
        const RealVector w = fit.solve(y_fit, lambda);
        const double score = memory_capacity(RealVector(x_validation * w), y_validation);
        if (score > best_score) {
            best_score = score;
            best_lambda = lambda;
        }
    }
    return ReadoutModel{full.solve(y, best_lambda), best_lambda, tau};
}

}  // namespace

std::vector<double> default_lambda_grid() {
    std::vector<double> grid{0.0};
    for (int e = -12; e <= -2; ++e) grid.push_back(std::pow(10.0, e));
    return grid;
}

void TrainingSpec::validate() const {
    if (lambda_grid.empty()) throw std::invalid_argument("lambda grid is empty");
    for (double l : lambda_grid) {
        if (!(l >= 0.0) || !std::isfinite(l)) throw std::invalid_argument("lambda values must be finite and >= 0");
    }
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
        throw std::invalid_argument("validation_fraction must lie in (0, 1)");
    }
}

RealVector ReadoutModel::predict(const RealMatrix& x) const {
    if (x.cols() != weights.size()) throw std::invalid_argument("feature width does not match the readout weights");
    return x * weights;
}

RidgeSolver::RidgeSolver(RealMatrix x) : x_(std::move(x)) {
    if (x_.rows() < 1 || x_.cols() < 1) throw std::invalid_argument("empty design matrix");
    gram_ = x_.transpose() * x_;
}

const Eigen::CompleteOrthogonalDecomposition<RealMatrix>& RidgeSolver::cod() const {
    if (!cod_) cod_.emplace(x_);
    return *cod_;
}

RealVector RidgeSolver::solve(const RealVector& y, double lambda) const {
    if (y.size() != x_.rows()) throw std::invalid_argument("target length does not match design rows");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    if (lambda == 0.0 && cod().rank() < x_.cols()) return cod().solve(y);

    RealMatrix a = gram_;
    a.diagonal().array() += lambda;
    Eigen::LLT<RealMatrix> llt(a);
    if (llt.info() != Eigen::Success) return cod().solve(y);
    return llt.solve(x_.transpose() * y);
}

ReadoutModel ridge_fit(const RealMatrix& x, const RealVector& y, double lambda) {
    return ReadoutModel{RidgeSolver(x).solve(y, lambda), lambda, 0};
}

double memory_capacity(std::span<const double> y, std::span<const double> ybar) {
    if (y.size() != ybar.size()) throw std::invalid_argument("capacity inputs differ in length");
    if (y.size() < 2) throw std::invalid_argument("capacity needs at least 2 samples");
    const auto n = static_cast<double>(y.size());
    double mean_y = 0.0, mean_t = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        mean_y += y[i];
        mean_t += ybar[i];
    }
    mean_y /= n;
    mean_t /= n;
    double cov = 0.0, var_y = 0.0, var_t = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dy = y[i] - mean_y;
        const double dt = ybar[i] - mean_t;
        cov += dy * dt;
        var_y += dy * dy;
        var_t += dt * dt;
    }
    cov /= n;
    var_y /= n;
    var_t /= n;
    if (var_y < kVarianceFloor || var_t < kVarianceFloor) return 0.0;
    return std::clamp(cov * cov / (var_y * var_t), 0.0, 1.0);
}

double memory_capacity(const RealVector& y, const RealVector& ybar) {
    return memory_capacity(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())),
                           std::span<const double>(ybar.data(), static_cast<std::size_t>(ybar.size())));
}

ReadoutModel select_lambda(const RealMatrix& x_train, const RealVector& y_train, const TrainingSpec& spec,
                           std::size_t tau) {
    spec.validate();
    if (x_train.rows() != y_train.size()) throw std::invalid_argument("feature rows and targets differ in length");
    const Split split = holdout_split(x_train.rows(), spec.validation_fraction);
    const RidgeSolver fit(x_train.topRows(split.fit_rows));
    const RidgeSolver full(x_train);
    return select_with(fit, full, x_train.bottomRows(split.validation_rows), y_train,
                       sorted_unique(spec.lambda_grid), tau);
}

RegressionData assemble(std::span<const LabelledRun> runs, std::size_t tau) {
    if (runs.empty()) throw std::invalid_argument("no runs to assemble");
    Eigen::Index rows = 0;
    for (const auto& run : runs) {
        const std::size_t k_total = run.signal->size();
        if (static_cast<std::size_t>(run.features->rows()) + run.washout != k_total) {
            throw std::invalid_argument("feature rows do not match signal length minus washout");
        }
        const std::size_t first = std::max(run.washout, tau);
        if (first < k_total) rows += static_cast<Eigen::Index>(k_total - first);
    }
    const Eigen::Index cols = runs.front().features->cols();
    RegressionData out{RealMatrix(rows, cols), RealVector(rows)};
    Eigen::Index at = 0;
    for (const auto& run : runs) {
        if (run.features->cols() != cols) throw std::invalid_argument("runs differ in feature width");
        for (std::size_t k = std::max(run.washout, tau); k < run.signal->size(); ++k) {
            out.x.row(at) = run.features->values().row(static_cast<Eigen::Index>(k - run.washout));
            out.y(at) = (*run.signal)[k - tau];
            ++at;
        }
    }
    return out;
}

CapacityProfile capacity_profile(std::span<const LabelledRun> train, const LabelledRun& test,
                                 const TrainingSpec& spec) {
    spec.validate();
    const auto grid = sorted_unique(spec.lambda_grid);

    // When every run's washout covers the largest delay, the design matrices
    // are identical for all tau and the factorizations can be shared.
    bool shared_design = test.washout >= spec.tau_max;
    for (const auto& run : train) shared_design = shared_design && run.washout >= spec.tau_max;

    struct Prepared {
        RidgeSolver fit;
        RidgeSolver full;
        RealMatrix x_validation;
    };
    auto prepare = [&](const RegressionData& data) {
        const Split split = holdout_split(data.x.rows(), spec.validation_fraction);
        return Prepared{RidgeSolver(data.x.topRows(split.fit_rows)), RidgeSolver(data.x),
                        data.x.bottomRows(split.validation_rows)};
    };

    std::optional<Prepared> shared;
    CapacityProfile profile;
    for (std::size_t tau = 0; tau <= spec.tau_max; ++tau) {
        const RegressionData train_data = assemble(train, tau);
        const RegressionData test_data = assemble(std::span<const LabelledRun>(&test, 1), tau);
        std::optional<Prepared> local;
        const Prepared* prepared = nullptr;
        if (shared_design) {
            if (!shared) shared.emplace(prepare(train_data));
            prepared = &*shared;
        } else {
            local.emplace(prepare(train_data));
            prepared = &*local;
        }
        const ReadoutModel model =
            select_with(prepared->fit, prepared->full, prepared->x_validation, train_data.y, grid, tau);
        const double c = memory_capacity(model.predict(test_data.x), test_data.y);
        profile.per_tau.push_back(c);
        profile.lambda_selected.push_back(model.lambda_selected);
        profile.total += c;
    }
    return profile;
}

}  // namespace qrc
