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

#include "qrc/reservoir.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "qrc/rng.hpp"

namespace qrc {

namespace {

using MatrixView = Eigen::Map<ComplexMatrix>;

void check_input_value(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("input value must lie in [0, 1], got " + std::to_string(s));
}

// In-place injection on a column-stacked state; qubit 1 is the top bit, so
// the four half-size blocks of rho are indexed by qubit 1's row/column value.
void inject_in_place(MatrixView rho, double s) {
    const Eigen::Index half = rho.rows() / 2;
    const ComplexMatrix reduced = rho.topLeftCorner(half, half) + rho.bottomRightCorner(half, half);
    const double a0 = std::sqrt(1.0 - s);
    const double a1 = std::sqrt(s);
    rho.topLeftCorner(half, half) = (a0 * a0) * reduced;
    rho.topRightCorner(half, half) = (a0 * a1) * reduced;
    rho.bottomLeftCorner(half, half) = (a1 * a0) * reduced;
    rho.bottomRightCorner(half, half) = (a1 * a1) * reduced;
}

double z_expectation_from_coords(const RealVector& state, Eigen::Index dim, std::uint32_t bit) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double p = state(i + i * dim);
        acc += (static_cast<std::uint32_t>(i) & bit) ? -p : p;
    }
    return acc;
}

// Real coordinates of a Hermitian matrix, laid out like vec(rho): the
// diagonal in place, Re(rho_ij) at the (i, j) slot and Im(rho_ij) at the
// (j, i) slot for i < j. A propagator preserves Hermiticity, so it is a real
// matrix in these coordinates.
RealVector hermitian_coords(const ComplexMatrix& m) {
    const Eigen::Index dim = m.rows();
    RealVector x(dim * dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (i == j) {
                x(i + j * dim) = m(i, i).real();
            } else if (i < j) {
                x(i + j * dim) = m(i, j).real();
            } else {
                x(i + j * dim) = m(j, i).imag();
            }
        }
    }
    return x;
}

ComplexMatrix from_hermitian_coords(const RealVector& x, Eigen::Index dim) {
    ComplexMatrix m(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        m(j, j) = x(j + j * dim);
        for (Eigen::Index i = 0; i < j; ++i) {
            const Complex v(x(i + j * dim), x(j + i * dim));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

RealMatrix realify(const Propagator& p) {
    const Eigen::Index dim = Eigen::Index{1} << p.n_qubits();
    RealMatrix out(dim * dim, dim * dim);
    ComplexVector image;
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            ComplexMatrix basis = ComplexMatrix::Zero(dim, dim);
            if (i == j) {
                basis(i, i) = 1.0;
            } else if (i < j) {
                basis(i, j) = 1.0;
                basis(j, i) = 1.0;
            } else {
                basis(j, i) = Complex(0.0, 1.0);
                basis(i, j) = Complex(0.0, -1.0);
            }
            p.apply(vec(basis), image);
            out.col(i + j * dim) = hermitian_coords(unvec(image, dim));
        }
    }
    return out;
}

Propagator make_readout_propagator(const LindbladSpec& spec, const SamplingSpec& sampling) {
    sampling.validate();
    return Propagator(build_liouvillian(spec), sampling.readout_dt());
}

}  // namespace

void SamplingSpec::validate() const {
    if (!(dt_injection > 0.0) || !std::isfinite(dt_injection)) throw std::invalid_argument("dt_injection must be > 0");
    if (v_virtual < 1) throw std::invalid_argument("v_virtual must be >= 1");
}

double sigma_from_measurements(std::optional<std::uint64_t> m) {
    if (!m) return 0.0;
    if (*m == 0) throw std::invalid_argument("measurement count must be >= 1");
    return 1.0 / std::sqrt(static_cast<double>(*m));
}

double NoiseSpec::sigma() const { return sigma_from_measurements(n_measurements); }

// ---------------------------------------------------------------------------
// FeatureMatrix

FeatureMatrix::FeatureMatrix(RealMatrix values, int n_qubits, int v_virtual)
    : values_(std::move(values)), n_qubits_(n_qubits), v_virtual_(v_virtual) {
    if (n_qubits < 1 || v_virtual < 1) throw std::invalid_argument("feature layout needs N >= 1 and V >= 1");
    if (values_.cols() != static_cast<Eigen::Index>(n_qubits) * v_virtual + 1) {
        throw std::invalid_argument("feature matrix must have N*V + 1 columns");
    }
}

FeatureMatrix FeatureMatrix::concat(const std::vector<FeatureMatrix>& parts) {
    if (parts.empty()) throw std::invalid_argument("nothing to concatenate");
    Eigen::Index rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != parts.front().cols() || p.provenance_ != parts.front().provenance_) {
            throw std::invalid_argument("feature blocks differ in shape or provenance");
        }
        rows += p.rows();
    }
    RealMatrix stacked(rows, parts.front().cols());
    Eigen::Index at = 0;
    for (const auto& p : parts) {
        stacked.middleRows(at, p.rows()) = p.values_;
        at += p.rows();
    }
    FeatureMatrix out(std::move(stacked), parts.front().n_qubits_, parts.front().v_virtual_);
    out.provenance_ = parts.front().provenance_;
    out.noise_seed_ = parts.front().noise_seed_;
    return out;
}

FeatureMatrix apply_noise(const FeatureMatrix& features, const NoiseSpec& noise) {
    if (features.provenance_ != FeatureMatrix::Provenance::kClean) {
        throw std::logic_error("features already carry measurement noise");
    }
    FeatureMatrix out = features;
    out.provenance_ = FeatureMatrix::Provenance::kNoisy;
    out.noise_seed_ = noise.seed;
    const double sigma = noise.sigma();
    if (sigma == 0.0) return out;

    auto rng = make_rng(noise.seed, SeedStream::kNoise, noise.substream);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Eigen::Index readout_cols = out.values_.cols() - 1;
    for (Eigen::Index r = 0; r < out.values_.rows(); ++r) {
        for (Eigen::Index c = 0; c < readout_cols; ++c) out.values_(r, c) += sigma * gauss(rng);
    }
    return out;
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& traj) {
    if (traj.empty()) return;
    const Eigen::Index n = traj.states.front().dim() * traj.states.front().dim();
    os << "time";
    for (Eigen::Index i = 0; i < n; ++i) os << ",re_" << i << ",im_" << i;
    os << '\n';
    const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t r = 0; r < traj.size(); ++r) {
        const ComplexVector v = vec(traj.states[r].matrix());
        os << traj.times[r];
        for (Eigen::Index i = 0; i < v.size(); ++i) os << ',' << v(i).real() << ',' << v(i).imag();
        os << '\n';
    }
    os.precision(old_precision);
}

// ---------------------------------------------------------------------------
// Injection and driving

DensityMatrix inject(const DensityMatrix& rho, double s) {
    check_input_value(s);
    if (rho.n_qubits() < 2) throw std::invalid_argument("injection needs at least 2 qubits");
    ComplexMatrix m = rho.matrix();
    inject_in_place(MatrixView(m.data(), m.rows(), m.cols()), s);
    return DensityMatrix::trusted(rho.n_qubits(), std::move(m));
}

Reservoir::Reservoir(LindbladSpec spec, SamplingSpec sampling)
    : spec_(std::move(spec)),
      sampling_(sampling),
      propagator_(make_readout_propagator(spec_, sampling_)),
      real_propagator_(realify(propagator_)) {}

ReservoirRun Reservoir::run(const InputSignal& signal, const RunOptions& options) const {
    const int n = n_qubits();
    const int v_virtual = sampling_.v_virtual;
    const std::size_t k_total = signal.size();
    if (k_total <= sampling_.washout) {
        throw std::invalid_argument("signal length " + std::to_string(k_total) + " does not exceed the washout " +
                                    std::to_string(sampling_.washout));
    }
    const Eigen::Index dim = Eigen::Index{1} << n;

    ComplexMatrix rho = options.initial_state ? options.initial_state->matrix()
                                              : DensityMatrix::maximally_mixed(n).matrix();
    if (rho.rows() != dim) throw std::invalid_argument("initial state has the wrong size");
    RealVector state = hermitian_coords(rho);
    RealVector next(state.size());

    std::vector<std::uint32_t> bits;
    for (int q = 1; q <= n; ++q) bits.push_back(qubit_bit(n, q));

    const auto k_valid = static_cast<Eigen::Index>(k_total - sampling_.washout);
    RealMatrix values(k_valid, static_cast<Eigen::Index>(n) * v_virtual + 1);
    values.col(values.cols() - 1).setOnes();

    std::optional<TrajectoryRecord> trajectory;
    if (options.meter) {
        trajectory.emplace();
        trajectory->times.reserve(static_cast<std::size_t>(k_valid * v_virtual));
        trajectory->states.reserve(static_cast<std::size_t>(k_valid * v_virtual));
    }

    const double dt = sampling_.readout_dt();
    for (std::size_t k = 0; k < k_total; ++k) {
        check_input_value(signal[k]);
        rho = from_hermitian_coords(state, dim);
        inject_in_place(MatrixView(rho.data(), dim, dim), signal[k]);
        if (options.on_injection) options.on_injection(k, DensityMatrix::trusted(n, rho));
        state = hermitian_coords(rho);

        const bool keep = k >= sampling_.washout;
        const auto row = static_cast<Eigen::Index>(k) - static_cast<Eigen::Index>(sampling_.washout);
        for (int v = 0; v < v_virtual; ++v) {
            next.noalias() = real_propagator_ * state;
            state.swap(next);
            if (!keep) continue;
            for (int q = 0; q < n; ++q) {
                values(row, static_cast<Eigen::Index>(v) * n + q) = z_expectation_from_coords(state, dim, bits[q]);
            }
            if (trajectory) {
                trajectory->times.push_back(static_cast<double>(k) * sampling_.dt_injection + (v + 1) * dt);
                trajectory->states.push_back(DensityMatrix::trusted(n, from_hermitian_coords(state, dim)));
            }
        }
    }

    return ReservoirRun{FeatureMatrix(std::move(values), n, v_virtual), std::move(trajectory)};
}

ReservoirRun run_reservoir(const LindbladSpec& spec, const SamplingSpec& sampling, const InputSignal& signal,
                           bool meter) {
    RunOptions options;
    options.meter = meter;
    return Reservoir(spec, sampling).run(signal, options);
}

}  // namespace qrc
