#include "specvar/simulate.hpp"

#include "specvar/errors.hpp"
#include "specvar/parallel.hpp"
#include "specvar/random.hpp"
#include "specvar/report_io.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>

namespace specvar {

namespace {

constexpr std::uint32_t kDensityTag = 0;
constexpr std::uint32_t kHarmonicTag = 1;
constexpr double kEmbeddingClip = 1e-10;

struct FftwDeleter {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex, FftwDeleter>;

FftwBuffer fftw_buffer(std::size_t n) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!p) throw std::bad_alloc();
    return FftwBuffer(p);
}

// The FFTW planner is not thread-safe; execution with fftw_execute_dft is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class ForwardPlan {
public:
    explicit ForwardPlan(std::size_t size) : size_(size) {
        auto in = fftw_buffer(size);
        auto out = fftw_buffer(size);
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(size), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
        if (!plan_) throw NumericError("FFTW could not create a plan");
    }
    ~ForwardPlan() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    ForwardPlan(const ForwardPlan&) = delete;
    ForwardPlan& operator=(const ForwardPlan&) = delete;

    void execute(fftw_complex* in, fftw_complex* out) const { fftw_execute_dft(plan_, in, out); }
    std::size_t size() const { return size_; }

private:
    std::size_t size_;
    fftw_plan plan_ = nullptr;
};

SpectralMeasure density_part(const SpectralMeasure& m) {
    std::vector<DensityPiece> pieces(m.density_pieces().begin(), m.density_pieces().end());
    return SpectralMeasure(0.0, {}, std::move(pieces));
}

// Adds the density part of every path in place.
void add_density_paths(const SpectralMeasure& m, PathBatch& batch) {
    const std::size_t N = batch.length;
    const std::size_t P = batch.paths;
    const auto r = autocovariances(density_part(m), N);
    const double r0 = r[0];
    if (!(r0 > 0.0)) {
        batch.method = SimulationMethod::harmonic;
        batch.embedding_min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    if (N == 1) {
        batch.method = SimulationMethod::cholesky;
        batch.embedding_min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
        const double sd = std::sqrt(r0);
        for (std::size_t p = 0; p < P; ++p)
            batch.values[p] += sd * stream_normal(batch.seed, static_cast<std::uint32_t>(p), kDensityTag, 0);
        return;
    }

    const std::size_t M = 2 * (N - 1);
    ForwardPlan plan(M);
    std::vector<double> sqrt_eig(M);
    {
        auto in = fftw_buffer(M);
        auto out = fftw_buffer(M);
        for (std::size_t j = 0; j < M; ++j) {
            in.get()[j][0] = j < N ? r[j] : r[M - j];
            in.get()[j][1] = 0.0;
        }
        plan.execute(in.get(), out.get());
        double min_eig = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < M; ++j) min_eig = std::min(min_eig, out.get()[j][0]);
        batch.embedding_min_eigenvalue = min_eig;
        if (min_eig >= -kEmbeddingClip * r0) {
            for (std::size_t j = 0; j < M; ++j)
                sqrt_eig[j] = std::sqrt(std::max(0.0, out.get()[j][0]) / static_cast<double>(M));
            batch.method = SimulationMethod::circulant;
        }
    }

    if (batch.method == SimulationMethod::circulant) {
        parallel_for(P, [&](std::size_t p) {
            auto in = fftw_buffer(M);
            auto out = fftw_buffer(M);
            const auto stream = static_cast<std::uint32_t>(p);
            for (std::size_t j = 0; j < M; ++j) {
                in.get()[j][0] = sqrt_eig[j] * stream_normal(batch.seed, stream, kDensityTag, 2 * j);
                in.get()[j][1] = sqrt_eig[j] * stream_normal(batch.seed, stream, kDensityTag, 2 * j + 1);
            }
            plan.execute(in.get(), out.get());
            double* row = batch.values.data() + p * N;
            for (std::size_t t = 0; t < N; ++t) row[t] += out.get()[t][0];
        });
        return;
    }

    if (N > kMaxDenseLength) {
        throw NumericError("circulant embedding has a negative eigenvalue and N > 4096 is too large for the "
                           "dense fallback; retry with N <= 4096",
                           batch.embedding_min_eigenvalue);
    }
    Eigen::MatrixXd toeplitz(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) toeplitz(i, j) = r[i > j ? i - j : j - i];
    Eigen::LDLT<Eigen::MatrixXd> ldlt(toeplitz);
    if (ldlt.info() != Eigen::Success) throw NumericError("dense LDL^T factorization failed");
    const Eigen::VectorXd root_d = ldlt.vectorD().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd lower = ldlt.matrixL();
    batch.method = SimulationMethod::cholesky;
    parallel_for(P, [&](std::size_t p) {
        Eigen::VectorXd z(N);
        for (std::size_t t = 0; t < N; ++t)
            z[t] = stream_normal(batch.seed, static_cast<std::uint32_t>(p), kDensityTag, t);
        Eigen::VectorXd x = lower * root_d.cwiseProduct(z);
        x = ldlt.transpositionsP().transpose() * x;
        double* row = batch.values.data() + p * N;
        for (std::size_t t = 0; t < N; ++t) row[t] += x[t];
    });
}

void add_harmonic_paths(const SpectralMeasure& m, PathBatch& batch) {
    const std::size_t N = batch.length;
    const auto atoms = m.atoms();
    const std::size_t J = atoms.size();
    const double level_sd = std::sqrt(m.atom_at_zero());
    if (J == 0 && level_sd == 0.0) return;
    std::vector<double> amp(J);
    for (std::size_t j = 0; j < J; ++j) amp[j] = std::sqrt(atoms[j].mass);

    constexpr std::size_t kBlock = 256;
    std::vector<double> cos_table(kBlock * J), sin_table(kBlock * J);
    // Coefficients: normal 0 is the level, then (A_j, B_j) pairs.
    std::vector<double> coef(batch.paths * (2 * J + 1));
    parallel_for(batch.paths, [&](std::size_t p) {
        for (std::size_t i = 0; i < 2 * J + 1; ++i)
            coef[p * (2 * J + 1) + i] = stream_normal(batch.seed, static_cast<std::uint32_t>(p), kHarmonicTag, i);
    });
    for (std::size_t t0 = 0; t0 < N; t0 += kBlock) {
        const std::size_t len = std::min(kBlock, N - t0);
        for (std::size_t dt = 0; dt < len; ++dt) {
            const auto t = static_cast<std::int64_t>(t0 + dt);
            for (std::size_t j = 0; j < J; ++j) {
                cos_table[dt * J + j] = amp[j] * cos_of_product(t, atoms[j].location);
                sin_table[dt * J + j] = amp[j] * sin_of_half_product(2 * t, atoms[j].location);
            }
        }
        parallel_for(batch.paths, [&](std::size_t p) {
            const double* c = coef.data() + p * (2 * J + 1);
            double* row = batch.values.data() + p * N;
            for (std::size_t dt = 0; dt < len; ++dt) {
                double s = level_sd * c[0];
                const double* ct = cos_table.data() + dt * J;
                const double* st = sin_table.data() + dt * J;
                for (std::size_t j = 0; j < J; ++j) s += c[1 + 2 * j] * ct[j] + c[2 + 2 * j] * st[j];
                row[t0 + dt] += s;
            }
        });
    }
}

}  // namespace

std::string to_string(SimulationMethod method) {
    switch (method) {
        case SimulationMethod::circulant: return "circulant";
        case SimulationMethod::cholesky: return "cholesky";
        case SimulationMethod::harmonic: return "harmonic";
    }
    return "unknown";
}

PathBatch simulate(const SpectralMeasure& m, std::size_t N, std::size_t P, std::uint64_t seed) {
    if (N < 1 || N > kMaxSimulationLength) throw DomainError("simulate: N must lie in [1, 2^16]");
    if (P < 1) throw DomainError("simulate: need at least one path");
    if (P > std::numeric_limits<std::uint32_t>::max()) throw DomainError("simulate: too many paths");
    PathBatch batch;
    batch.paths = P;
    batch.length = N;
    batch.seed = seed;
    batch.values.assign(N * P, 0.0);
    batch.method = SimulationMethod::harmonic;
    batch.embedding_min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    if (m.has_density()) add_density_paths(m, batch);
    add_harmonic_paths(m, batch);
    return batch;
}

MonteCarloEstimate empirical_variance(const PathBatch& batch, std::size_t n) {
    if (n < 1 || n > batch.length) throw DomainError("empirical_variance: n must lie in [1, N]");
    std::vector<double> squares(batch.paths);
    for (std::size_t p = 0; p < batch.paths; ++p) {
        const auto path = batch.path(p);
        long double s = 0.0L;
        for (std::size_t t = 0; t < n; ++t) s += path[t];
        squares[p] = static_cast<double>(s * s);
    }
    MonteCarloEstimate out;
    long double mean = 0.0L;
    for (double v : squares) mean += v;
    mean /= static_cast<long double>(batch.paths);
    out.estimate = static_cast<double>(mean);
    if (batch.paths < 2) {
        out.standard_error = std::numeric_limits<double>::infinity();
        return out;
    }
    long double ss = 0.0L;
    for (double v : squares) ss += (v - mean) * (v - mean);
    const long double sd = std::sqrt(ss / static_cast<long double>(batch.paths - 1));
    out.standard_error = static_cast<double>(sd / std::sqrt(static_cast<long double>(batch.paths)));
    return out;
}

MonteCarloEstimate empirical_autocovariance(const PathBatch& batch, std::size_t lag) {
    if (lag >= batch.length) throw DomainError("empirical_autocovariance: lag must be < N");
    const std::size_t terms = batch.length - lag;
    std::vector<double> per_path(batch.paths);
    for (std::size_t p = 0; p < batch.paths; ++p) {
        const auto path = batch.path(p);
        long double s = 0.0L;
        for (std::size_t t = 0; t < terms; ++t) s += static_cast<long double>(path[t]) * path[t + lag];
        per_path[p] = static_cast<double>(s / static_cast<long double>(terms));
    }
    MonteCarloEstimate out;
    long double mean = 0.0L;
    for (double v : per_path) mean += v;
    mean /= static_cast<long double>(batch.paths);
    out.estimate = static_cast<double>(mean);
    if (batch.paths < 2) {
        out.standard_error = std::numeric_limits<double>::infinity();
        return out;
    }
    long double ss = 0.0L;
    for (double v : per_path) ss += (v - mean) * (v - mean);
    out.standard_error = static_cast<double>(std::sqrt(ss / static_cast<long double>(batch.paths - 1)) /
                                             std::sqrt(static_cast<long double>(batch.paths)));
    return out;
}

void write_paths_csv(std::ostream& out, const PathBatch& batch) {
    out << "path,t,value\n";
    for (std::size_t p = 0; p < batch.paths; ++p) {
        const auto path = batch.path(p);
        for (std::size_t t = 0; t < batch.length; ++t) out << p << ',' << t << ',' << format_double(path[t]) << '\n';
    }
}

}  // namespace specvar
