#include "hurst/synthgen.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>

#include "hurst/error.hpp"

namespace hurst {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer make_buffer(std::size_t n) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer(p);
}

// Forward DFT in place.
void forward_dft(fftw_complex* data, std::size_t n) {
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw Error(ErrorCode::Synthesis, "FFTW could not create a plan");
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

double fgn_autocovariance(double hurst, std::size_t k) {
    const double e = 2.0 * hurst;
    const double kd = static_cast<double>(k);
    return 0.5 * (std::pow(kd + 1.0, e) - 2.0 * std::pow(kd, e) + std::pow(std::abs(kd - 1.0), e));
}

std::vector<double> fgn(std::size_t n, double hurst, NormalSource& normals) {
    // first row of the 2n circulant: gamma(0..n), gamma(n-1..1)
    const std::size_t m = 2 * n;
    FftwBuffer buf = make_buffer(m);
    for (std::size_t k = 0; k <= n; ++k) {
        buf[k][0] = fgn_autocovariance(hurst, k);
        buf[k][1] = 0.0;
    }
    for (std::size_t k = n + 1; k < m; ++k) {
        buf[k][0] = buf[m - k][0];
        buf[k][1] = 0.0;
    }
    forward_dft(buf.get(), m);

    std::vector<double> eigen(m);
    double largest = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        eigen[k] = buf[k][0];
        largest = std::max(largest, std::abs(eigen[k]));
    }
    for (double& l : eigen) {
        if (l < -1e-10 * largest) {
            throw Error(ErrorCode::Synthesis,
                        "circulant embedding is not positive semi-definite; increase the length");
        }
        l = std::max(l, 0.0);
    }

    // Real part of FFT(sqrt(lambda / m) * (a + ib)) has exactly the target covariance.
    for (std::size_t k = 0; k < m; ++k) {
        const double scale = std::sqrt(eigen[k] / static_cast<double>(m));
        buf[k][0] = scale * normals.next();
        buf[k][1] = scale * normals.next();
    }
    forward_dft(buf.get(), m);

    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = buf[j][0];
    return out;
}

std::vector<double> cumulative_from_zero(const std::vector<double>& steps) {
    std::vector<double> path(steps.size() + 1, 0.0);
    for (std::size_t i = 0; i < steps.size(); ++i) path[i + 1] = path[i] + steps[i];
    return path;
}

}  // namespace

double NormalSource::uniform_open() {
    // 53 random bits, offset by half a step so the value is never 0 or 1
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double NormalSource::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::string_view to_string(GeneratorKind kind) noexcept {
    switch (kind) {
        case GeneratorKind::Fgn: return "fgn";
        case GeneratorKind::FbmPath: return "fbm_path";
        case GeneratorKind::WhiteNoise: return "white_noise";
        case GeneratorKind::Brownian: return "brownian";
        case GeneratorKind::Jigsaw: return "jigsaw";
        case GeneratorKind::Ou: return "ou";
    }
    return "unknown";
}

GeneratorKind parse_generator_kind(std::string_view name) {
    for (auto kind : {GeneratorKind::Fgn, GeneratorKind::FbmPath, GeneratorKind::WhiteNoise,
                      GeneratorKind::Brownian, GeneratorKind::Jigsaw, GeneratorKind::Ou}) {
        if (to_string(kind) == name) return kind;
    }
    throw Error(ErrorCode::Unsupported, "unknown generator kind '" + std::string(name) + "'");
}

void validate(const GeneratorSpec& spec) {
    if (spec.length < 16) {
        throw Error(ErrorCode::InvalidArgument, "generator length must be >= 16");
    }
    if (!(spec.sigma > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "generator sigma must be positive");
    }
    if (spec.sample_interval.count() <= 0) {
        throw Error(ErrorCode::InvalidArgument, "generator sample interval must be positive");
    }
    const bool needs_hurst = spec.kind == GeneratorKind::Fgn || spec.kind == GeneratorKind::FbmPath;
    if (needs_hurst && !(spec.hurst > 0.0 && spec.hurst < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "Hurst exponent must lie in (0, 1)");
    }
    if (spec.kind == GeneratorKind::Ou && !(spec.ou_rate > 0.0 && spec.ou_rate < 2.0)) {
        throw Error(ErrorCode::InvalidArgument, "OU rate must lie in (0, 2)");
    }
    if (spec.kind == GeneratorKind::Jigsaw && (spec.period == 0 || spec.contamination < 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "jigsaw needs period >= 1 and contamination >= 0");
    }
}

TimeSeries generate(const GeneratorSpec& spec) {
    validate(spec);
    NormalSource normals(spec.seed);
    const std::size_t n = spec.length;
    std::vector<double> values;

    switch (spec.kind) {
        case GeneratorKind::Fgn:
            values = fgn(n, spec.hurst, normals);
            for (double& v : values) v *= spec.sigma;
            break;
        case GeneratorKind::FbmPath: {
            auto steps = fgn(n - 1, spec.hurst, normals);
            for (double& v : steps) v *= spec.sigma;
            values = cumulative_from_zero(steps);
            break;
        }
        case GeneratorKind::WhiteNoise:
            values.resize(n);
            for (double& v : values) v = spec.sigma * normals.next();
            break;
        case GeneratorKind::Brownian: {
            std::vector<double> steps(n - 1);
            for (double& v : steps) v = spec.sigma * normals.next();
            values = cumulative_from_zero(steps);
            break;
        }
        case GeneratorKind::Jigsaw: {
            values.assign(n, 0.0);
            for (std::size_t i = 1; i < n; ++i) {
                const bool rising = ((i - 1) / spec.period) % 2 == 0;
                values[i] = values[i - 1] + (rising ? spec.sigma : -spec.sigma);
            }
            if (spec.contamination > 0.0) {
                for (double& v : values) v += spec.contamination * spec.sigma * normals.next();
            }
            break;
        }
        case GeneratorKind::Ou: {
            values.resize(n);
            values[0] = spec.ou_level;
            for (std::size_t i = 1; i < n; ++i) {
                values[i] = values[i - 1] + spec.ou_rate * (spec.ou_level - values[i - 1]) +
                            spec.sigma * normals.next();
            }
            break;
        }
    }

    std::string label = spec.label;
    if (label.empty()) label = std::string(to_string(spec.kind)) + "-seed" + std::to_string(spec.seed);
    return TimeSeries(std::move(values), spec.start_time, spec.sample_interval, std::move(label));
}

std::vector<double> theoretical_autocovariance(GeneratorKind kind, double hurst,
                                               std::span<const std::size_t> lags) {
    std::vector<double> out;
    out.reserve(lags.size());
    switch (kind) {
        case GeneratorKind::Fgn:
            if (!(hurst > 0.0 && hurst < 1.0)) {
                throw Error(ErrorCode::InvalidArgument, "Hurst exponent must lie in (0, 1)");
            }
            for (std::size_t k : lags) out.push_back(fgn_autocovariance(hurst, k));
            return out;
        case GeneratorKind::WhiteNoise:
            for (std::size_t k : lags) out.push_back(k == 0 ? 1.0 : 0.0);
            return out;
        default:
            throw Error(ErrorCode::Unsupported, "no closed-form autocovariance for '" +
                                                    std::string(to_string(kind)) + "'");
    }
}

}  // namespace hurst
