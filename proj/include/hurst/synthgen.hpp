#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hurst/time_series.hpp"

namespace hurst {

enum class GeneratorKind { Fgn, FbmPath, WhiteNoise, Brownian, Jigsaw, Ou };

[[nodiscard]] std::string_view to_string(GeneratorKind kind) noexcept;
/// Accepts the snake_case names used on the command line ("fgn", "fbm_path", ...).
[[nodiscard]] GeneratorKind parse_generator_kind(std::string_view name);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Fgn;
    double hurst = 0.5;
    std::size_t length = 1024;
    std::uint64_t seed = 0;
    double sigma = 1.0;
    /// OU only: x <- x + rate (level - x) + sigma eps, 0 < rate < 2.
    double ou_rate = 0.1;
    double ou_level = 0.0;
    /// Jigsaw only: number of consecutive +sigma increments before the sign flips.
    std::size_t period = 1;
    /// Jigsaw only: std of white noise added to the values, in units of sigma.
    double contamination = 0.0;
    Timestamp start_time{};
    Duration sample_interval{3600};
    std::string label;
};

/// Throws InvalidArgument when the spec's invariants do not hold.
void validate(const GeneratorSpec& spec);

/// Deterministic for a fixed spec. fGn comes from circulant embedding of the
/// exact fGn autocovariance, so the target covariance holds by construction.
[[nodiscard]] TimeSeries generate(const GeneratorSpec& spec);

/// Closed-form normalised autocovariance: fGn rho(k) or white noise (delta at 0).
[[nodiscard]] std::vector<double> theoretical_autocovariance(GeneratorKind kind, double hurst,
                                                             std::span<const std::size_t> lags);

/// Standard normals from mt19937_64 via Box-Muller. The bit stream depends
/// only on the seed, unlike std::normal_distribution.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}
    double next();

private:
    double uniform_open();

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace hurst
