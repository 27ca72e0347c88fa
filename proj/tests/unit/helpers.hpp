#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hurst/synthgen.hpp"
#include "hurst/time_series.hpp"

namespace testing {

inline hurst::TimeSeries series(std::vector<double> v, std::string label = "t") {
    return hurst::TimeSeries(std::move(v), hurst::Timestamp{}, hurst::Duration{3600}, std::move(label));
}

inline hurst::TimeSeries synth(hurst::GeneratorKind kind, std::size_t n, std::uint64_t seed,
                               double h = 0.5) {
    hurst::GeneratorSpec spec;
    spec.kind = kind;
    spec.length = n;
    spec.seed = seed;
    spec.hurst = h;
    return hurst::generate(spec);
}

inline bool is_sorted_strict(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) return false;
    }
    return true;
}

}  // namespace testing
