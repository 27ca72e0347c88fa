#include "hurst/regression.hpp"

#include <cmath>
#include <vector>

#include "hurst/error.hpp"

namespace hurst {

LinearFit fit_line(std::span<const double> x, std::span<const double> y,
                   std::span<const double> weights) {
    if (x.size() != y.size() || (!weights.empty() && weights.size() != x.size())) {
        throw Error(ErrorCode::InvalidArgument, "fit_line: mismatched input lengths");
    }
    if (x.size() < 2) {
        throw Error(ErrorCode::InsufficientData, "fit_line: need at least 2 points");
    }
    const bool weighted = !weights.empty();
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = weighted ? weights[i] : 1.0;
        if (w < 0.0) throw Error(ErrorCode::InvalidArgument, "fit_line: negative weight");
        sw += w;
        sx += w * x[i];
        sy += w * y[i];
    }
    if (!(sw > 0.0)) throw Error(ErrorCode::InsufficientData, "fit_line: zero total weight");
    const double mx = sx / sw;
    const double my = sy / sw;

    // centred sums keep the slope accurate when x sits far from the origin
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = weighted ? weights[i] : 1.0;
        const double dx = x[i] - mx;
        sxx += w * dx * dx;
        sxy += w * dx * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw Error(ErrorCode::InsufficientData, "fit_line: abscissae are all identical");
    }

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points = x.size();
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(x.size()));
    return fit;
}

LinearFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::InvalidArgument, "fit_loglog: mismatched input lengths");
    }
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "fit_loglog: inputs must be positive");
        }
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_line(lx, ly);
}

}  // namespace hurst
