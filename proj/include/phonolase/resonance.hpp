#pragma once

#include "phonolase/config.hpp"
#include "phonolase/point.hpp"
#include "phonolase/sweep.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace phonolase {

/// Roots of `residual(point at axis = v)` on [start, stop]: bracket sign changes
/// on a uniform scan of `samples` points, then refine each bracket to full
/// double precision. Points where the residual is NaN never bracket a root.
inline std::vector<double> find_axis_roots(const Config& base, const SweepAxis& scan,
                                           const std::function<double(const PointResult&)>& residual) {
    check_axis(scan);
    auto eval = [&](double v) {
        Config c = base;
        set_axis(c, scan.name, v);
        return residual(evaluate_point(c));
    };
    std::vector<double> roots;
    double x0 = scan.value(0), f0 = eval(x0);
    for (int k = 1; k < scan.steps; ++k) {
        const double x1 = scan.value(k), f1 = eval(x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if (std::isfinite(f0) && std::isfinite(f1) && (f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
            std::uintmax_t iterations = 200;
            const auto bracket = boost::math::tools::toms748_solve(
                eval, x0, x1, f0, f1, boost::math::tools::eps_tolerance<double>(), iterations);
            roots.push_back(0.5 * (bracket.first + bracket.second));
        }
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) roots.push_back(x0);
    return roots;
}

} // namespace phonolase
