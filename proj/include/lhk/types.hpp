#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lhk {

using cplx = std::complex<double>;

/// Hypergroup order and derived homogeneous dimension Q = 2*alpha + 4.
struct Params {
    double alpha = 0.0;

    explicit Params(double a) : alpha(a) {
        if (!(a >= 0.0)) throw std::invalid_argument("Params: alpha must be >= 0");
    }
    double Q() const { return 2.0 * alpha + 4.0; }
};

/// Point of K = [0,inf) x R.
struct HPoint {
    double x = 0.0;
    double t = 0.0;
};

/// Point of the dual: frequency lambda != 0 and Laguerre index m >= 0.
struct DPoint {
    double lambda = 1.0;
    int m = 0;
};

inline void check_hpoint(const HPoint& p) {
    if (!(p.x >= 0.0)) throw std::invalid_argument("HPoint: x must be >= 0");
}

inline void check_dpoint(const DPoint& d) {
    if (d.lambda == 0.0) throw std::invalid_argument("DPoint: lambda must be nonzero");
    if (d.m < 0) throw std::invalid_argument("DPoint: m must be >= 0");
}

} // namespace lhk
