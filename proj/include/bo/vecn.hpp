#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace bo {

/// Fixed-size complex vector with the arithmetic needed by the quadrature
/// engine, used to integrate several moments of one integrand in a single
/// adaptive pass.
template <std::size_t K>
struct VecC {
    std::array<std::complex<double>, K> v{};

    VecC& operator+=(const VecC& o) {
        for (std::size_t i = 0; i < K; ++i) v[i] += o.v[i];
        return *this;
    }
    VecC& operator-=(const VecC& o) {
        for (std::size_t i = 0; i < K; ++i) v[i] -= o.v[i];
        return *this;
    }
    VecC& operator*=(double s) {
        for (std::size_t i = 0; i < K; ++i) v[i] *= s;
        return *this;
    }
    VecC& operator*=(std::complex<double> s) {
        for (std::size_t i = 0; i < K; ++i) v[i] *= s;
        return *this;
    }
};

template <std::size_t K>
double quad_mag(const VecC<K>& x) {
    double m = 0.0;
    for (const auto& e : x.v) m = std::max(m, std::abs(e));
    return m;
}

} // namespace bo
