#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace bo {

using cplx = std::complex<double>;

/// Semi-infinite ray attached to one end of a contour: the ray runs from
/// `anchor` to infinity in direction `direction` (an angle in (-pi, pi]).
struct Tail {
    cplx anchor;
    double direction = 0.0;
};

/// Piecewise-linear integration path with optional semi-infinite tails.
/// The finite part is the polyline through `nodes`; `tail_in` (if present)
/// arrives from infinity at the first node, `tail_out` departs from the last.
struct ContourPath {
    std::vector<cplx> nodes;
    std::optional<Tail> tail_in;
    std::optional<Tail> tail_out;
    double clearance = 0.0;

    bool valid() const {
        if (nodes.size() < 1) return false;
        for (std::size_t i = 1; i < nodes.size(); ++i)
            if (nodes[i] == nodes[i - 1]) return false;
        return true;
    }
};

} // namespace bo
