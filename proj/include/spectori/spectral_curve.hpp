#ifndef SPECTORI_SPECTRAL_CURVE_HPP
#define SPECTORI_SPECTRAL_CURVE_HPP

#include "spectori/zakharov.hpp"

#include <vector>

namespace spectori {

struct SearchRegion {
    double reLo, reHi, imLo, imHi;
};

struct RootSearchBudget {
    long maxEvaluations = 400000;
    double minBoxWidth = 1e-3;
    double newtonTol = 1e-11;
    // |f'| below classifyTol * scale at a polished root declares a double root.
    double classifyTol = 1e-6;
};

struct SpectralCurve1D {
    std::vector<cd> branchPoints;     // simple roots of Tr^2 - 4
    std::vector<cd> resonancePoints;  // double roots
    int genusEstimate = 0;            // -1 when the search was truncated
    bool complete = true;
    SearchRegion region{};
    long evaluations = 0;
};

// Locates the roots of Tr^2(T(lambda)) - 4 inside the region by winding-number
// subdivision with Newton polish (analytic dTr/dlambda via the variational
// equation), then classifies simple vs double roots by the derivative test.
SpectralCurve1D branchPoints(const Monodromy1D& m, const SearchRegion& region,
                             const RootSearchBudget& budget = {});

}  // namespace spectori

#endif
