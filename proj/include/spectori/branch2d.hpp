#ifndef SPECTORI_BRANCH2D_HPP
#define SPECTORI_BRANCH2D_HPP

#include "spectori/scan2d.hpp"

namespace spectori {

// A point on the sheet through infinity_+: the Floquet function is
// e^{lambda z + W zbar} * (periodic), so k1 = (lambda + W)/(2 pi i),
// k2 = (lambda - W)/(2 pi) and mu(gamma) = e^{lambda gamma + W conj(gamma)}.
struct BranchSample {
    cd lambda{0.0, 0.0};
    cd w{0.0, 0.0};
    Quasimomentum k;
    cd mu1{0.0, 0.0}, mu2{0.0, 0.0};
    double witness = 0.0;
    bool converged = false;
};

Quasimomentum quasimomentumFromSheet(cd lambda, cd w);

struct TraceOptions {
    cd initialW{0.0, 0.0};
    int maxNewton = 50;
    double newtonTol = 1e-13;
    double witnessCheckTol = 1e-6;  // relative to the operator norm scale
};

// Newton continuation of W(lambda) holding the truncated operator singular,
// using a bordered analytic witness h(W) = 1/(c^H A^{-1} b). Stops early and
// flags the curve incomplete if a step fails to re-converge.
struct BranchCurve {
    std::vector<BranchSample> samples;
    bool complete = true;
};

BranchCurve traceBranch(const DiracPencilFactory& factory, const std::vector<cd>& lambdaPath,
                        const TraceOptions& opts = {});

struct AsymptoticExpansion {
    cd c1{0.0, 0.0};
    std::vector<cd> coefficients;  // C1, C3, C5, ...
    double fitResidual = 0.0;
    double willmoreFromC1 = 0.0;   // -4 Re(C1) VolPi
    double willmoreDirect = 0.0;   // 4 Int U^2 dx dy, the quadrature oracle
    bool reliable = true;
};

struct FitOptions {
    std::vector<double> radii{20.0, 30.0, 40.0};
    int anglesPerRadius = 8;
    int maxOddPower = 5;            // fit C1/l + C3/l^3 + C5/l^5
    double residualThreshold = 1e-6;
};

// Fits W(lambda) = C1/lambda + C3/lambda^3 + ... on traced-branch data (only
// odd powers; the k -> -k involution kills the even ones) and converts C1 to
// the Willmore value through the residue formula.
AsymptoticExpansion extractC1(const DiracPencilFactory& factory, const PeriodicField& potential,
                              const FitOptions& opts = {});

}  // namespace spectori

#endif
