#include "spectori/kruskal.hpp"

#include "spectori/fft.hpp"
#include "spectori/spinor.hpp"

#include <cmath>
#include <stdexcept>

namespace spectori {
namespace {

Eigen::VectorXcd spectralDerivative1D(const Eigen::VectorXcd& f, double period) {
    const int n = int(f.size());
    Eigen::VectorXcd c = fft1Forward(f);
    for (int j = 0; j < n; ++j)
        c[j] *= 2.0 * kPi * kI * double(signedFrequency(j, n)) / period;
    return fft1Inverse(c);
}

}  // namespace

Eigen::VectorXcd miura(const Potential1D& u, MiuraConvention convention) {
    const Eigen::VectorXcd uc = u.samples.cast<cd>();
    const Eigen::VectorXcd ux = spectralDerivative1D(uc, u.period);
    const double squareFactor = convention == MiuraConvention::ZakharovShabat ? 4.0 : 1.0;
    return 2.0 * kI * ux - squareFactor * uc.array().square().matrix();
}

KruskalResult kruskalInvariants(const Eigen::VectorXcd& q, double period, int count) {
    if (count < 1) throw std::invalid_argument("kruskalInvariants: count must be >= 1");
    if (!(period > 0.0)) throw std::invalid_argument("kruskalInvariants: period must be positive");
    const int n = int(q.size());
    const int upto = 2 * count - 1;
    std::vector<Eigen::VectorXcd> R(size_t(upto) + 1);
    R[1] = -q;
    for (int m = 1; m < upto; ++m) {
        Eigen::VectorXcd next = -spectralDerivative1D(R[m], period);
        for (int k = 1; k <= m - 1; ++k) next -= (R[k].array() * R[m - k].array()).matrix();
        R[m + 1] = std::move(next);
    }
    KruskalResult out;
    for (int l = 1; l <= count; ++l) {
        const cd integral = R[2 * l - 1].mean() * period;
        out.H.push_back(-integral);
        out.K.push_back(2.0 * kPi * integral);
    }
    return out;
}

Theorem8Report theorem8CheckPotentials(const Potential1D& u, const Potential1D& uStar, int count) {
    Theorem8Report rep;
    rep.potential = u;
    rep.dualPotential = uStar;
    rep.kPotential = kruskalInvariants(miura(u), u.period, count).K;
    rep.kDualPotential = kruskalInvariants(miura(uStar), uStar.period, count).K;
    for (int l = 0; l < count; ++l) {
        const double d = std::abs(rep.kPotential[l] - rep.kDualPotential[l]);
        rep.relativeDifference.push_back(d / (1.0 + std::abs(rep.kPotential[l])));
    }
    return rep;
}

Theorem8Report theorem8Check(const RevolutionTorus& torus, int n1, int n2, int count) {
    ImmersionR3 F = torus.immersion(n1, n2);
    SurfaceData forms = fundamentalForms(F);
    SpinorExtraction ext = spinorFromSurface(F);

    // U must depend on x only; collapse the grid to a line.
    const Grid2r uGrid = ext.spinor.potentialU.values().real();
    Eigen::VectorXd uLine(n1);
    double yVar = 0.0;
    for (int j = 0; j < n1; ++j) {
        uLine[j] = uGrid.row(j).mean();
        yVar = std::max(yVar, (uGrid.row(j) - uLine[j]).abs().maxCoeff());
    }

    // Dual potential from the surface's own data: U* = -A e^{-alpha}.
    const Grid2r uStarGrid = -(forms.hopf.real() / forms.expAlpha);
    Eigen::VectorXd uStarLine(n1);
    for (int j = 0; j < n1; ++j) uStarLine[j] = uStarGrid.row(j).mean();

    const double T = torus.conformalPeriod();
    Potential1D u(uLine, T);
    Potential1D uStar(uStarLine, T);
    Theorem8Report rep = theorem8CheckPotentials(u, uStar, count);
    rep.potentialYVariation = yVar;
    rep.willmore = willmoreDirect(forms);
    rep.k1VsWillmore = std::abs(rep.kPotential[0] - rep.willmore);
    return rep;
}

}  // namespace spectori
