#ifndef SPECTORI_IMMERSION_HPP
#define SPECTORI_IMMERSION_HPP

#include "spectori/field.hpp"

#include <array>

namespace spectori {

// Conformally immersed plane F: C -> R^3 with double-periodic Gauss map,
// F(z) = s*tau1 + t*tau2 + P(z) with P periodic (z = s*gamma1 + t*gamma2).
// A torus is the case tau1 = tau2 = 0.
struct ImmersionR3 {
    FundamentalGrid grid;
    std::array<Grid2r, 3> periodicPart;
    std::array<Vec3, 2> translationPeriods{Vec3::Zero(), Vec3::Zero()};

    ImmersionR3(FundamentalGrid g) : grid(std::move(g)) {
        for (auto& c : periodicPart) c = Grid2r::Zero(grid.n1(), grid.n2());
    }

    bool isTorus(double tol = 1e-10) const {
        return translationPeriods[0].norm() + translationPeriods[1].norm() < tol;
    }

    Vec3 position(int j, int k) const;
    // F_z, component-wise (periodic fields: the linear part contributes a constant).
    std::array<PeriodicField, 3> derivZ() const;
};

// First/second fundamental form data in a conformal parameter.
struct SurfaceData {
    FundamentalGrid grid;
    Grid2r expAlpha;      // e^alpha
    Grid2r expTwoAlpha;   // e^{2 alpha} = 2 <F_z, F_zbar>
    Grid2r meanCurv;      // H
    Grid2r gaussCurv;     // K
    Grid2c hopf;          // A = <F_zz, N>
    Grid2r b;             // B = <F_zzbar, N> = H e^{2 alpha} / 2
    std::array<Grid2r, 3> normal;
    double conformalDefect = 0.0;  // max |<F_z,F_z>|

    PeriodicField alphaField() const;
    PeriodicField hopfField() const { return PeriodicField(grid, hopf); }
    // Residuals of the conformal Codazzi equations:
    //   alpha_zzbar + e^{-2alpha}(B^2 - |A|^2) = 0,  A_zbar = H_z e^{2alpha} / 2.
    std::pair<double, double> codazziResiduals() const;
    // Principal curvatures ordered k1 >= k2; near-umbilic points use |A| directly.
    std::pair<Grid2r, Grid2r> principalCurvatures(double umbilicTol = 1e-12) const;
};

struct FormsOptions {
    // Accepted conformality defect, relative to mean(e^{2 alpha}).
    double conformalTol = 1e-8;
};

// e^alpha, H, K, A, B, N computed spectrally. Throws if the parameter fails the
// conformality check (reports the worst grid location).
SurfaceData fundamentalForms(const ImmersionR3& F, const FormsOptions& opts = {});

// Dual isothermic surface, F*_z = e^{-2 alpha} F_zbar; requires Im A ~ 0.
ImmersionR3 dualIsothermic(const ImmersionR3& F, double imagHopfTol = 1e-6);

// Spectral antiderivative of a target F_z; zero modes become the translation
// periods and the anchor fixes F at grid index (0,0).
ImmersionR3 integrateDerivative(const FundamentalGrid& grid, const std::array<Grid2c, 3>& fz,
                                const Vec3& basePoint);

}  // namespace spectori

#endif
