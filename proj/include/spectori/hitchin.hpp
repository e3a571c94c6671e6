#ifndef SPECTORI_HITCHIN_HPP
#define SPECTORI_HITCHIN_HPP

#include "spectori/su2.hpp"

namespace spectori {

// The paper displays the lambda placement两 ways; both are kept. The
// eigenfunction display ((1+lambda)/2 on the d side) is the default since the
// Theorem-10 gauge computation is written against it.
enum class HitchinPlacement { FamilyDisplay, EigenfunctionDisplay };

struct HitchinCoefficients {
    cd a;  // phi_z    = -a Psi  phi
    cd b;  // phi_zbar = -b Psi* phi
};
HitchinCoefficients hitchinCoefficients(cd lambda, HitchinPlacement placement);

// Residuals of (hitchin1): dbar Psi - d Psi* + [Psi*, Psi] and dbar Psi + d Psi*.
std::pair<double, double> harmonicityResiduals(const SU2Immersion& f);

// Max-norm of -a dbar Psi + b d Psi* + a b [Psi, Psi*], the compatibility
// residual of the flat family at this lambda.
double hitchinFlatnessResidual(const SU2Immersion& f, cd lambda,
                               HitchinPlacement placement = HitchinPlacement::EigenfunctionDisplay);

// Monodromy of the family along generator 0 or 1, starting on grid row/column
// `baseIndex` of the transverse coordinate.
Eigen::Matrix2cd hitchinMonodromy(const SU2Immersion& f, int generator, cd lambda,
                                  HitchinPlacement placement = HitchinPlacement::EigenfunctionDisplay,
                                  int baseIndex = 0);

struct Theorem10Report {
    double gaugeResidualPsi = 0.0;      // || L^{-1} Psi L - e^alpha J+ ||
    double gaugeResidualPsiStar = 0.0;  // || L^{-1} Psi* L + e^alpha J- ||
    double diracResidual = 0.0;         // D^S residual of the gauged Floquet data
    cd hitchinMultiplier{0.0, 0.0};     // eigenvalue mu of H(lambda)
    cd gaugedMultiplier{0.0, 0.0};      // multiplier of psi~ along the loop
    int characterSign = 1;              // (-1)^{eps(gamma)} of the generating spinor
    double multiplierDefect = 0.0;      // |gauged - sign * mu|
};

// Verifies the Theorem-10 gauge psi~ = e^alpha [[0, i lambda],[1, 0]] L^{-1} phi:
// the conjugation identities, D^S psi~ = 0 with V = -i e^alpha/2, and the
// multiplier relation against the generating spinor's character.
Theorem10Report theorem10Gauge(const SU2Immersion& f, const SphereSpinor& spinor, cd lambda,
                               int generator = 0,
                               HitchinPlacement placement = HitchinPlacement::EigenfunctionDisplay);

}  // namespace spectori

#endif
