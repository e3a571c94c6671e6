#ifndef SPECTORI_ISOTHERMIC_HPP
#define SPECTORI_ISOTHERMIC_HPP

#include "spectori/lax.hpp"

namespace spectori {

// Isothermic data in the diagonalizing parameter: I = e^{2 alpha}(dx^2+dy^2),
// II = e^{2 alpha}(k1 dx^2 + k2 dy^2); k1 is the x-direction curvature.
struct IsothermicData {
    PeriodicField alpha;
    PeriodicField k1;
    PeriodicField k2;

    // Residuals of k_{2x} - (k1-k2) alpha_x and k_{1y} + (k1-k2) alpha_y.
    std::pair<double, double> codazziResiduals() const;
};

// The 4x4 pencil with blocks U(lambda) = [[U, lambda J-],[lambda J+, U + alpha_z E]].
LaxConnection isothermicPencil(const IsothermicData& data, cd lambda,
                               double codazziTol = 1e-6);

// y-independent profiles for monodromy work.
struct IsothermicProfiles {
    Potential1D alpha, k1, k2;
};

struct Monodromy4x4 {
    cd lambda;
    Eigen::Matrix4cd matrix;
    std::vector<cd> eigenvalues() const;
};

Monodromy4x4 isothermicMonodromy(const IsothermicProfiles& p, cd lambda);

// Dirac data extracted from a 4-vector pencil solution along the period:
// psi = e^{-alpha}(phi3, phi4) with U = (k1+k2) e^alpha / 4 and
// psi* = e^{-alpha}(phi2, phi1) with U* = (k2-k1) e^alpha / 4.
struct DiracPairExtraction {
    Eigen::MatrixXcd psi;       // 2 x n samples along x
    Eigen::MatrixXcd psiStar;   // 2 x n
    double diracResidual;       // max pointwise residual of D psi
    double diracResidualStar;
    cd multiplierPhi;           // Floquet multiplier of the 4-vector
    cd multiplierPsi;           // end/start ratio of psi
    cd multiplierPsiStar;
};

DiracPairExtraction extractDiracPair(const IsothermicProfiles& p, cd lambda, int nSamples);

}  // namespace spectori

#endif
