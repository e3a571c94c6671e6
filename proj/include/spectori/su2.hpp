#ifndef SPECTORI_SU2_HPP
#define SPECTORI_SU2_HPP

#include "spectori/spinor.hpp"

namespace spectori {

// 2x2 complex matrix field, the carrier for maps into SU(2) = S^3 and for the
// su(2)-valued derivatives Psi = f^{-1} f_z.
struct Matrix2Field {
    FundamentalGrid grid;
    Grid2c a, b, c, d;  // [[a, b],[c, d]]

    static Matrix2Field zero(const FundamentalGrid& g);
    Eigen::Matrix2cd sampleAt(int j, int k) const;
};

// Immersion f: C/Lambda -> SU(2); every sample must be special-unitary.
struct SU2Immersion {
    FundamentalGrid grid;
    Matrix2Field f;

    double unitarityDefect() const;  // max |f f^H - 1| + |det f - 1|
    Matrix2Field derivZ() const;     // entrywise spectral derivative
    Matrix2Field psi() const;        // f^{-1} f_z (special-unitary inverse)
    Matrix2Field psiStar() const;    // f^{-1} f_zbar
};

// The Clifford torus f(x,y) = (1/sqrt 2) [[e^{ix}, e^{iy}],[-e^{-iy}, e^{-ix}]]
// on the square lattice 2 pi (Z + iZ).
SU2Immersion cliffordTorus(int n1, int n2);

// Spinor data of a surface in S^3: D^S psi = 0 with potential
// V = (H - i) e^alpha / 2 and the surface constraint |psi|^2 = -2 Im V.
struct SphereSpinor {
    PeriodicField psi1;
    PeriodicField psi2;
    Grid2c potentialV;
    Grid2r meanCurv;
    Grid2r expAlpha;
    Grid2c hopf;
    Character character;
    double characterDefect = 0.0;
    double conformalDefect = 0.0;
    FundamentalGrid grid() const { return psi1.grid(); }
};

struct SpinorS3Options {
    double conformalTol = 1e-8;
};

// Expands df = f (Psi dz + Psi* dzbar), inverts the quadric parametrization of
// Psi's components and recovers H by least squares on the tension identity
// dbar Psi + d Psi* = i H [Psi*, Psi].
SphereSpinor spinorFromS3(const SU2Immersion& f, const SpinorS3Options& opts = {});

// Max-norm of D^S psi together with the conjugate-solution residual for
// phi = (conj psi2, -conj psi1).
std::pair<double, double> diracSResidual(const SphereSpinor& s);

// Residuals of the S^3 Codazzi equations
//   alpha_zzbar + |V|^2 - |A|^2 e^{-2 alpha} = 0,
//   A_zbar = (conj(V)_z - alpha_z conj(V)) e^alpha.
std::pair<double, double> codazziSphereResiduals(const SphereSpinor& s);

// The multiplier map of the Clifford torus:
//   lambda -> (e^{2 pi (lambda - 1/(8 lambda))}, e^{2 pi i (lambda + 1/(8 lambda))}).
std::pair<cd, cd> cliffordSpectrumMap(cd lambda);

// Residual of (d dbar + 1/8) applied to a field (the Clifford companion check).
double cliffordHarmonicResidual(const PeriodicField& f);

}  // namespace spectori

#endif
