#ifndef SPECTORI_SPINOR_HPP
#define SPECTORI_SPINOR_HPP

#include "spectori/immersion.hpp"

namespace spectori {

// Weierstrass data (psi1, psi2, U): D psi = 0 with D the Dirac operator
// [[U, d],[-dbar, U]], U = H e^alpha / 2 real, e^alpha = |psi1|^2 + |psi2|^2.
struct WeierstrassSpinor {
    PeriodicField psi1;
    PeriodicField psi2;
    PeriodicField potentialU;  // character (+,+), real-valued

    const FundamentalGrid& grid() const { return psi1.grid(); }
    Character character() const { return psi1.character(); }
    Grid2r expAlpha() const { return psi1.values().abs2() + psi2.values().abs2(); }

    // ||d psi2 + U psi1||_inf + ||-dbar psi1 + U psi2||_inf
    double diracResidual() const;
};

// The quadric components of F_z determined by a spinor:
//   Z1 = i/2 (conj(psi2)^2 + psi1^2), Z2 = 1/2 (conj(psi2)^2 - psi1^2),
//   Z3 = psi1 conj(psi2).
std::array<Grid2c, 3> quadricFromSpinor(const WeierstrassSpinor& psi);

struct SpinorExtraction {
    WeierstrassSpinor spinor;
    Character detectedCharacter;
    double characterDefect;  // distance of the wrap mismatch from +-1
};

struct QuadricBranch {
    PeriodicField psi1;
    PeriodicField psi2;
    Character character;
    double characterDefect;
};

// Inverts Z1 = i/2(conj(psi2)^2 + psi1^2), Z2 = 1/2(conj(psi2)^2 - psi1^2),
// Z3 = psi1 conj(psi2) with a continuous square-root branch; shared by the R^3
// and S^3 extractions.
QuadricBranch branchSpinorFromQuadric(const FundamentalGrid& grid, const Grid2c& z1,
                                      const Grid2c& z2, const Grid2c& z3);

// Inverts the quadric parametrization; the square-root branch is continued
// along row 0 and then down every column, transferring through zeros of one
// component via Z3. Seed sign: Re(psi1) >= 0 at the origin (Im > 0 on a tie).
SpinorExtraction spinorFromSurface(const ImmersionR3& F, const FormsOptions& opts = {});

// Weierstrass integration of the spinor into a surface.
ImmersionR3 surfaceFromSpinor(const WeierstrassSpinor& psi, const Vec3& basePoint = Vec3::Zero());

// (-i Int conj(psi1)^2, -i Int psi2^2, -i Int conj(psi1) psi2) over the domain;
// all three vanish iff the represented surface closes up to a torus.
std::array<cd, 3> closureDefect(const WeierstrassSpinor& psi);

double willmoreDirect(const SurfaceData& s);                  // Int H^2 e^{2 alpha} dx dy
double willmoreFromPotential(const WeierstrassSpinor& psi);   // 4 Int U^2 dx dy

// Conformal reparametrization w = t^2 z: lattice scales by t^2, the spinor
// becomes (psi1/t, psi2/conj(t)) and U becomes U/|t|^2, so that the Dirac
// equation, e^alpha and all Floquet multipliers are preserved.
WeierstrassSpinor reparametrize(const WeierstrassSpinor& psi, cd t);

// Max residuals of the two first-order Gauss-Weingarten systems in spinor form.
std::pair<double, double> gaussWeingartenResiduals(const WeierstrassSpinor& psi,
                                                   const SurfaceData& s);

}  // namespace spectori

#endif
