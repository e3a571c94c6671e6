#ifndef SPECTORI_BUILTINS_HPP
#define SPECTORI_BUILTINS_HPP

#include "spectori/immersion.hpp"

namespace spectori {

// Circular torus of revolution around the z-axis, axis distance R, profile
// radius r, in its conformal parameter z = x + iy (y the rotation angle).
// The lattice is T Z + 2 pi i Z with T = 2 pi r / sqrt(R^2 - r^2).
struct RevolutionTorus {
    double axisDistance;  // R
    double profileRadius; // r

    double conformalPeriod() const;            // T
    double profileAngle(double x) const;       // u(x), continuous over a period
    // Closed-form profile data in the conformal parameter.
    double expAlpha(double x) const;           // R + r cos u
    double meanCurvature(double x) const;      // (a + 2 cos u) / (2 r (a + cos u)), a = R/r
    double potentialU(double x) const;         // H e^alpha / 2 = (a + 2 cos u)/4
    // Principal curvatures along x (meridian) and y (parallel).
    double curvatureMeridian() const { return 1.0 / profileRadius; }
    double curvatureParallel(double x) const;

    ImmersionR3 immersion(int n1, int n2) const;
    Lattice lattice() const;
};

// Flat plane F = (Re z, Im z, 0) over the given lattice (translation periods
// are the generators themselves).
ImmersionR3 planeImmersion(const Lattice& lattice, int n1, int n2);

// The Willmore-minimizing shape R/r = sqrt(2), scaled so r = 1.
inline RevolutionTorus cliffordShapeTorus() { return {std::sqrt(2.0), 1.0}; }

}  // namespace spectori

#endif
