#include "spectori/builtins.hpp"

#include <cmath>
#include <stdexcept>

namespace spectori {

double RevolutionTorus::conformalPeriod() const {
    const double a = axisDistance / profileRadius;
    if (!(a > 1.0)) throw std::invalid_argument("RevolutionTorus: requires R > r > 0");
    return 2.0 * kPi / std::sqrt(a * a - 1.0);
}

double RevolutionTorus::profileAngle(double x) const {
    // du/dx = a + cos u integrates to u = 2 atan(c tan(kx)) with
    // c = sqrt((a+1)/(a-1)), k = sqrt(a^2-1)/2; atan2 continues the branch
    // through u = pi. Jumps by multiples of 4 pi across periods are invisible
    // to the cos/sin consumers.
    const double a = axisDistance / profileRadius;
    const double c = std::sqrt((a + 1.0) / (a - 1.0));
    const double k = 0.5 * std::sqrt(a * a - 1.0);
    return 2.0 * std::atan2(c * std::sin(k * x), std::cos(k * x));
}

double RevolutionTorus::expAlpha(double x) const {
    return axisDistance + profileRadius * std::cos(profileAngle(x));
}

double RevolutionTorus::curvatureParallel(double x) const {
    const double u = profileAngle(x);
    return std::cos(u) / (axisDistance + profileRadius * std::cos(u));
}

double RevolutionTorus::meanCurvature(double x) const {
    return 0.5 * (curvatureMeridian() + curvatureParallel(x));
}

double RevolutionTorus::potentialU(double x) const {
    return 0.5 * meanCurvature(x) * expAlpha(x);
}

Lattice RevolutionTorus::lattice() const { return Lattice(conformalPeriod(), cd(0.0, 2.0 * kPi)); }

ImmersionR3 RevolutionTorus::immersion(int n1, int n2) const {
    FundamentalGrid grid(lattice(), n1, n2);
    ImmersionR3 F(grid);
    const double T = conformalPeriod();
    for (int j = 0; j < n1; ++j) {
        const double u = profileAngle(T * double(j) / n1);
        const double rho = axisDistance + profileRadius * std::cos(u);
        const double h = profileRadius * std::sin(u);
        for (int k = 0; k < n2; ++k) {
            const double y = 2.0 * kPi * double(k) / n2;
            F.periodicPart[0](j, k) = rho * std::cos(y);
            F.periodicPart[1](j, k) = rho * std::sin(y);
            F.periodicPart[2](j, k) = h;
        }
    }
    return F;
}

ImmersionR3 planeImmersion(const Lattice& lattice, int n1, int n2) {
    FundamentalGrid grid(lattice, n1, n2);
    ImmersionR3 F(grid);
    F.translationPeriods[0] = Vec3(std::real(lattice.gamma1()), std::imag(lattice.gamma1()), 0.0);
    F.translationPeriods[1] = Vec3(std::real(lattice.gamma2()), std::imag(lattice.gamma2()), 0.0);
    return F;
}

}  // namespace spectori
