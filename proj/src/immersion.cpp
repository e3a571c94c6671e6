#include "spectori/immersion.hpp"

#include "spectori/fft.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spectori {

Vec3 ImmersionR3::position(int j, int k) const {
    const double s = double(j) / grid.n1(), t = double(k) / grid.n2();
    Vec3 p;
    for (int i = 0; i < 3; ++i)
        p[i] = s * translationPeriods[0][i] + t * translationPeriods[1][i] + periodicPart[i](j, k);
    return p;
}

std::array<PeriodicField, 3> ImmersionR3::derivZ() const {
    const Lattice& lat = grid.lattice();
    const cd sz = lat.sZ(), tz = lat.tZ();
    std::array<PeriodicField, 3> out = {PeriodicField::constant(grid, 0.0),
                                        PeriodicField::constant(grid, 0.0),
                                        PeriodicField::constant(grid, 0.0)};
    for (int i = 0; i < 3; ++i) {
        PeriodicField p(grid, periodicPart[i].cast<cd>());
        const cd linear = translationPeriods[0][i] * sz + translationPeriods[1][i] * tz;
        out[i] = p.dZ() + PeriodicField::constant(grid, linear);
    }
    return out;
}

PeriodicField SurfaceData::alphaField() const {
    return PeriodicField(grid, (0.5 * expTwoAlpha.log()).cast<cd>());
}

std::pair<double, double> SurfaceData::codazziResiduals() const {
    PeriodicField alpha = alphaField();
    PeriodicField a(grid, hopf);
    Grid2c gauss = alpha.dZ().dZbar().values() +
                   ((b.square() - hopf.abs2()) / expTwoAlpha.square()).cast<cd>();
    PeriodicField h(grid, meanCurv.cast<cd>());
    Grid2c codazzi = a.dZbar().values() - 0.5 * h.dZ().values() * expTwoAlpha.cast<cd>();
    return {gauss.abs().maxCoeff(), codazzi.abs().maxCoeff()};
}

std::pair<Grid2r, Grid2r> SurfaceData::principalCurvatures(double umbilicTol) const {
    // H^2 - K = 4|A|^2 e^{-4 alpha} exactly; the |A| route avoids cancellation
    // near umbilics.
    Grid2r half = 2.0 * hopf.abs() / expTwoAlpha;
    (void)umbilicTol;
    return {meanCurv + half, meanCurv - half};
}

SurfaceData fundamentalForms(const ImmersionR3& F, const FormsOptions& opts) {
    const auto fz = F.derivZ();
    const int n1 = F.grid.n1(), n2 = F.grid.n2();

    Grid2c confDefect = Grid2c::Zero(n1, n2);
    Grid2r e2a = Grid2r::Zero(n1, n2);
    for (int i = 0; i < 3; ++i) {
        confDefect += fz[i].values().square();
        e2a += 2.0 * fz[i].values().abs2();
    }
    const double defect = confDefect.abs().maxCoeff();
    const double scale = e2a.mean();
    if (defect > opts.conformalTol * scale) {
        Eigen::Index wj = 0, wk = 0;
        confDefect.abs().maxCoeff(&wj, &wk);
        std::ostringstream msg;
        msg << "fundamentalForms: parameter is not conformal: max|<F_z,F_z>| = " << defect
            << " at grid index (" << wj << "," << wk << "), tolerance "
            << opts.conformalTol * scale;
        throw std::invalid_argument(msg.str());
    }
    if (!(e2a.minCoeff() > 0.0))
        throw std::invalid_argument("fundamentalForms: degenerate metric, e^{2 alpha} <= 0");

    SurfaceData s{F.grid,
                  e2a.sqrt(),
                  e2a,
                  Grid2r::Zero(n1, n2),
                  Grid2r::Zero(n1, n2),
                  Grid2c::Zero(n1, n2),
                  Grid2r::Zero(n1, n2),
                  {Grid2r::Zero(n1, n2), Grid2r::Zero(n1, n2), Grid2r::Zero(n1, n2)}};
    s.conformalDefect = defect;

    // N = (F_x cross F_y) / |F_x cross F_y|, with F_x = 2 Re F_z, F_y = -2 Im F_z.
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) {
            Vec3 fx, fy;
            for (int i = 0; i < 3; ++i) {
                fx[i] = 2.0 * std::real(fz[i].values()(j, k));
                fy[i] = -2.0 * std::imag(fz[i].values()(j, k));
            }
            Vec3 nrm = fx.cross(fy);
            nrm.normalize();
            for (int i = 0; i < 3; ++i) s.normal[i](j, k) = nrm[i];
        }

    Grid2c hopf = Grid2c::Zero(n1, n2);
    Grid2c bC = Grid2c::Zero(n1, n2);
    for (int i = 0; i < 3; ++i) {
        const Grid2c fzz = fz[i].dZ().values();
        const Grid2c fzzb = fz[i].dZbar().values();
        hopf += fzz * s.normal[i].cast<cd>();
        bC += fzzb * s.normal[i].cast<cd>();
    }
    s.hopf = hopf;
    s.b = bC.real();
    s.meanCurv = 2.0 * s.b / e2a;
    s.gaussCurv = 4.0 * (s.b.square() - hopf.abs2()) / e2a.square();
    return s;
}

namespace {

// Real antiderivative: given the complex field Z that should equal P_z for a
// real periodic P (plus linear part), rebuild P and the translation periods.
// P is fixed by its gradient in lattice coordinates: P_s = 2 Re(gamma1 Z),
// P_t = 2 Re(gamma2 Z).
struct RealAntiderivative {
    Grid2r periodic;
    double tau1, tau2;
};

RealAntiderivative integrateRealPart(const FundamentalGrid& grid, const Grid2c& zvals) {
    const cd g1 = grid.lattice().gamma1(), g2 = grid.lattice().gamma2();
    const int n1 = grid.n1(), n2 = grid.n2();
    Grid2c ps = 2.0 * (g1 * zvals).real().cast<cd>();
    Grid2c pt = 2.0 * (g2 * zvals).real().cast<cd>();
    const Grid2c cs = fft2Forward(ps);
    const Grid2c ct = fft2Forward(pt);
    Grid2c coeff = Grid2c::Zero(n1, n2);
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) {
            const int m = signedFrequency(j, n1), n = signedFrequency(k, n2);
            if (m == 0 && n == 0) continue;
            // Prefer the better-conditioned direction.
            if (std::abs(m) >= std::abs(n))
                coeff(j, k) = cs(j, k) / (2.0 * kPi * kI * double(m));
            else
                coeff(j, k) = ct(j, k) / (2.0 * kPi * kI * double(n));
        }
    RealAntiderivative out;
    out.periodic = fft2Inverse(coeff).real();
    out.tau1 = std::real(cs(0, 0));
    out.tau2 = std::real(ct(0, 0));
    return out;
}

}  // namespace

ImmersionR3 integrateDerivative(const FundamentalGrid& grid, const std::array<Grid2c, 3>& fz,
                                const Vec3& basePoint) {
    ImmersionR3 F(grid);
    for (int i = 0; i < 3; ++i) {
        RealAntiderivative a = integrateRealPart(grid, fz[i]);
        F.periodicPart[i] = a.periodic;
        F.translationPeriods[0][i] = a.tau1;
        F.translationPeriods[1][i] = a.tau2;
    }
    const Vec3 shift = basePoint - F.position(0, 0);
    for (int i = 0; i < 3; ++i) F.periodicPart[i] += shift[i];
    return F;
}

ImmersionR3 dualIsothermic(const ImmersionR3& F, double imagHopfTol) {
    SurfaceData s = fundamentalForms(F);
    const double imA = s.hopf.imag().abs().maxCoeff();
    const double scaleA = s.hopf.abs().maxCoeff();
    if (imA > imagHopfTol * std::max(1.0, scaleA)) {
        std::ostringstream msg;
        msg << "dualIsothermic: surface is not isothermic in this parameter, max|Im A| = " << imA;
        throw std::invalid_argument(msg.str());
    }
    const auto fz = F.derivZ();
    std::array<Grid2c, 3> dualZ;
    for (int i = 0; i < 3; ++i)
        dualZ[i] = fz[i].values().conjugate() / s.expTwoAlpha.cast<cd>();
    return integrateDerivative(F.grid, dualZ, Vec3::Zero());
}

}  // namespace spectori
