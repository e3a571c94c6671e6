#include "spectori/su2.hpp"

#include <cmath>
#include <stdexcept>

namespace spectori {

Matrix2Field Matrix2Field::zero(const FundamentalGrid& g) {
    return {g, Grid2c::Zero(g.n1(), g.n2()), Grid2c::Zero(g.n1(), g.n2()),
            Grid2c::Zero(g.n1(), g.n2()), Grid2c::Zero(g.n1(), g.n2())};
}

Eigen::Matrix2cd Matrix2Field::sampleAt(int j, int k) const {
    Eigen::Matrix2cd m;
    m << a(j, k), b(j, k), c(j, k), d(j, k);
    return m;
}

double SU2Immersion::unitarityDefect() const {
    // f f^H = 1 and det f = 1 entrywise.
    Grid2c det = f.a * f.d - f.b * f.c;
    Grid2c r1 = f.a * f.a.conjugate() + f.b * f.b.conjugate() - 1.0;
    Grid2c r2 = f.a * f.c.conjugate() + f.b * f.d.conjugate();
    Grid2c r3 = f.c * f.c.conjugate() + f.d * f.d.conjugate() - 1.0;
    return std::max({(det - 1.0).abs().maxCoeff(), r1.abs().maxCoeff(), r2.abs().maxCoeff(),
                     r3.abs().maxCoeff()});
}

Matrix2Field SU2Immersion::derivZ() const {
    Matrix2Field out = Matrix2Field::zero(grid);
    out.a = PeriodicField(grid, f.a).dZ().values();
    out.b = PeriodicField(grid, f.b).dZ().values();
    out.c = PeriodicField(grid, f.c).dZ().values();
    out.d = PeriodicField(grid, f.d).dZ().values();
    return out;
}

namespace {

Matrix2Field leftInverseTimes(const SU2Immersion& f, const Matrix2Field& g) {
    // f^{-1} = [[d, -b],[-c, a]] / det; det = 1 for SU(2) samples.
    Matrix2Field out = Matrix2Field::zero(f.grid);
    const Grid2c det = f.f.a * f.f.d - f.f.b * f.f.c;
    out.a = (f.f.d * g.a - f.f.b * g.c) / det;
    out.b = (f.f.d * g.b - f.f.b * g.d) / det;
    out.c = (-f.f.c * g.a + f.f.a * g.c) / det;
    out.d = (-f.f.c * g.b + f.f.a * g.d) / det;
    return out;
}

}  // namespace

Matrix2Field SU2Immersion::psi() const { return leftInverseTimes(*this, derivZ()); }

Matrix2Field SU2Immersion::psiStar() const {
    Matrix2Field dzb = Matrix2Field::zero(grid);
    dzb.a = PeriodicField(grid, f.a).dZbar().values();
    dzb.b = PeriodicField(grid, f.b).dZbar().values();
    dzb.c = PeriodicField(grid, f.c).dZbar().values();
    dzb.d = PeriodicField(grid, f.d).dZbar().values();
    return leftInverseTimes(*this, dzb);
}

SU2Immersion cliffordTorus(int n1, int n2) {
    const double L = 2.0 * kPi;
    FundamentalGrid grid(Lattice(L, cd(0.0, L)), n1, n2);
    SU2Immersion out{grid, Matrix2Field::zero(grid)};
    const double r = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) {
            const double x = L * double(j) / n1, y = L * double(k) / n2;
            out.f.a(j, k) = r * std::exp(kI * x);
            out.f.b(j, k) = r * std::exp(kI * y);
            out.f.c(j, k) = -r * std::exp(-kI * y);
            out.f.d(j, k) = r * std::exp(-kI * x);
        }
    return out;
}

namespace {

// su(2) (x) C components of Psi = Z1 e1 + Z2 e2 + Z3 e3 in the basis
// e1 = [[i,0],[0,-i]], e2 = [[0,1],[-1,0]], e3 = [[0,i],[i,0]].
std::array<Grid2c, 3> su2Components(const Matrix2Field& m) {
    return {-kI * 0.5 * (m.a - m.d), 0.5 * (m.b - m.c), -kI * 0.5 * (m.b + m.c)};
}

Eigen::Matrix2cd commutator(const Eigen::Matrix2cd& x, const Eigen::Matrix2cd& y) {
    return x * y - y * x;
}

}  // namespace

SphereSpinor spinorFromS3(const SU2Immersion& f, const SpinorS3Options& opts) {
    if (f.unitarityDefect() > 1e-10)
        throw std::invalid_argument("spinorFromS3: samples are not special-unitary");
    const Matrix2Field psi = f.psi();
    const Matrix2Field psiStar = f.psiStar();
    const auto z = su2Components(psi);

    Grid2c conf = z[0].square() + z[1].square() + z[2].square();
    Grid2r e2a = 2.0 * (z[0].abs2() + z[1].abs2() + z[2].abs2());
    const double defect = conf.abs().maxCoeff();
    if (defect > opts.conformalTol * e2a.mean())
        throw std::invalid_argument(
            "spinorFromS3: parameter is not conformal (defect " + std::to_string(defect) + ")");

    QuadricBranch branch = branchSpinorFromQuadric(f.grid, z[0], z[1], z[2]);

    // H by pointwise least squares on dbar Psi + d Psi* = i H [Psi*, Psi].
    const int n1 = f.grid.n1(), n2 = f.grid.n2();
    Matrix2Field lhs = Matrix2Field::zero(f.grid);
    lhs.a = PeriodicField(f.grid, psi.a).dZbar().values() +
            PeriodicField(f.grid, psiStar.a).dZ().values();
    lhs.b = PeriodicField(f.grid, psi.b).dZbar().values() +
            PeriodicField(f.grid, psiStar.b).dZ().values();
    lhs.c = PeriodicField(f.grid, psi.c).dZbar().values() +
            PeriodicField(f.grid, psiStar.c).dZ().values();
    lhs.d = PeriodicField(f.grid, psi.d).dZbar().values() +
            PeriodicField(f.grid, psiStar.d).dZ().values();

    Grid2r h(n1, n2);
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) {
            const Eigen::Matrix2cd rhs = kI * commutator(psiStar.sampleAt(j, k), psi.sampleAt(j, k));
            const Eigen::Matrix2cd l = lhs.sampleAt(j, k);
            const double den = rhs.squaredNorm();
            h(j, k) = den > 1e-300 ? std::real((rhs.array().conjugate() * l.array()).sum()) / den
                                   : 0.0;
        }

    SphereSpinor out{std::move(branch.psi1),
                     std::move(branch.psi2),
                     Grid2c(n1, n2),
                     std::move(h),
                     e2a.sqrt(),
                     Grid2c(n1, n2),
                     branch.character,
                     branch.characterDefect,
                     defect};
    out.potentialV = 0.5 * (out.meanCurv.cast<cd>() - cd(0.0, 1.0)) * out.expAlpha.cast<cd>();
    // Hopf differential, same formula as in R^3.
    out.hopf = out.psi1.dZ().values() * out.psi2.values().conjugate() -
               out.psi2.conjugated().dZ().values() * out.psi1.values();
    return out;
}

std::pair<double, double> diracSResidual(const SphereSpinor& s) {
    const Grid2c v = s.potentialV;
    Grid2c r1 = v * s.psi1.values() + s.psi2.dZ().values();
    Grid2c r2 = -s.psi1.dZbar().values() + v.conjugate() * s.psi2.values();
    const double res = std::max(r1.abs().maxCoeff(), r2.abs().maxCoeff());

    PeriodicField phi1 = s.psi2.conjugated();
    PeriodicField phi2 = s.psi1.conjugated() * cd(-1.0, 0.0);
    Grid2c c1 = v * phi1.values() + phi2.dZ().values();
    Grid2c c2 = -phi1.dZbar().values() + v.conjugate() * phi2.values();
    const double resConj = std::max(c1.abs().maxCoeff(), c2.abs().maxCoeff());
    return {res, resConj};
}

std::pair<double, double> codazziSphereResiduals(const SphereSpinor& s) {
    const auto& g = s.psi1.grid();
    PeriodicField alpha(g, s.expAlpha.log().cast<cd>());
    PeriodicField vbar(g, s.potentialV.conjugate());
    PeriodicField a(g, s.hopf);
    Grid2c gauss = alpha.dZ().dZbar().values() + s.potentialV.abs2() -
                   s.hopf.abs2() / s.expAlpha.square();
    Grid2c codazzi = a.dZbar().values() -
                     (vbar.dZ().values() - alpha.dZ().values() * vbar.values()) *
                         s.expAlpha.cast<cd>();
    return {gauss.abs().maxCoeff(), codazzi.abs().maxCoeff()};
}

std::pair<cd, cd> cliffordSpectrumMap(cd lambda) {
    if (lambda == cd(0.0, 0.0))
        throw std::invalid_argument("cliffordSpectrumMap: lambda must be nonzero");
    const cd e1 = std::exp(2.0 * kPi * (lambda - 1.0 / (8.0 * lambda)));
    const cd e2 = std::exp(2.0 * kPi * kI * (lambda + 1.0 / (8.0 * lambda)));
    return {e1, e2};
}

double cliffordHarmonicResidual(const PeriodicField& f) {
    return (f.dZ().dZbar().values() + 0.125 * f.values()).abs().maxCoeff();
}

}  // namespace spectori
