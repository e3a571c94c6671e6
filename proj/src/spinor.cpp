#include "spectori/spinor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spectori {

double WeierstrassSpinor::diracResidual() const {
    Grid2c r1 = psi2.dZ().values() + potentialU.values() * psi1.values();
    Grid2c r2 = -psi1.dZbar().values() + potentialU.values() * psi2.values();
    return r1.abs().maxCoeff() + r2.abs().maxCoeff();
}

std::array<Grid2c, 3> quadricFromSpinor(const WeierstrassSpinor& psi) {
    const Grid2c p1 = psi.psi1.values();
    const Grid2c p2c = psi.psi2.values().conjugate();
    return {0.5 * kI * (p2c.square() + p1.square()), 0.5 * (p2c.square() - p1.square()),
            p1 * p2c};
}

namespace {

// Candidate (psi1, conj(psi2)) at one grid point from S1 = psi1^2,
// S2 = conj(psi2)^2 and Z3 = psi1 conj(psi2): the larger square drives the
// branch, the partner comes from Z3 so isolated zeros stay well-conditioned.
std::pair<cd, cd> candidatePair(cd s1, cd s2, cd z3, double floor) {
    if (std::abs(s1) >= std::abs(s2)) {
        const cd u = std::sqrt(s1);
        const cd v = std::abs(u) > floor ? z3 / u : std::sqrt(s2);
        return {u, v};
    }
    const cd v = std::sqrt(s2);
    const cd u = std::abs(v) > floor ? z3 / v : std::sqrt(s1);
    return {u, v};
}

cd alignSign(std::pair<cd, cd>& cand, const std::pair<cd, cd>& prev) {
    const double dPlus = std::abs(cand.first - prev.first) + std::abs(cand.second - prev.second);
    const double dMinus = std::abs(cand.first + prev.first) + std::abs(cand.second + prev.second);
    if (dMinus < dPlus) {
        cand.first = -cand.first;
        cand.second = -cand.second;
        return -1.0;
    }
    return 1.0;
}

}  // namespace

QuadricBranch branchSpinorFromQuadric(const FundamentalGrid& grid, const Grid2c& z1,
                                      const Grid2c& z2, const Grid2c& z3) {
    const int n1 = grid.n1(), n2 = grid.n2();
    const Grid2c s1 = -kI * z1 - z2;  // psi1^2
    const Grid2c s2 = -kI * z1 + z2;  // conj(psi2)^2

    const Grid2r modulus = s1.abs() + s2.abs();
    const double floor = 1e-13 * std::sqrt(std::max(modulus.maxCoeff(), 1e-300));
    Grid2c p1(n1, n2), p2c(n1, n2);

    auto candidate = [&](int j, int k) {
        return candidatePair(s1(j, k), s2(j, k), z3(j, k), floor);
    };

    // Seed at the origin with Re(psi1) >= 0.
    auto seed = candidate(0, 0);
    if (std::abs(seed.first) + std::abs(seed.second) < floor)
        throw std::invalid_argument("branchSpinorFromQuadric: degenerate point at the grid origin");
    if (std::real(seed.first) < 0.0 ||
        (std::real(seed.first) == 0.0 && std::imag(seed.first) < 0.0)) {
        seed.first = -seed.first;
        seed.second = -seed.second;
    }
    p1(0, 0) = seed.first;
    p2c(0, 0) = seed.second;

    auto degenerate = [&](int j, int k) {
        std::ostringstream msg;
        msg << "branchSpinorFromQuadric: branch continuation hit a degenerate point at (" << j
            << "," << k << ")";
        throw std::invalid_argument(msg.str());
    };

    // Row 0 in s, then every column in t.
    for (int j = 1; j < n1; ++j) {
        auto cand = candidate(j, 0);
        if (std::abs(cand.first) + std::abs(cand.second) < floor) degenerate(j, 0);
        alignSign(cand, {p1(j - 1, 0), p2c(j - 1, 0)});
        p1(j, 0) = cand.first;
        p2c(j, 0) = cand.second;
    }
    for (int j = 0; j < n1; ++j)
        for (int k = 1; k < n2; ++k) {
            auto cand = candidate(j, k);
            if (std::abs(cand.first) + std::abs(cand.second) < floor) degenerate(j, k);
            alignSign(cand, {p1(j, k - 1), p2c(j, k - 1)});
            p1(j, k) = cand.first;
            p2c(j, k) = cand.second;
        }

    // Character: continue one extra step across each seam and compare with the
    // stored start-of-row value; the ratio must sit at +-1.
    double worst = 0.0;
    auto wrapCharacter = [&](int axis) {
        int plus = 0, minus = 0;
        double defect = 0.0;
        const int nA = axis == 0 ? n2 : n1;
        for (int r = 0; r < nA; ++r) {
            const int jLast = axis == 0 ? n1 - 1 : r;
            const int kLast = axis == 0 ? r : n2 - 1;
            const int jHome = axis == 0 ? 0 : r;
            const int kHome = axis == 0 ? r : 0;
            auto cand = candidate(jHome, kHome);  // defined up to sign
            const double mag = std::abs(cand.first) + std::abs(cand.second);
            if (mag < 1e3 * floor) continue;
            // Continue from the last sample across the seam.
            alignSign(cand, {p1(jLast, kLast), p2c(jLast, kLast)});
            const cd num = cand.first * std::conj(p1(jHome, kHome)) +
                           cand.second * std::conj(p2c(jHome, kHome));
            const double den = std::norm(p1(jHome, kHome)) + std::norm(p2c(jHome, kHome));
            const cd ratio = num / den;
            defect = std::max(defect, std::min(std::abs(ratio - 1.0), std::abs(ratio + 1.0)));
            (std::real(ratio) >= 0 ? plus : minus)++;
        }
        if (plus == 0 && minus == 0)
            throw std::invalid_argument(
                "branchSpinorFromQuadric: character detection starved of data");
        if (plus > 0 && minus > 0)
            throw std::invalid_argument(
                "branchSpinorFromQuadric: inconsistent spin structure across the seam");
        worst = std::max(worst, defect);
        return plus > 0 ? +1 : -1;
    };

    Character chi;
    chi.eps1 = wrapCharacter(0);
    chi.eps2 = wrapCharacter(1);
    if (worst > 1e-6)
        throw std::invalid_argument(
            "branchSpinorFromQuadric: detected character is not within tolerance of +-1 "
            "(defect " +
            std::to_string(worst) + ")");

    return {PeriodicField(grid, p1, chi), PeriodicField(grid, p2c.conjugate(), chi), chi, worst};
}

SpinorExtraction spinorFromSurface(const ImmersionR3& F, const FormsOptions& opts) {
    SurfaceData sd = fundamentalForms(F, opts);
    const auto fz = F.derivZ();
    QuadricBranch branch = branchSpinorFromQuadric(F.grid, fz[0].values(), fz[1].values(),
                                                   fz[2].values());
    PeriodicField u(F.grid, (0.5 * sd.meanCurv * sd.expAlpha).cast<cd>());
    return {WeierstrassSpinor{std::move(branch.psi1), std::move(branch.psi2), std::move(u)},
            branch.character, branch.characterDefect};
}

ImmersionR3 surfaceFromSpinor(const WeierstrassSpinor& psi, const Vec3& basePoint) {
    auto z = quadricFromSpinor(psi);
    return integrateDerivative(psi.grid(), z, basePoint);
}

std::array<cd, 3> closureDefect(const WeierstrassSpinor& psi) {
    const auto& g = psi.grid();
    const Grid2c p1c = psi.psi1.values().conjugate();
    const Grid2c p2 = psi.psi2.values();
    const double vol = g.lattice().volume();
    const cd d1 = -kI * vol * p1c.square().mean();
    const cd d2 = -kI * vol * p2.square().mean();
    const cd d3 = -kI * vol * (p1c * p2).mean();
    return {d1, d2, d3};
}

double willmoreDirect(const SurfaceData& s) {
    return s.grid.lattice().volume() * (s.meanCurv.square() * s.expTwoAlpha).mean();
}

double willmoreFromPotential(const WeierstrassSpinor& psi) {
    const auto& g = psi.grid();
    return 4.0 * g.lattice().volume() * psi.potentialU.values().abs2().mean();
}

WeierstrassSpinor reparametrize(const WeierstrassSpinor& psi, cd t) {
    if (t == cd(0.0, 0.0)) throw std::invalid_argument("reparametrize: t must be nonzero");
    const auto& g = psi.grid();
    const Lattice scaled(t * t * g.lattice().gamma1(), t * t * g.lattice().gamma2());
    FundamentalGrid grid(scaled, g.n1(), g.n2());
    const double tt = std::norm(t);
    PeriodicField p1(grid, psi.psi1.values() / t, psi.psi1.character());
    PeriodicField p2(grid, psi.psi2.values() / std::conj(t), psi.psi2.character());
    PeriodicField u(grid, psi.potentialU.values() / tt, psi.potentialU.character());
    return {std::move(p1), std::move(p2), std::move(u)};
}

std::pair<double, double> gaussWeingartenResiduals(const WeierstrassSpinor& psi,
                                                   const SurfaceData& s) {
    const Grid2c p1 = psi.psi1.values(), p2 = psi.psi2.values();
    const Grid2c aExp = s.hopf / s.expAlpha.cast<cd>();
    const Grid2c u = psi.potentialU.values();
    PeriodicField alpha = s.alphaField();
    const Grid2c az = alpha.dZ().values(), azb = alpha.dZbar().values();

    Grid2c rz1 = psi.psi1.dZ().values() - az * p1 - aExp * p2;
    Grid2c rz2 = psi.psi2.dZ().values() + u * p1;
    Grid2c rb1 = psi.psi1.dZbar().values() - u * p2;
    Grid2c rb2 = psi.psi2.dZbar().values() + aExp.conjugate() * p1 - azb * p2;
    const double zRes = std::max(rz1.abs().maxCoeff(), rz2.abs().maxCoeff());
    const double zbRes = std::max(rb1.abs().maxCoeff(), rb2.abs().maxCoeff());
    return {zRes, zbRes};
}

}  // namespace spectori
