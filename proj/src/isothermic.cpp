#include "spectori/isothermic.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace spectori {
namespace {

PeriodicField dX(const PeriodicField& f) { return f.dZ() + f.dZbar(); }
PeriodicField dY(const PeriodicField& f) { return (f.dZ() - f.dZbar()) * kI; }

}  // namespace

std::pair<double, double> IsothermicData::codazziResiduals() const {
    const Grid2c diff = k1.values() - k2.values();
    Grid2c r1 = dX(k2).values() - diff * dX(alpha).values();
    Grid2c r2 = dY(k1).values() + diff * dY(alpha).values();
    return {r1.abs().maxCoeff(), r2.abs().maxCoeff()};
}

LaxConnection isothermicPencil(const IsothermicData& data, cd lambda, double codazziTol) {
    const auto [r1, r2] = data.codazziResiduals();
    const double scale = 1.0 + data.k1.maxAbs() + data.k2.maxAbs();
    if (r1 > codazziTol * scale || r2 > codazziTol * scale)
        throw std::invalid_argument(
            "isothermicPencil: data violates the isothermic Codazzi system (residuals " +
            std::to_string(r1) + ", " + std::to_string(r2) + ")");

    const auto& g = data.alpha.grid();
    const Grid2c expA = data.alpha.values().exp();
    const Grid2c sum = 0.25 * (data.k1.values() + data.k2.values()) * expA;
    const Grid2c diff = 0.25 * (data.k1.values() - data.k2.values()) * expA;
    const Grid2c az = data.alpha.dZ().values();
    const Grid2c azb = data.alpha.dZbar().values();

    MatrixField U(g, 4), V(g, 4);
    auto set = [&g](MatrixField& m, int r, int c, const Grid2c& v) {
        m.at(r, c) = PeriodicField(g, v);
    };
    // U block: [[a_z, diff],[-sum, 0]]; V block: [[0, sum],[-diff, a_zbar]].
    set(U, 0, 0, az);
    set(U, 0, 1, diff);
    set(U, 1, 0, -sum);
    set(V, 0, 1, sum);
    set(V, 1, 0, -diff);
    set(V, 1, 1, azb);
    // Lower-right blocks carry the extra alpha_z E.
    set(U, 2, 2, 2.0 * az);
    set(U, 2, 3, diff);
    set(U, 3, 2, -sum);
    set(U, 3, 3, az);
    set(V, 2, 2, azb);
    set(V, 2, 3, sum);
    set(V, 3, 2, -diff);
    set(V, 3, 3, 2.0 * azb);
    // Off-diagonal lambda blocks: U has lambda J- upper, lambda J+ lower;
    // V has lambda J+ upper, lambda J- lower.
    U.at(1, 2) = PeriodicField::constant(g, lambda);  // J- in the upper-right block
    U.at(2, 1) = PeriodicField::constant(g, lambda);  // J+ in the lower-left block
    V.at(0, 3) = PeriodicField::constant(g, lambda);  // J+ upper-right
    V.at(3, 0) = PeriodicField::constant(g, lambda);  // J- lower-left
    return {LaxTag::Isothermic4x4, lambda, std::move(U), std::move(V)};
}

namespace {

// z-matrix + zbar-matrix of the pencil along the real axis for y-independent
// profiles; alpha_z = alpha_x / 2 there.
Eigen::Matrix4cd isothermicCoefficientAt(const IsothermicProfiles& p, const Potential1D& alphaX,
                                         double x, cd lambda) {
    const double a = p.alpha(x), ax = alphaX(x);
    const double k1 = p.k1(x), k2 = p.k2(x);
    const double ea = std::exp(a);
    const double sum = 0.25 * (k1 + k2) * ea, diff = 0.25 * (k1 - k2) * ea;

    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    // U + V along x; a_z = a_zbar = ax/2 for y-independent data.
    m(0, 0) = 0.5 * ax;
    m(0, 1) = diff + sum;
    m(1, 0) = -sum - diff;
    m(1, 1) = 0.5 * ax;
    m(2, 2) = 1.5 * ax;  // 2 a_z + a_zbar
    m(2, 3) = diff + sum;
    m(3, 2) = -sum - diff;
    m(3, 3) = 1.5 * ax;  // a_z + 2 a_zbar
    m(1, 2) += lambda;
    m(2, 1) += lambda;
    m(0, 3) += lambda;
    m(3, 0) += lambda;
    return m;
}

}  // namespace

Monodromy4x4 isothermicMonodromy(const IsothermicProfiles& p, cd lambda) {
    Potential1D alphaX(spectralDerivative(p.alpha.samples, p.alpha.period), p.alpha.period);
    const double T = p.alpha.period;
    int steps = 1024;
    Eigen::Matrix4cd prev = Eigen::Matrix4cd::Zero();
    while (true) {
        Eigen::Matrix4cd phi = Eigen::Matrix4cd::Identity();
        const double h = T / steps;
        for (int j = 0; j < steps; ++j) {
            const double x0 = j * h;
            const Eigen::Matrix4cd m0 = isothermicCoefficientAt(p, alphaX, x0, lambda);
            const Eigen::Matrix4cd mh = isothermicCoefficientAt(p, alphaX, x0 + 0.5 * h, lambda);
            const Eigen::Matrix4cd m1 = isothermicCoefficientAt(p, alphaX, x0 + h, lambda);
            const Eigen::Matrix4cd k1 = m0 * phi;
            const Eigen::Matrix4cd k2 = mh * (phi + 0.5 * h * k1);
            const Eigen::Matrix4cd k3 = mh * (phi + 0.5 * h * k2);
            const Eigen::Matrix4cd k4 = m1 * (phi + h * k3);
            phi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if ((phi - prev).cwiseAbs().maxCoeff() < 1e-11 * (1.0 + phi.cwiseAbs().maxCoeff()))
            return {lambda, phi};
        prev = phi;
        steps *= 2;
        if (steps > (1 << 22))
            throw std::runtime_error("isothermicMonodromy: integrator failed to converge");
    }
}

std::vector<cd> Monodromy4x4::eigenvalues() const {
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(matrix);
    std::vector<cd> out(4);
    for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()[i];
    return out;
}

DiracPairExtraction extractDiracPair(const IsothermicProfiles& p, cd lambda, int nSamples) {
    Potential1D alphaX(spectralDerivative(p.alpha.samples, p.alpha.period), p.alpha.period);
    const double T = p.alpha.period;
    Monodromy4x4 mono = isothermicMonodromy(p, lambda);
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(mono.matrix, true);
    // Pick the eigenvector with healthy weight in both 2-blocks so neither
    // extraction degenerates.
    int pick = 0;
    double best = -1.0;
    for (int c = 0; c < 4; ++c) {
        const auto v = es.eigenvectors().col(c);
        const double w =
            (std::abs(v[0]) + std::abs(v[1])) * (std::abs(v[2]) + std::abs(v[3]));
        if (w > best) {
            best = w;
            pick = c;
        }
    }
    Eigen::Vector4cd v = es.eigenvectors().col(pick);
    cd mu = es.eigenvalues()[pick];

    // Integrate phi along one period, storing samples.
    const int substeps = 256;
    const double h = T / (double(nSamples) * substeps);
    Eigen::MatrixXcd phi(4, nSamples + 1);
    Eigen::Vector4cd state = v;
    double x = 0.0;
    for (int j = 0; j < nSamples; ++j) {
        phi.col(j) = state;
        for (int s = 0; s < substeps; ++s) {
            const Eigen::Matrix4cd m0 = isothermicCoefficientAt(p, alphaX, x, lambda);
            const Eigen::Matrix4cd mh = isothermicCoefficientAt(p, alphaX, x + 0.5 * h, lambda);
            const Eigen::Matrix4cd m1 = isothermicCoefficientAt(p, alphaX, x + h, lambda);
            const Eigen::Vector4cd k1 = m0 * state;
            const Eigen::Vector4cd k2 = mh * (state + 0.5 * h * k1);
            const Eigen::Vector4cd k3 = mh * (state + 0.5 * h * k2);
            const Eigen::Vector4cd k4 = m1 * (state + h * k3);
            state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            x += h;
        }
    }
    phi.col(nSamples) = state;

    DiracPairExtraction out;
    out.multiplierPhi = mu;
    out.psi.resize(2, nSamples + 1);
    out.psiStar.resize(2, nSamples + 1);
    double res = 0.0, resStar = 0.0;
    for (int j = 0; j <= nSamples; ++j) {
        const double xj = T * double(j) / nSamples;
        const double ea = std::exp(p.alpha(xj));
        out.psi(0, j) = phi(2, j) / ea;
        out.psi(1, j) = phi(3, j) / ea;
        out.psiStar(0, j) = phi(1, j) / ea;
        out.psiStar(1, j) = phi(0, j) / ea;

        // Dirac residuals evaluated algebraically: derivatives of phi come from
        // the pencil, so no grid differentiation is needed.
        const double k1v = p.k1(xj), k2v = p.k2(xj), ax = alphaX(xj);
        const double uPot = 0.25 * (k1v + k2v) * ea;
        const double uStar = 0.25 * (k2v - k1v) * ea;
        const double az = 0.5 * ax;
        const double sum = 0.25 * (k1v + k2v) * ea, diff = 0.25 * (k1v - k2v) * ea;
        const Eigen::Vector4cd ph = phi.col(j);
        // phi_z rows from U(lambda), phi_zbar rows from V(lambda).
        const cd phi1z = az * ph[0] + diff * ph[1];
        const cd phi2z = -sum * ph[0] + lambda * ph[2];
        const cd phi3z = 2.0 * az * ph[2] + diff * ph[3] + lambda * ph[1];
        const cd phi4z = -sum * ph[2] + az * ph[3];
        const cd phi1zb = sum * ph[1] + lambda * ph[3];
        const cd phi2zb = -diff * ph[0] + az * ph[1];
        const cd phi3zb = az * ph[2] + sum * ph[3];
        const cd phi4zb = -diff * ph[2] + 2.0 * az * ph[3] + lambda * ph[0];

        // D psi: d(psi2) + U psi1 and -dbar(psi1) + U psi2, with psi = e^{-a}(phi3, phi4).
        const cd dPsi2 = (phi4z - az * ph[3]) / ea;
        const cd dbPsi1 = (phi3zb - az * ph[2]) / ea;
        res = std::max(res, std::abs(dPsi2 + uPot * ph[2] / ea));
        res = std::max(res, std::abs(-dbPsi1 + uPot * ph[3] / ea));

        const cd dPsiStar2 = (phi1z - az * ph[0]) / ea;
        const cd dbPsiStar1 = (phi2zb - az * ph[1]) / ea;
        resStar = std::max(resStar, std::abs(dPsiStar2 + uStar * ph[1] / ea));
        resStar = std::max(resStar, std::abs(-dbPsiStar1 + uStar * ph[0] / ea));
    }
    out.diracResidual = res;
    out.diracResidualStar = resStar;

    auto ratio = [&](const Eigen::MatrixXcd& m) {
        // Least-squares single ratio between the end and start samples.
        cd num = 0.0, den = 0.0;
        for (int r = 0; r < 2; ++r) {
            num += std::conj(m(r, 0)) * m(r, nSamples);
            den += std::norm(m(r, 0));
        }
        return num / den;
    };
    out.multiplierPsi = ratio(out.psi);
    out.multiplierPsiStar = ratio(out.psiStar);
    return out;
}

}  // namespace spectori
