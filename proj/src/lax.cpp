#include "spectori/lax.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spectori {

MatrixField::MatrixField(FundamentalGrid grid, int dim) : grid_(std::move(grid)), dim_(dim) {
    entries_.reserve(size_t(dim) * dim);
    for (int i = 0; i < dim * dim; ++i)
        entries_.push_back(PeriodicField::constant(grid_, 0.0));
}

MatrixField MatrixField::dZ() const {
    MatrixField out(grid_, dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out.at(r, c) = at(r, c).dZ();
    return out;
}

MatrixField MatrixField::dZbar() const {
    MatrixField out(grid_, dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out.at(r, c) = at(r, c).dZbar();
    return out;
}

MatrixField MatrixField::commutator(const MatrixField& o) const {
    MatrixField out(grid_, dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) {
            Grid2c acc = Grid2c::Zero(grid_.n1(), grid_.n2());
            for (int m = 0; m < dim_; ++m)
                acc += at(r, m).values() * o.at(m, c).values() -
                       o.at(r, m).values() * at(m, c).values();
            out.at(r, c) = PeriodicField(grid_, acc);
        }
    return out;
}

MatrixField MatrixField::operator-(const MatrixField& o) const {
    MatrixField out(grid_, dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            out.at(r, c) = PeriodicField(grid_, at(r, c).values() - o.at(r, c).values());
    return out;
}

MatrixField MatrixField::operator+(const MatrixField& o) const {
    MatrixField out(grid_, dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            out.at(r, c) = PeriodicField(grid_, at(r, c).values() + o.at(r, c).values());
    return out;
}

double MatrixField::maxNorm() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.maxAbs());
    return m;
}

Eigen::MatrixXcd MatrixField::sampleAt(int j, int k) const {
    Eigen::MatrixXcd m(dim_, dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m(r, c) = at(r, c)(j, k);
    return m;
}

double zeroCurvatureResidual(const LaxConnection& c) {
    MatrixField res = c.zMatrix.dZbar() - c.zbarMatrix.dZ() + c.zMatrix.commutator(c.zbarMatrix);
    return res.maxNorm();
}

LaxConnection cmcGeomConnection(const PeriodicField& alpha, cd lambda) {
    if (lambda == cd(0.0, 0.0))
        throw std::invalid_argument("cmcGeomConnection: lambda = 0 hits the pencil pole");
    const auto& g = alpha.grid();
    const Grid2c expA = alpha.values().exp();
    const Grid2c expMA = (-alpha.values()).exp();
    MatrixField U(g, 2), V(g, 2);
    U.at(0, 0) = alpha.dZ();
    U.at(0, 1) = PeriodicField(g, (-0.5 * lambda * lambda) * expMA);
    U.at(1, 0) = PeriodicField(g, -0.5 * expA);
    V.at(0, 1) = PeriodicField(g, 0.5 * expA);
    V.at(1, 0) = PeriodicField(g, (0.5 / (lambda * lambda)) * expMA);
    V.at(1, 1) = alpha.dZbar();
    return {LaxTag::CmcGeom, lambda, std::move(U), std::move(V)};
}

LaxConnection cmcZccConnection(const PeriodicField& u, cd lambda) {
    if (lambda == cd(0.0, 0.0))
        throw std::invalid_argument("cmcZccConnection: lambda = 0 hits the pencil pole");
    const auto& g = u.grid();
    MatrixField U(g, 2), V(g, 2);
    PeriodicField uz = u.dZ();
    U.at(0, 0) = uz * cd(-0.5, 0.0);
    U.at(0, 1) = PeriodicField::constant(g, -0.5 * lambda);
    U.at(1, 0) = PeriodicField::constant(g, -0.5 * lambda);
    U.at(1, 1) = uz * cd(0.5, 0.0);
    V.at(0, 1) = PeriodicField(g, (0.5 / lambda) * (-u.values()).exp());
    V.at(1, 0) = PeriodicField(g, (0.5 / lambda) * u.values().exp());
    return {LaxTag::CmcZcc, lambda, std::move(U), std::move(V)};
}

SinhGordonField makeSinhGordonField(const PeriodicField& u) {
    Grid2c res = u.dZ().dZbar().values() + u.values().sinh();
    return {u, res.abs().maxCoeff()};
}

PendulumSolution solveSinhGordonPendulum(double amplitude, int nSamples) {
    if (!(amplitude > 0.0))
        throw std::invalid_argument("solveSinhGordonPendulum: amplitude must be positive");
    auto rhs = [](const Eigen::Vector2d& y) {
        return Eigen::Vector2d(y[1], -4.0 * std::sinh(y[0]));
    };
    auto rk4Step = [&](Eigen::Vector2d y, double h) {
        const Eigen::Vector2d k1 = rhs(y);
        const Eigen::Vector2d k2 = rhs(y + 0.5 * h * k1);
        const Eigen::Vector2d k3 = rhs(y + 0.5 * h * k2);
        const Eigen::Vector2d k4 = rhs(y + h * k3);
        return (y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).eval();
    };

    // Quarter period: from (u0, 0) to the first zero of u.
    const double h = 1e-5;
    Eigen::Vector2d y(amplitude, 0.0);
    double x = 0.0;
    while (y[0] > 0.0) {
        y = rk4Step(y, h);
        x += h;
        if (x > 1e3) throw std::runtime_error("solveSinhGordonPendulum: no period found");
    }
    // Bisection refine on the crossing step.
    double lo = x - h, hi = x;
    Eigen::Vector2d yLo = rk4Step(y, -h);  // step back to the pre-crossing state
    for (int it = 0; it < 64 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        Eigen::Vector2d ym = rk4Step(yLo, mid - lo);
        (ym[0] > 0.0 ? lo : hi) = mid;
    }
    const double period = 4.0 * 0.5 * (lo + hi);

    // Resample uniformly with substeps.
    const int substeps = 64;
    PendulumSolution sol;
    sol.period = period;
    sol.u.resize(nSamples);
    Eigen::Vector2d state(amplitude, 0.0);
    const double hs = period / (double(nSamples) * substeps);
    for (int j = 0; j < nSamples; ++j) {
        sol.u[j] = state[0];
        for (int s = 0; s < substeps; ++s) state = rk4Step(state, hs);
    }
    return sol;
}

CmcMapResult cmcPropMap(const PeriodicField& phi1, const PeriodicField& phi2,
                        const PeriodicField& alpha, cd lambda) {
    const auto& g = alpha.grid();
    const Grid2c expA = alpha.values().exp();
    PeriodicField psi1 = phi2 * lambda;
    PeriodicField psi2 = PeriodicField(g, expA * phi1.values(), phi1.character());

    double residual = 0.0;
    if (lambda != cd(0.0, 0.0)) {
        // R = S_z + S U2 - U1 S (and its zbar analog) applied to phi; S is the
        // map matrix [[0, lambda],[e^alpha, 0]].
        const PeriodicField u = alpha * cd(2.0, 0.0);
        LaxConnection c2 = cmcZccConnection(u, lambda);
        LaxConnection c1 = cmcGeomConnection(alpha, lambda);
        MatrixField S(g, 2);
        S.at(0, 1) = PeriodicField::constant(g, lambda);
        S.at(1, 0) = PeriodicField(g, expA);

        // S U2 - U1 S, assembled entrywise.
        auto apply = [&](const MatrixField& target, const MatrixField& u2,
                         const MatrixField& u1) {
            MatrixField r(g, 2);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    Grid2c acc = Grid2c::Zero(g.n1(), g.n2());
                    for (int m = 0; m < 2; ++m)
                        acc += target.at(a, m).values() * u2.at(m, b).values() -
                               u1.at(a, m).values() * target.at(m, b).values();
                    r.at(a, b) = PeriodicField(g, acc);
                }
            return r;
        };
        MatrixField Rz2 = S.dZ() + apply(S, c2.zMatrix, c1.zMatrix);
        MatrixField Rzb = S.dZbar() + apply(S, c2.zbarMatrix, c1.zbarMatrix);
        Grid2r res = Grid2r::Zero(g.n1(), g.n2());
        for (int a = 0; a < 2; ++a) {
            Grid2c rowZ = Rz2.at(a, 0).values() * phi1.values() +
                          Rz2.at(a, 1).values() * phi2.values();
            Grid2c rowZb = Rzb.at(a, 0).values() * phi1.values() +
                           Rzb.at(a, 1).values() * phi2.values();
            res = res.max(rowZ.abs()).max(rowZb.abs());
        }
        residual = res.maxCoeff();
    }
    return {std::move(psi1), std::move(psi2), residual};
}

namespace {

Eigen::Matrix2cd cmcCoefficientAt(const Potential1D& u, const Potential1D& ux, double x,
                                  cd lambda) {
    const double uv = u(x), uxv = ux(x);
    Eigen::Matrix2cd m;
    // (sinh-comm-2) z-matrix + zbar-matrix along the real direction; u_z = u_x/2.
    m(0, 0) = -0.25 * uxv;
    m(0, 1) = -0.5 * lambda + 0.5 / lambda * std::exp(-uv);
    m(1, 0) = -0.5 * lambda + 0.5 / lambda * std::exp(uv);
    m(1, 1) = 0.25 * uxv;
    return m;
}

}  // namespace

Eigen::Matrix2cd cmcMonodromy(const Potential1D& uProfile, cd lambda) {
    if (lambda == cd(0.0, 0.0))
        throw std::invalid_argument("cmcMonodromy: lambda = 0 hits the pencil pole");
    Potential1D uxProfile(spectralDerivative(uProfile.samples, uProfile.period),
                          uProfile.period);

    // RK4 with Richardson halving on the determinant defect.
    int steps = 512;
    Eigen::Matrix2cd prev = Eigen::Matrix2cd::Zero();
    while (true) {
        Eigen::Matrix2cd phi = Eigen::Matrix2cd::Identity();
        const double h = uProfile.period / steps;
        for (int j = 0; j < steps; ++j) {
            const double x0 = j * h;
            const Eigen::Matrix2cd m0 = cmcCoefficientAt(uProfile, uxProfile, x0, lambda);
            const Eigen::Matrix2cd mh = cmcCoefficientAt(uProfile, uxProfile, x0 + 0.5 * h, lambda);
            const Eigen::Matrix2cd m1 = cmcCoefficientAt(uProfile, uxProfile, x0 + h, lambda);
            const Eigen::Matrix2cd k1 = m0 * phi;
            const Eigen::Matrix2cd k2 = mh * (phi + 0.5 * h * k1);
            const Eigen::Matrix2cd k3 = mh * (phi + 0.5 * h * k2);
            const Eigen::Matrix2cd k4 = m1 * (phi + h * k3);
            phi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if ((phi - prev).cwiseAbs().maxCoeff() < 1e-11 * (1.0 + phi.cwiseAbs().maxCoeff()))
            return phi;
        prev = phi;
        steps *= 2;
        if (steps > (1 << 22))
            throw std::runtime_error("cmcMonodromy: integrator failed to converge");
    }
}

std::pair<cd, cd> cmcMultipliers(const Potential1D& uProfile, cd lambda) {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(cmcMonodromy(uProfile, lambda));
    return {es.eigenvalues()[0], es.eigenvalues()[1]};
}

double eigenvalueSetDistance(std::vector<cd> a, std::vector<cd> b) {
    if (a.size() != b.size()) return 1e300;
    std::vector<int> perm(a.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
    double best = 1e300;
    do {
        double worst = 0.0;
        for (size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace spectori
