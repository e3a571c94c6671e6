#include "spectori/branch2d.hpp"

#include <Eigen/SparseLU>

#include <cmath>

namespace spectori {

Quasimomentum quasimomentumFromSheet(cd lambda, cd w) {
    return {(lambda + w) / (2.0 * kPi * kI), (lambda - w) / (2.0 * kPi)};
}

namespace {

using SpMat = Eigen::SparseMatrix<cd>;

struct Bordered {
    const DiracPencilFactory* factory;
    cd lambda;
    Eigen::VectorXcd b, c;

    explicit Bordered(const DiracPencilFactory& f, cd l) : factory(&f), lambda(l) {
        const int n = f.dim();
        b.resize(n);
        c.resize(n);
        uint64_t state = 0x2545F4914F6CDD1DULL;
        auto next = [&state]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return double(state % 1000003) / 1000003.0 - 0.5;
        };
        for (int i = 0; i < n; ++i) {
            b[i] = cd(next(), next());
            c[i] = cd(next(), next());
        }
        b.normalize();
        c.normalize();
    }

    // Analytic in W; vanishes where the truncation is singular.
    cd operator()(cd w) const {
        SpMat A = factory->assemble(quasimomentumFromSheet(lambda, w));
        Eigen::SparseLU<SpMat> lu(A);
        if (lu.info() != Eigen::Success) return 0.0;
        const Eigen::VectorXcd x = lu.solve(b);
        const cd denom = c.dot(x);
        if (denom == cd(0.0, 0.0)) return 1e300;
        return 1.0 / denom;
    }
};

}  // namespace

BranchCurve traceBranch(const DiracPencilFactory& factory, const std::vector<cd>& lambdaPath,
                        const TraceOptions& opts) {
    BranchCurve curve;
    cd w = opts.initialW;
    for (cd lambda : lambdaPath) {
        Bordered h(factory, lambda);
        bool converged = false;
        cd wTry = w;
        for (int iter = 0; iter < opts.maxNewton; ++iter) {
            const cd hv = h(wTry);
            const double step = 1e-7 * (1.0 + std::abs(wTry));
            const cd hp = (h(wTry + step) - h(wTry - step)) / (2.0 * step);
            if (std::abs(hp) == 0.0) break;
            const cd delta = hv / hp;
            wTry -= delta;
            if (!std::isfinite(std::real(wTry)) || !std::isfinite(std::imag(wTry))) break;
            if (std::abs(delta) < opts.newtonTol * (1.0 + std::abs(wTry))) {
                converged = true;
                break;
            }
        }
        BranchSample s;
        s.lambda = lambda;
        s.w = wTry;
        s.k = quasimomentumFromSheet(lambda, wTry);
        s.mu1 = std::exp(lambda * factory.lattice().gamma1() +
                         wTry * std::conj(factory.lattice().gamma1()));
        s.mu2 = std::exp(lambda * factory.lattice().gamma2() +
                         wTry * std::conj(factory.lattice().gamma2()));
        s.witness = factory.witness(s.k).sigma1;
        s.converged = converged && s.witness < opts.witnessCheckTol * (1.0 + std::abs(lambda));
        curve.samples.push_back(s);
        if (!s.converged) {
            curve.complete = false;
            break;
        }
        w = wTry;
    }
    return curve;
}

AsymptoticExpansion extractC1(const DiracPencilFactory& factory, const PeriodicField& potential,
                              const FitOptions& opts) {
    AsymptoticExpansion out;
    std::vector<cd> lambdas, ws;
    for (double r : opts.radii) {
        for (int a = 0; a < opts.anglesPerRadius; ++a) {
            const double theta = 2.0 * kPi * (a + 0.37) / opts.anglesPerRadius;
            const cd lambda = r * cd(std::cos(theta), std::sin(theta));
            TraceOptions topts;
            topts.initialW = 0.0;
            BranchCurve piece = traceBranch(factory, {lambda}, topts);
            if (!piece.complete) {
                out.reliable = false;
                continue;
            }
            lambdas.push_back(lambda);
            ws.push_back(piece.samples.front().w);
        }
    }
    const int nTerms = (opts.maxOddPower + 1) / 2;
    if (int(lambdas.size()) < nTerms + 1) {
        out.reliable = false;
        return out;
    }
    Eigen::MatrixXcd design(lambdas.size(), nTerms);
    Eigen::VectorXcd rhs(lambdas.size());
    for (size_t i = 0; i < lambdas.size(); ++i) {
        rhs[int(i)] = ws[i];
        for (int t = 0; t < nTerms; ++t)
            design(int(i), t) = std::pow(lambdas[i], -(2 * t + 1));
    }
    Eigen::VectorXcd coef = design.colPivHouseholderQr().solve(rhs);
    out.coefficients.assign(coef.data(), coef.data() + coef.size());
    out.c1 = coef[0];
    out.fitResidual = (design * coef - rhs).norm() / std::sqrt(double(rhs.size()));
    if (out.fitResidual > opts.residualThreshold) out.reliable = false;
    const double vol = factory.lattice().volume();
    out.willmoreFromC1 = -4.0 * std::real(out.c1) * vol;
    out.willmoreDirect = 4.0 * vol * potential.values().abs2().mean();
    return out;
}

}  // namespace spectori
