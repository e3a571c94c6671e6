#include "spectori/hitchin.hpp"

#include "spectori/fft.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace spectori {

HitchinCoefficients hitchinCoefficients(cd lambda, HitchinPlacement placement) {
    if (lambda == cd(0.0, 0.0))
        throw std::invalid_argument("hitchinCoefficients: lambda must be nonzero");
    if (placement == HitchinPlacement::EigenfunctionDisplay)
        return {0.5 * (1.0 + lambda), 0.5 * (1.0 + 1.0 / lambda)};
    return {0.5 * (1.0 + 1.0 / lambda), 0.5 * (1.0 + lambda)};
}

namespace {

struct MatrixGrids {
    Grid2c a, b, c, d;
};

MatrixGrids derivZ(const FundamentalGrid& g, const Matrix2Field& m) {
    return {PeriodicField(g, m.a).dZ().values(), PeriodicField(g, m.b).dZ().values(),
            PeriodicField(g, m.c).dZ().values(), PeriodicField(g, m.d).dZ().values()};
}

MatrixGrids derivZbar(const FundamentalGrid& g, const Matrix2Field& m) {
    return {PeriodicField(g, m.a).dZbar().values(), PeriodicField(g, m.b).dZbar().values(),
            PeriodicField(g, m.c).dZbar().values(), PeriodicField(g, m.d).dZbar().values()};
}

double maxNorm(const MatrixGrids& m) {
    return std::max({m.a.abs().maxCoeff(), m.b.abs().maxCoeff(), m.c.abs().maxCoeff(),
                     m.d.abs().maxCoeff()});
}

MatrixGrids commutatorGrids(const Matrix2Field& x, const Matrix2Field& y) {
    MatrixGrids out;
    out.a = x.a * y.a + x.b * y.c - (y.a * x.a + y.b * x.c);
    out.b = x.a * y.b + x.b * y.d - (y.a * x.b + y.b * x.d);
    out.c = x.c * y.a + x.d * y.c - (y.c * x.a + y.d * x.c);
    out.d = x.c * y.b + x.d * y.d - (y.c * x.b + y.d * x.d);
    return out;
}

// Trig interpolation of one grid line (fixed transverse index).
class LineInterpolant {
  public:
    LineInterpolant() = default;
    // axis 0: f(s) at t-index fixed; axis 1: f(t) at s-index fixed.
    LineInterpolant(const PeriodicField& f, int axis, int fixedIndex) {
        const int n = axis == 0 ? f.n1() : f.n2();
        Eigen::VectorXcd vals(n);
        for (int i = 0; i < n; ++i)
            vals[i] = axis == 0 ? f(i, fixedIndex) : f(fixedIndex, i);
        shift_ = axis == 0 ? f.character().shift1() : f.character().shift2();
        for (int i = 0; i < n; ++i) {
            const double phase = -2.0 * kPi * shift_ * i / n;
            vals[i] *= cd(std::cos(phase), std::sin(phase));
        }
        coef_ = fft1Forward(vals);
    }

    cd operator()(double s) const {
        const int n = int(coef_.size());
        cd acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const double f = signedFrequency(j, n) + shift_;
            const double phase = 2.0 * kPi * f * s;
            acc += coef_[j] * cd(std::cos(phase), std::sin(phase));
        }
        return acc;
    }

  private:
    Eigen::VectorXcd coef_;
    double shift_ = 0.0;
};

struct LineMatrix {
    LineInterpolant a, b, c, d;
    Eigen::Matrix2cd operator()(double s) const {
        Eigen::Matrix2cd m;
        m << a(s), b(s), c(s), d(s);
        return m;
    }
};

LineMatrix restrict(const FundamentalGrid& g, const Matrix2Field& m, int axis, int fixedIndex) {
    return {LineInterpolant(PeriodicField(g, m.a), axis, fixedIndex),
            LineInterpolant(PeriodicField(g, m.b), axis, fixedIndex),
            LineInterpolant(PeriodicField(g, m.c), axis, fixedIndex),
            LineInterpolant(PeriodicField(g, m.d), axis, fixedIndex)};
}

Eigen::Matrix2cd integrateAlong(const std::function<Eigen::Matrix2cd(double)>& coeff, int steps) {
    Eigen::Matrix2cd phi = Eigen::Matrix2cd::Identity();
    const double h = 1.0 / steps;
    for (int j = 0; j < steps; ++j) {
        const double s0 = j * h;
        const Eigen::Matrix2cd m0 = coeff(s0);
        const Eigen::Matrix2cd mh = coeff(s0 + 0.5 * h);
        const Eigen::Matrix2cd m1 = coeff(s0 + h);
        const Eigen::Matrix2cd k1 = m0 * phi;
        const Eigen::Matrix2cd k2 = mh * (phi + 0.5 * h * k1);
        const Eigen::Matrix2cd k3 = mh * (phi + 0.5 * h * k2);
        const Eigen::Matrix2cd k4 = m1 * (phi + h * k3);
        phi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return phi;
}

Eigen::Matrix2cd monodromyAdaptive(const std::function<Eigen::Matrix2cd(double)>& coeff) {
    int steps = 512;
    Eigen::Matrix2cd prev = Eigen::Matrix2cd::Zero();
    while (true) {
        Eigen::Matrix2cd phi = integrateAlong(coeff, steps);
        if ((phi - prev).cwiseAbs().maxCoeff() < 1e-11 * (1.0 + phi.cwiseAbs().maxCoeff()))
            return phi;
        prev = phi;
        steps *= 2;
        if (steps > (1 << 20))
            throw std::runtime_error("hitchinMonodromy: integrator failed to converge");
    }
}

}  // namespace

std::pair<double, double> harmonicityResiduals(const SU2Immersion& f) {
    const Matrix2Field psi = f.psi();
    const Matrix2Field psiStar = f.psiStar();
    const MatrixGrids dzbPsi = derivZbar(f.grid, psi);
    const MatrixGrids dzPsiStar = derivZ(f.grid, psiStar);
    const MatrixGrids comm = commutatorGrids(psiStar, psi);
    MatrixGrids r1{dzbPsi.a - dzPsiStar.a + comm.a, dzbPsi.b - dzPsiStar.b + comm.b,
                   dzbPsi.c - dzPsiStar.c + comm.c, dzbPsi.d - dzPsiStar.d + comm.d};
    MatrixGrids r2{dzbPsi.a + dzPsiStar.a, dzbPsi.b + dzPsiStar.b, dzbPsi.c + dzPsiStar.c,
                   dzbPsi.d + dzPsiStar.d};
    return {maxNorm(r1), maxNorm(r2)};
}

double hitchinFlatnessResidual(const SU2Immersion& f, cd lambda, HitchinPlacement placement) {
    const auto [a, b] = hitchinCoefficients(lambda, placement);
    const Matrix2Field psi = f.psi();
    const Matrix2Field psiStar = f.psiStar();
    const MatrixGrids dzbPsi = derivZbar(f.grid, psi);
    const MatrixGrids dzPsiStar = derivZ(f.grid, psiStar);
    const MatrixGrids comm = commutatorGrids(psi, psiStar);
    const MatrixGrids r{-a * dzbPsi.a + b * dzPsiStar.a + a * b * comm.a,
                        -a * dzbPsi.b + b * dzPsiStar.b + a * b * comm.b,
                        -a * dzbPsi.c + b * dzPsiStar.c + a * b * comm.c,
                        -a * dzbPsi.d + b * dzPsiStar.d + a * b * comm.d};
    return maxNorm(r);
}

Eigen::Matrix2cd hitchinMonodromy(const SU2Immersion& f, int generator, cd lambda,
                                  HitchinPlacement placement, int baseIndex) {
    const auto [a, b] = hitchinCoefficients(lambda, placement);
    const cd gamma = f.grid.lattice().gamma(generator);
    const int axis = generator;
    LineMatrix psiLine = restrict(f.grid, f.psi(), axis, baseIndex);
    LineMatrix psiStarLine = restrict(f.grid, f.psiStar(), axis, baseIndex);
    auto coeff = [&](double s) {
        return (-gamma * a * psiLine(s) - std::conj(gamma) * b * psiStarLine(s)).eval();
    };
    return monodromyAdaptive(coeff);
}

Theorem10Report theorem10Gauge(const SU2Immersion& f, const SphereSpinor& spinor, cd lambda,
                               int generator, HitchinPlacement placement) {
    Theorem10Report rep;
    const auto& g = f.grid;
    const Grid2c p1 = spinor.psi1.values(), p2 = spinor.psi2.values();
    const double invRt2 = 1.0 / std::sqrt(2.0);
    const Grid2c aEnt = (-kI * p1.conjugate() + p2) * invRt2;
    const Grid2c bEnt = (-kI * p1 + p2.conjugate()) * invRt2;
    const Grid2c det = aEnt.abs2() + bEnt.abs2();  // = e^alpha

    const Matrix2Field psi = f.psi();
    const Matrix2Field psiStar = f.psiStar();
    const Grid2c ea = spinor.expAlpha.cast<cd>();

    // L^{-1} M L with L = [[conj a, -conj b],[b, a]].
    auto gauge = [&](const Matrix2Field& m) {
        MatrixGrids out;
        // adj(L) = [[a, conj b],[-b, conj a]]; L^{-1} = adj / det.
        const Grid2c l11 = aEnt.conjugate(), l12 = -bEnt.conjugate(), l21 = bEnt, l22 = aEnt;
        const Grid2c i11 = aEnt, i12 = bEnt.conjugate(), i21 = -bEnt, i22 = aEnt.conjugate();
        const Grid2c t11 = m.a * l11 + m.b * l21, t12 = m.a * l12 + m.b * l22;
        const Grid2c t21 = m.c * l11 + m.d * l21, t22 = m.c * l12 + m.d * l22;
        out.a = (i11 * t11 + i12 * t21) / det;
        out.b = (i11 * t12 + i12 * t22) / det;
        out.c = (i21 * t11 + i22 * t21) / det;
        out.d = (i21 * t12 + i22 * t22) / det;
        return out;
    };
    MatrixGrids gPsi = gauge(psi);
    MatrixGrids gPsiStar = gauge(psiStar);
    rep.gaugeResidualPsi =
        std::max({gPsi.a.abs().maxCoeff(), (gPsi.b - ea).abs().maxCoeff(),
                  gPsi.c.abs().maxCoeff(), gPsi.d.abs().maxCoeff()});
    rep.gaugeResidualPsiStar =
        std::max({gPsiStar.a.abs().maxCoeff(), gPsiStar.b.abs().maxCoeff(),
                  (gPsiStar.c + ea).abs().maxCoeff(), gPsiStar.d.abs().maxCoeff()});

    // G = e^alpha [[0, i lambda],[1, 0]] L^{-1} = [[-i lambda b, i lambda conj a],[a, conj b]].
    const Character chi = spinor.character;
    PeriodicField g11(g, -kI * lambda * bEnt, chi);
    PeriodicField g12(g, kI * lambda * aEnt.conjugate(), chi);
    PeriodicField g21(g, aEnt, chi);
    PeriodicField g22(g, bEnt.conjugate(), chi);

    const auto [ca, cb] = hitchinCoefficients(lambda, placement);
    const Grid2c v = -0.5 * kI * ea;  // minimal-torus potential
    // Row 1 of D^S(G phi): V G_{1,:} + d(G_{2,:}) - ca (G_{2,:} Psi).
    Grid2c c11 = v * g11.values() + g21.dZ().values() -
                 ca * (g21.values() * psi.a + g22.values() * psi.c);
    Grid2c c12 = v * g12.values() + g22.dZ().values() -
                 ca * (g21.values() * psi.b + g22.values() * psi.d);
    // Row 2: -dbar(G_{1,:}) + cb (G_{1,:} Psi*) + conj(V) G_{2,:}.
    Grid2c c21 = -g11.dZbar().values() +
                 cb * (g11.values() * psiStar.a + g12.values() * psiStar.c) +
                 v.conjugate() * g21.values();
    Grid2c c22 = -g12.dZbar().values() +
                 cb * (g11.values() * psiStar.b + g12.values() * psiStar.d) +
                 v.conjugate() * g22.values();
    rep.diracResidual = std::max({c11.abs().maxCoeff(), c12.abs().maxCoeff(),
                                  c21.abs().maxCoeff(), c22.abs().maxCoeff()});

    // Multiplier relation along the chosen generator.
    const Eigen::Matrix2cd H = hitchinMonodromy(f, generator, lambda, placement, 0);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(H, true);
    const cd mu = es.eigenvalues()[0];
    Eigen::Vector2cd v0 = es.eigenvectors().col(0);
    rep.hitchinMultiplier = mu;

    // Integrate phi along the loop and push through the gauge.
    const auto [a2, b2] = hitchinCoefficients(lambda, placement);
    const cd gamma = g.lattice().gamma(generator);
    LineMatrix psiLine = restrict(g, psi, generator, 0);
    LineMatrix psiStarLine = restrict(g, psiStar, generator, 0);
    auto coeff = [&](double s) {
        return (-gamma * a2 * psiLine(s) - std::conj(gamma) * b2 * psiStarLine(s)).eval();
    };
    LineMatrix gLine{LineInterpolant(g11, generator, 0), LineInterpolant(g12, generator, 0),
                     LineInterpolant(g21, generator, 0), LineInterpolant(g22, generator, 0)};

    const Eigen::Matrix2cd transfer = monodromyAdaptive(coeff);
    const Eigen::Vector2cd phiEnd = transfer * v0;
    // G(z + gamma) = eps G(z) with eps the detected character of the
    // generating spinor, so the gauged multiplier picks up exactly that sign.
    const Eigen::Vector2cd start = gLine(0.0) * v0;
    const Eigen::Vector2cd end = gLine(0.0) * phiEnd;
    const int eps = generator == 0 ? chi.eps1 : chi.eps2;
    rep.characterSign = eps;
    const cd gauged = (start.adjoint() * end)(0, 0) / start.squaredNorm() * double(eps);
    rep.gaugedMultiplier = gauged;
    rep.multiplierDefect = std::abs(gauged - double(eps) * mu);
    return rep;
}

}  // namespace spectori
