#include "spectori/pencil2d.hpp"

#include "spectori/fft.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>

namespace spectori {

cd multiplier(const Quasimomentum& k, cd gamma) {
    return std::exp(2.0 * kPi * kI * (k.k1 * std::real(gamma) + k.k2 * std::imag(gamma)));
}

DiracPencilFactory::DiracPencilFactory(const PeriodicField& U, int cutoff, double dropTol)
    : M_(cutoff), B_((2 * cutoff + 1) * (2 * cutoff + 1)), lattice_(U.grid().lattice()) {
    if (cutoff < 1) throw std::invalid_argument("DiracPencilFactory: cutoff must be >= 1");
    if (!(U.character() == Character{}))
        throw std::invalid_argument("DiracPencilFactory: potential must have character (+,+)");
    if (U.values().imag().abs().maxCoeff() > 1e-12 * (1.0 + U.maxAbs()))
        throw std::invalid_argument("DiracPencilFactory: potential must be real-valued");

    const Grid2c c = U.coefficients();
    const int n1 = U.n1(), n2 = U.n2();
    const double cMax = std::max(c.abs().maxCoeff(), 1e-300);
    double inside = 0.0, outside = 0.0, coefSum = 0.0;
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) {
            const int dm = signedFrequency(j, n1), dn = signedFrequency(k, n2);
            const double mag = std::abs(c(j, k));
            if (std::abs(dm) <= 2 * M_ && std::abs(dn) <= 2 * M_) {
                if (mag > dropTol * cMax) {
                    uCoeffs_.emplace_back(dm, dn, c(j, k));
                    coefSum += mag;
                }
            }
            // Tail report relative to the box that resolves U itself.
            if (std::abs(dm) <= M_ && std::abs(dn) <= M_)
                inside += mag;
            else
                outside += mag;
        }
    tailFraction_ = outside / std::max(inside + outside, 1e-300);

    const cd sz = lattice_.sZ(), tz = lattice_.tZ();
    dPlus_.resize(B_);
    dBar_.resize(B_);
    double dMax = 0.0;
    for (int m = -M_; m <= M_; ++m)
        for (int n = -M_; n <= M_; ++n) {
            const int i = (m + M_) * (2 * M_ + 1) + (n + M_);
            dPlus_[i] = 2.0 * kPi * kI * (double(m) * sz + double(n) * tz);
            dBar_[i] = 2.0 * kPi * kI * (double(m) * std::conj(sz) + double(n) * std::conj(tz));
            dMax = std::max(dMax, std::abs(dPlus_[i]));
        }
    normEstimate_ = dMax + coefSum + 1.0;
}

Eigen::SparseMatrix<cd> DiracPencilFactory::assemble(const Quasimomentum& k) const {
    const int side = 2 * M_ + 1;
    const cd kappaPlus = kPi * (k.k2 + kI * k.k1);
    const cd kappaMinus = kPi * (k.k2 - kI * k.k1);

    std::vector<Eigen::Triplet<cd>> trips;
    trips.reserve(2 * B_ + 2 * uCoeffs_.size() * B_ / 4);
    for (int i = 0; i < B_; ++i) {
        trips.emplace_back(i, B_ + i, dPlus_[i] + kappaPlus);
        trips.emplace_back(B_ + i, i, -dBar_[i] + kappaMinus);
    }
    for (const auto& [dm, dn, c] : uCoeffs_) {
        for (int m = -M_; m <= M_; ++m) {
            const int ms = m - dm;
            if (ms < -M_ || ms > M_) continue;
            for (int n = -M_; n <= M_; ++n) {
                const int ns = n - dn;
                if (ns < -M_ || ns > M_) continue;
                const int row = (m + M_) * side + (n + M_);
                const int col = (ms + M_) * side + (ns + M_);
                trips.emplace_back(row, col, c);
                trips.emplace_back(B_ + row, B_ + col, c);
            }
        }
    }
    Eigen::SparseMatrix<cd> A(2 * B_, 2 * B_);
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

Eigen::MatrixXcd DiracPencilFactory::assembleDense(const Quasimomentum& k) const {
    return Eigen::MatrixXcd(assemble(k));
}

WitnessResult DiracPencilFactory::witnessDense(const Quasimomentum& k, int nSingular) const {
    Eigen::MatrixXcd A = assembleDense(k);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    const auto& s = svd.singularValues();
    WitnessResult out;
    out.sigma1 = s[s.size() - 1];
    if (nSingular > 1 && s.size() >= 2) out.sigma2 = s[s.size() - 2];
    return out;
}

namespace {

using SpMat = Eigen::SparseMatrix<cd>;
using SpLU = Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>;

}  // namespace

WitnessResult DiracPencilFactory::witness(const Quasimomentum& k, int nSingular) const {
    if (dim() <= 300) return witnessDense(k, nSingular);

    SpMat A = assemble(k);
    WitnessResult out;
    SpLU lu;
    lu.isSymmetric(false);
    lu.compute(A);
    double shift = 0.0;
    if (lu.info() != Eigen::Success) {
        // Exactly singular truncation (it happens on the zero-potential
        // planes); shift the diagonal by a negligible amount.
        shift = 1e-14 * normEstimate_;
        SpMat I(dim(), dim());
        I.setIdentity();
        SpMat As = A + I * cd(shift, 0.0);
        lu.compute(As);
        out.regularized = true;
        if (lu.info() != Eigen::Success)
            throw std::runtime_error("witness: sparse LU failed even after regularization");
    }

    const int p = std::min(nSingular + 1, 3);
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(dim(), p);
    // Deterministic pseudo-random start.
    uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return double(state % 1000003) / 1000003.0 - 0.5;
    };
    for (int c = 0; c < p; ++c)
        for (int r = 0; r < dim(); ++r) V(r, c) = cd(next(), next());

    Eigen::VectorXd prev = Eigen::VectorXd::Zero(p);
    for (int iter = 0; iter < 300; ++iter) {
        // V <- (A^H A)^{-1} V, orthonormalized.
        Eigen::MatrixXcd W(dim(), p);
        for (int c = 0; c < p; ++c) {
            Eigen::VectorXcd y = lu.adjoint().solve(V.col(c));
            W.col(c) = lu.solve(y);
        }
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(W);
        V = qr.householderQ() * Eigen::MatrixXcd::Identity(dim(), p);

        // Rayleigh-Ritz on A^H A restricted to span(V).
        Eigen::MatrixXcd AV(dim(), p);
        for (int c = 0; c < p; ++c) AV.col(c) = A * V.col(c);
        Eigen::MatrixXcd G = AV.adjoint() * AV;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
        Eigen::VectorXd sig = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        const double tol = std::max(1e-14 * normEstimate_, 1e-13 * sig.maxCoeff());
        if (iter >= 8 && (sig - prev).cwiseAbs().maxCoeff() < tol) {
            prev = sig;
            break;
        }
        prev = sig;
    }
    out.sigma1 = std::max(prev[0] - shift, 0.0);
    if (nSingular > 1) out.sigma2 = std::max(prev[std::min(1, p - 1)] - shift, 0.0);
    return out;
}

double DiracPencilFactory::logAbsDeterminant(const Quasimomentum& k) const {
    Eigen::MatrixXcd A = assembleDense(k);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    double logDet = 0.0;
    for (int i = 0; i < A.rows(); ++i) logDet += std::log(std::abs(lu.matrixLU()(i, i)));
    return logDet;
}

}  // namespace spectori
