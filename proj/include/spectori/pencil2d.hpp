#ifndef SPECTORI_PENCIL2D_HPP
#define SPECTORI_PENCIL2D_HPP

#include "spectori/field.hpp"

#include <Eigen/SparseCore>

namespace spectori {

struct Quasimomentum {
    cd k1{0.0, 0.0};
    cd k2{0.0, 0.0};
};

// mu_j = exp(2 pi i <k, gamma_j>), <k,gamma> = k1 Re gamma + k2 Im gamma.
cd multiplier(const Quasimomentum& k, cd gamma);

struct WitnessResult {
    double sigma1 = 0.0;           // smallest singular value of the truncation
    double sigma2 = 0.0;           // second smallest (0 unless requested)
    bool regularized = false;      // LU needed a tiny diagonal shift
};

// Fourier-Galerkin truncation of the Dirac operator conjugated by
// e^{2 pi i <k,x>}: derivative symbols shift by pi(k2 + i k1) / pi(k2 - i k1)
// and multiplication by U becomes convolution on the mode box |m|,|n| <= M.
class DiracPencilFactory {
  public:
    DiracPencilFactory(const PeriodicField& U, int cutoff, double dropTol = 1e-14);

    int cutoff() const { return M_; }
    int blockSize() const { return B_; }
    int dim() const { return 2 * B_; }
    const Lattice& lattice() const { return lattice_; }

    // Fraction of |U| Fourier mass outside the mode box: > 0 means the cutoff
    // truncates the potential itself and results carry that error.
    double spectralTailFraction() const { return tailFraction_; }

    Eigen::SparseMatrix<cd> assemble(const Quasimomentum& k) const;
    Eigen::MatrixXcd assembleDense(const Quasimomentum& k) const;

    WitnessResult witness(const Quasimomentum& k, int nSingular = 1) const;
    // Dense-route witness, retained as the small-cutoff cross-check.
    WitnessResult witnessDense(const Quasimomentum& k, int nSingular = 1) const;
    // log|det| of the truncation; only meaningful for small cutoffs.
    double logAbsDeterminant(const Quasimomentum& k) const;

  private:
    int M_, B_;
    Lattice lattice_;
    std::vector<std::tuple<int, int, cd>> uCoeffs_;  // (dm, dn, coefficient)
    std::vector<cd> dPlus_, dBar_;                   // derivative symbols per mode
    double tailFraction_ = 0.0;
    double normEstimate_ = 1.0;
};

}  // namespace spectori

#endif
