#ifndef SPECTORI_SCAN2D_HPP
#define SPECTORI_SCAN2D_HPP

#include "spectori/pencil2d.hpp"

#include <vector>

namespace spectori {

struct SpectrumSample {
    Quasimomentum k;
    double witness = 0.0;
    double witness2 = 0.0;
    cd mu1{0.0, 0.0}, mu2{0.0, 0.0};
    bool flagged = false;
};

// Affine complex slice k(zeta) = base + zeta * direction sampled on an
// nRe x nIm rectangle of the zeta plane.
struct ScanSlice {
    Quasimomentum base{};
    Quasimomentum direction{cd(1.0, 0.0), cd(0.0, 0.0)};
    double reLo = -1.0, reHi = 1.0, imLo = -1.0, imHi = 1.0;
    int nRe = 41, nIm = 41;

    Quasimomentum at(double re, double im) const;
    std::vector<Quasimomentum> points() const;
    double cellDiameter() const;
};

struct ScanOptions {
    // Flag witness < relFlagTol * median(witness); an absolute threshold wins
    // when the whole slice sits inside the zero set.
    double relFlagTol = 1e-6;
    double absFlagTol = -1.0;  // disabled when negative
    int nSingular = 1;         // flag on sigma2 instead when set to 2
    int threads = 0;           // 0: honor SPECTRAL_TORI_THREADS, default 1
};

std::vector<SpectrumSample> spectrumScan(const DiracPencilFactory& factory,
                                         const std::vector<Quasimomentum>& kPoints,
                                         const ScanOptions& opts = {});

std::vector<SpectrumSample> spectrumScan(const DiracPencilFactory& factory,
                                         const ScanSlice& slice, const ScanOptions& opts = {});

std::vector<const SpectrumSample*> flagged(const std::vector<SpectrumSample>& samples);

// Exact SL(2,Z) transformation law mu~1 = mu1^a mu2^b, mu~2 = mu1^c mu2^d.
SpectrumSample multiplierBasisChange(const SpectrumSample& sample, const Eigen::Matrix2i& m);
std::vector<SpectrumSample> multiplierBasisChange(const std::vector<SpectrumSample>& samples,
                                                  const Eigen::Matrix2i& m);

struct SymmetryReport {
    double holomorphicMax = 0.0;      // witness at -k over flagged zeros
    double antiholomorphicMax = 0.0;  // witness at -conj(k)
    double dualShiftMax = 0.0;        // |witness(k) - witness(k + dual)|
};

// Props 2-4 restated on located zeros: evaluates the witness at the mapped
// points directly.
SymmetryReport involutionChecks(const DiracPencilFactory& factory,
                                const std::vector<SpectrumSample>& samples,
                                const ScanOptions& opts = {});

int threadBudget(int requested);

}  // namespace spectori

#endif
