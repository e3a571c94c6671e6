#include "spectori/scan2d.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace spectori {

Quasimomentum ScanSlice::at(double re, double im) const {
    const cd zeta(re, im);
    return {base.k1 + zeta * direction.k1, base.k2 + zeta * direction.k2};
}

std::vector<Quasimomentum> ScanSlice::points() const {
    std::vector<Quasimomentum> out;
    out.reserve(size_t(nRe) * nIm);
    for (int a = 0; a < nRe; ++a)
        for (int b = 0; b < nIm; ++b) {
            const double re = nRe == 1 ? reLo : reLo + (reHi - reLo) * a / double(nRe - 1);
            const double im = nIm == 1 ? imLo : imLo + (imHi - imLo) * b / double(nIm - 1);
            out.push_back(at(re, im));
        }
    return out;
}

double ScanSlice::cellDiameter() const {
    const double dr = nRe > 1 ? (reHi - reLo) / (nRe - 1) : 0.0;
    const double di = nIm > 1 ? (imHi - imLo) / (nIm - 1) : 0.0;
    const double dirNorm = std::sqrt(std::norm(direction.k1) + std::norm(direction.k2));
    return std::hypot(dr, di) * dirNorm;
}

int threadBudget(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SPECTRAL_TORI_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

std::vector<SpectrumSample> spectrumScan(const DiracPencilFactory& factory,
                                         const std::vector<Quasimomentum>& kPoints,
                                         const ScanOptions& opts) {
    std::vector<SpectrumSample> samples(kPoints.size());
    const int nThreads = std::min<int>(threadBudget(opts.threads), std::max<size_t>(kPoints.size(), 1));

    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        while (true) {
            const size_t i = cursor.fetch_add(1);
            if (i >= kPoints.size()) break;
            SpectrumSample& s = samples[i];
            s.k = kPoints[i];
            const WitnessResult w = factory.witness(s.k, opts.nSingular);
            s.witness = w.sigma1;
            s.witness2 = w.sigma2;
            s.mu1 = multiplier(s.k, factory.lattice().gamma1());
            s.mu2 = multiplier(s.k, factory.lattice().gamma2());
        }
    };
    if (nThreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nThreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<double> wit;
    wit.reserve(samples.size());
    for (const auto& s : samples) wit.push_back(opts.nSingular >= 2 ? s.witness2 : s.witness);
    std::vector<double> sorted = wit;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
    const double threshold =
        opts.absFlagTol > 0.0 ? opts.absFlagTol : opts.relFlagTol * median;
    for (size_t i = 0; i < samples.size(); ++i) samples[i].flagged = wit[i] < threshold;
    return samples;
}

std::vector<SpectrumSample> spectrumScan(const DiracPencilFactory& factory, const ScanSlice& slice,
                                         const ScanOptions& opts) {
    return spectrumScan(factory, slice.points(), opts);
}

std::vector<const SpectrumSample*> flagged(const std::vector<SpectrumSample>& samples) {
    std::vector<const SpectrumSample*> out;
    for (const auto& s : samples)
        if (s.flagged) out.push_back(&s);
    return out;
}

namespace {

cd ipow(cd base, int e) {
    if (e == 0) return 1.0;
    const bool neg = e < 0;
    unsigned long n = neg ? -(long)e : e;
    cd acc = 1.0, b = base;
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return neg ? 1.0 / acc : acc;
}

}  // namespace

SpectrumSample multiplierBasisChange(const SpectrumSample& sample, const Eigen::Matrix2i& m) {
    if (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) != 1)
        throw std::invalid_argument("multiplierBasisChange: matrix must have determinant 1");
    SpectrumSample out = sample;
    out.mu1 = ipow(sample.mu1, m(0, 0)) * ipow(sample.mu2, m(0, 1));
    out.mu2 = ipow(sample.mu1, m(1, 0)) * ipow(sample.mu2, m(1, 1));
    return out;
}

std::vector<SpectrumSample> multiplierBasisChange(const std::vector<SpectrumSample>& samples,
                                                  const Eigen::Matrix2i& m) {
    std::vector<SpectrumSample> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(multiplierBasisChange(s, m));
    return out;
}

SymmetryReport involutionChecks(const DiracPencilFactory& factory,
                                const std::vector<SpectrumSample>& samples,
                                const ScanOptions& opts) {
    SymmetryReport rep;
    const auto dual = factory.lattice().dualBasis();
    auto value = [&](const WitnessResult& w) {
        return opts.nSingular >= 2 ? w.sigma2 : w.sigma1;
    };
    for (const auto& s : samples) {
        if (!s.flagged) continue;
        const Quasimomentum neg{-s.k.k1, -s.k.k2};
        const Quasimomentum negConj{-std::conj(s.k.k1), -std::conj(s.k.k2)};
        const Quasimomentum shifted{s.k.k1 + std::real(dual[0]), s.k.k2 + std::imag(dual[0])};
        rep.holomorphicMax =
            std::max(rep.holomorphicMax, value(factory.witness(neg, opts.nSingular)));
        rep.antiholomorphicMax =
            std::max(rep.antiholomorphicMax, value(factory.witness(negConj, opts.nSingular)));
        rep.dualShiftMax = std::max(
            rep.dualShiftMax, std::abs(factory.witness(shifted, 1).sigma1 - s.witness));
    }
    return rep;
}

}  // namespace spectori
