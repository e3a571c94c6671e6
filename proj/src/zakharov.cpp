#include "spectori/zakharov.hpp"

#include "spectori/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace spectori {

Potential1D::Potential1D(Eigen::VectorXd s, double T,
                         std::optional<std::function<double(double)>> c)
    : samples(std::move(s)), period(T), closure(std::move(c)) {
    if (!(period > 0.0)) throw std::invalid_argument("Potential1D: period must be positive");
    if (samples.size() < 2) throw std::invalid_argument("Potential1D: too few samples");
    if (!samples.allFinite()) throw std::invalid_argument("Potential1D: non-finite samples");
    coeffs_ = fft1Forward(samples.cast<cd>());
}

double Potential1D::operator()(double x) const {
    if (closure) return (*closure)(x);
    const int n = int(coeffs_.size());
    const double s = x / period;
    cd acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double f = signedFrequency(j, n);
        const double phase = 2.0 * kPi * f * s;
        acc += coeffs_[j] * cd(std::cos(phase), std::sin(phase));
    }
    return std::real(acc);
}

namespace {

inline Eigen::Matrix2cd coefficientMatrix(cd lambda, double u) {
    Eigen::Matrix2cd m;
    m << -kI * lambda, 2.0 * u, -2.0 * u, kI * lambda;
    return m;
}

// U at the 2n half-step nodes of a fixed-step sweep; lambda-independent, so
// cached per step count.
class DenseTable {
  public:
    explicit DenseTable(const Potential1D& u) : u_(&u) {}

    const std::vector<double>& get(int steps) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(steps);
        if (it != cache_.end()) return it->second;
        std::vector<double> vals(size_t(steps) * 2);
        const double h = u_->period / steps;
        for (int j = 0; j < 2 * steps; ++j) vals[j] = (*u_)(0.5 * h * j);
        return cache_.emplace(steps, std::move(vals)).first->second;
    }

  private:
    const Potential1D* u_;
    std::map<int, std::vector<double>> cache_;
    std::mutex mutex_;
};

void rk4Sweep(cd lambda, const std::vector<double>& uDense, double T, Eigen::Matrix2cd& phi,
              Eigen::Matrix2cd* phiLambda) {
    const int n = int(uDense.size() / 2);
    const double h = T / n;
    phi.setIdentity();
    if (phiLambda) phiLambda->setZero();
    Eigen::Matrix2cd mLambda;
    mLambda << -kI, 0.0, 0.0, kI;
    for (int j = 0; j < n; ++j) {
        const Eigen::Matrix2cd m0 = coefficientMatrix(lambda, uDense[2 * j]);
        const Eigen::Matrix2cd mh = coefficientMatrix(lambda, uDense[2 * j + 1]);
        const Eigen::Matrix2cd m1 = coefficientMatrix(lambda, uDense[(2 * j + 2) % (2 * n)]);

        const Eigen::Matrix2cd k1 = m0 * phi;
        const Eigen::Matrix2cd k2 = mh * (phi + 0.5 * h * k1);
        const Eigen::Matrix2cd k3 = mh * (phi + 0.5 * h * k2);
        const Eigen::Matrix2cd k4 = m1 * (phi + h * k3);
        const Eigen::Matrix2cd phiNext = phi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (phiLambda) {
            auto& pl = *phiLambda;
            const Eigen::Matrix2cd l1 = m0 * pl + mLambda * phi;
            const Eigen::Matrix2cd l2 = mh * (pl + 0.5 * h * l1) + mLambda * (phi + 0.5 * h * k1);
            const Eigen::Matrix2cd l3 = mh * (pl + 0.5 * h * l2) + mLambda * (phi + 0.5 * h * k2);
            const Eigen::Matrix2cd l4 = m1 * (pl + h * l3) + mLambda * (phi + h * k3);
            pl += (h / 6.0) * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
        }
        phi = phiNext;
    }
}

}  // namespace

struct Monodromy1DImpl {
    explicit Monodromy1DImpl(Potential1D pot) : u(std::move(pot)), table(u) {}
    Potential1D u;
    DenseTable table;
};

Monodromy1D::Monodromy1D(Potential1D u, double detTol, int maxSteps)
    : detTol_(detTol), maxSteps_(maxSteps),
      impl_(std::make_shared<Monodromy1DImpl>(std::move(u))) {}

std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> Monodromy1D::integrate(cd lambda,
                                                                     bool withDeriv) const {
    if (!std::isfinite(std::real(lambda)) || !std::isfinite(std::imag(lambda)))
        throw std::invalid_argument("Monodromy1D: lambda must be finite");
    int n = 256;
    Eigen::Matrix2cd phi, phiL;
    cd prevTrace = 0.0;
    bool havePrev = false;
    double achieved = 1.0;
    while (true) {
        rk4Sweep(lambda, impl_->table.get(n), impl_->u.period, phi, withDeriv ? &phiL : nullptr);
        const double detDefect = std::abs(phi.determinant() - 1.0);
        const cd tr = phi.trace();
        const double traceStep = havePrev ? std::abs(tr - prevTrace) : 1.0;
        achieved = std::max(detDefect, traceStep / (1.0 + std::abs(tr)));
        if (detDefect < detTol_ && havePrev && traceStep < detTol_ * (1.0 + std::abs(tr)))
            return {phi, phiL};
        prevTrace = tr;
        havePrev = true;
        if (n >= maxSteps_)
            throw std::runtime_error(
                "Monodromy1D: integrator failed to reach tolerance; achieved defect " +
                std::to_string(achieved));
        n *= 2;
    }
}

const Potential1D& Monodromy1D::potential() const { return impl_->u; }

std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> Monodromy1D::withDerivative(cd lambda) const {
    return integrate(lambda, true);
}

Eigen::Matrix2cd Monodromy1D::operator()(cd lambda) const { return integrate(lambda, false).first; }

std::pair<cd, cd> Monodromy1D::discriminant(cd lambda) const {
    auto [phi, phiL] = withDerivative(lambda);
    const cd tr = phi.trace();
    const cd trL = phiL.trace();
    return {tr * tr - 4.0, 2.0 * tr * trL};
}

Eigen::VectorXd spectralDerivative(const Eigen::VectorXd& samples, double period) {
    const int n = int(samples.size());
    Eigen::VectorXcd c = fft1Forward(samples.cast<cd>());
    for (int j = 0; j < n; ++j)
        c[j] *= 2.0 * kPi * kI * double(signedFrequency(j, n)) / period;
    return fft1Inverse(c).real();
}

std::pair<cd, cd> floquetMultipliers1D(const Eigen::Matrix2cd& transfer) {
    const cd q = 0.5 * transfer.trace();
    cd s = std::sqrt(q * q - 1.0);
    // Pick the branch that adds, not cancels.
    if (std::real(std::conj(q) * s) < 0.0) s = -s;
    const cd kPlus = q + s;
    return {kPlus, 1.0 / kPlus};
}

std::pair<cd, cd> floquetMultipliers1D(const Monodromy1D& m, cd lambda) {
    return floquetMultipliers1D(m(lambda));
}

}  // namespace spectori
