#ifndef SPECTORI_ZAKHAROV_HPP
#define SPECTORI_ZAKHAROV_HPP

#include "spectori/types.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace spectori {

// One period of a real potential U(x), U(x+T) = U(x). Off-grid values come
// from the analytic closure when present, otherwise from trigonometric
// interpolation of the samples.
struct Potential1D {
    Eigen::VectorXd samples;
    double period = 0.0;
    std::optional<std::function<double(double)>> closure;

    Potential1D() = default;
    Potential1D(Eigen::VectorXd s, double T,
                std::optional<std::function<double(double)>> c = std::nullopt);

    double operator()(double x) const;

  private:
    Eigen::VectorXcd coeffs_;  // trig interpolation table
};

struct Monodromy1DImpl;

// Transfer matrix of the Zakharov-Shabat system phi' = [[-i l, 2U],[-2U, i l]] phi
// over one period, from the identity-normalized basis. Fixed-step RK4 with
// Richardson step-halving until |det - 1| < detTol and the trace is Cauchy.
class Monodromy1D {
  public:
    explicit Monodromy1D(Potential1D u, double detTol = 1e-10, int maxSteps = 1 << 21);

    const Potential1D& potential() const;
    double detTolerance() const { return detTol_; }

    Eigen::Matrix2cd operator()(cd lambda) const;
    // Transfer matrix and its lambda-derivative (variational equation).
    std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> withDerivative(cd lambda) const;

    cd trace(cd lambda) const { return (*this)(lambda).trace(); }
    // f = Tr^2 - 4 and f', the discriminant the spectral curve branches on.
    std::pair<cd, cd> discriminant(cd lambda) const;

  private:
    std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> integrate(cd lambda, bool withDeriv) const;

    double detTol_;
    int maxSteps_;
    std::shared_ptr<Monodromy1DImpl> impl_;  // potential + lambda-independent sample cache
};

// Spectral d/dx of one period of samples.
Eigen::VectorXd spectralDerivative(const Eigen::VectorXd& samples, double period);

// Roots of k^2 - Tr k + 1 = 0; larger-magnitude root first, product exactly 1.
std::pair<cd, cd> floquetMultipliers1D(const Eigen::Matrix2cd& transfer);
std::pair<cd, cd> floquetMultipliers1D(const Monodromy1D& m, cd lambda);

}  // namespace spectori

#endif
