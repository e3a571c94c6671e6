#ifndef SPECTORI_FIELD_HPP
#define SPECTORI_FIELD_HPP

#include "spectori/lattice.hpp"

#include <functional>

namespace spectori {

// (eps1, eps2) in {+1,-1}^2; -1 marks an antiperiodic generator.
struct Character {
    int eps1 = +1;
    int eps2 = +1;

    Character product(const Character& o) const { return {eps1 * o.eps1, eps2 * o.eps2}; }
    bool operator==(const Character& o) const { return eps1 == o.eps1 && eps2 == o.eps2; }
    double shift1() const { return eps1 == 1 ? 0.0 : 0.5; }
    double shift2() const { return eps2 == 1 ? 0.0 : 0.5; }
};

// Samples of f over the fundamental parallelogram with f(z + gamma_j) = eps_j f(z).
// Along generator j the Fourier frequencies are integers (eps_j = +1) or
// half-integers (eps_j = -1). Immutable value type; all calculus is spectral.
class PeriodicField {
  public:
    PeriodicField(FundamentalGrid grid, Grid2c values, Character character = {});

    static PeriodicField constant(const FundamentalGrid& grid, cd value);
    // Samples fn(z, s, t) on the grid.
    static PeriodicField sample(const FundamentalGrid& grid,
                                const std::function<cd(cd, double, double)>& fn,
                                Character character = {});
    static PeriodicField fromCoefficients(const FundamentalGrid& grid, const Grid2c& coeffs,
                                          Character character = {});

    const FundamentalGrid& grid() const { return grid_; }
    const Grid2c& values() const { return values_; }
    const Character& character() const { return character_; }
    int n1() const { return grid_.n1(); }
    int n2() const { return grid_.n2(); }
    cd operator()(int j, int k) const { return values_(j, k); }

    // Fourier coefficients on frequencies (m + shift1, n + shift2), FFT bin order.
    Grid2c coefficients() const;

    PeriodicField dZ() const;
    PeriodicField dZbar() const;

    // VolPi * mean(samples); exact for band-limited integrands. Requires character (+,+).
    cd integrateOverDomain() const;

    // Trigonometric interpolation at lattice coordinates (s,t); exact for
    // band-limited fields.
    cd evaluate(double s, double t) const;

    PeriodicField conjugated() const;
    PeriodicField operator*(const PeriodicField& o) const;
    PeriodicField operator+(const PeriodicField& o) const;
    PeriodicField operator-(const PeriodicField& o) const;
    PeriodicField operator*(cd scalar) const;

    PeriodicField map(const std::function<cd(cd)>& fn) const;  // character preserved
    double maxAbs() const { return values_.abs().maxCoeff(); }

  private:
    FundamentalGrid grid_;
    Grid2c values_;
    Character character_;
};

inline PeriodicField operator*(cd scalar, const PeriodicField& f) { return f * scalar; }

PeriodicField dZ(const PeriodicField& f);
PeriodicField dZbar(const PeriodicField& f);
cd integrateOverDomain(const PeriodicField& f);

}  // namespace spectori

#endif
