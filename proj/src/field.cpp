#include "spectori/field.hpp"

#include "spectori/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace spectori {
namespace {

void requireSameShape(const PeriodicField& a, const PeriodicField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
}

Grid2c modulation(const FundamentalGrid& g, const Character& c, double sign) {
    Grid2c m(g.n1(), g.n2());
    for (int j = 0; j < g.n1(); ++j)
        for (int k = 0; k < g.n2(); ++k) {
            const double phase =
                2.0 * kPi * (c.shift1() * j / g.n1() + c.shift2() * k / g.n2()) * sign;
            m(j, k) = cd(std::cos(phase), std::sin(phase));
        }
    return m;
}

}  // namespace

PeriodicField::PeriodicField(FundamentalGrid grid, Grid2c values, Character character)
    : grid_(std::move(grid)), values_(std::move(values)), character_(character) {
    if (values_.rows() != grid_.n1() || values_.cols() != grid_.n2())
        throw std::invalid_argument("PeriodicField: value shape does not match grid");
    if (!values_.isFinite().all())
        throw std::invalid_argument("PeriodicField: non-finite sample values");
}

PeriodicField PeriodicField::constant(const FundamentalGrid& grid, cd value) {
    return PeriodicField(grid, Grid2c::Constant(grid.n1(), grid.n2(), value));
}

PeriodicField PeriodicField::sample(const FundamentalGrid& grid,
                                    const std::function<cd(cd, double, double)>& fn,
                                    Character character) {
    Grid2c v(grid.n1(), grid.n2());
    for (int j = 0; j < grid.n1(); ++j)
        for (int k = 0; k < grid.n2(); ++k) {
            const double s = double(j) / grid.n1(), t = double(k) / grid.n2();
            v(j, k) = fn(grid.point(j, k), s, t);
        }
    return PeriodicField(grid, std::move(v), character);
}

PeriodicField PeriodicField::fromCoefficients(const FundamentalGrid& grid, const Grid2c& coeffs,
                                              Character character) {
    Grid2c v = fft2Inverse(coeffs) * modulation(grid, character, +1.0);
    return PeriodicField(grid, std::move(v), character);
}

Grid2c PeriodicField::coefficients() const {
    return fft2Forward((values_ * modulation(grid_, character_, -1.0)).eval());
}

PeriodicField PeriodicField::dZ() const {
    const Lattice& lat = grid_.lattice();
    const cd sz = lat.sZ(), tz = lat.tZ();
    Grid2c c = coefficients();
    for (int j = 0; j < n1(); ++j)
        for (int k = 0; k < n2(); ++k) {
            const double fm = signedFrequency(j, n1()) + character_.shift1();
            const double fn = signedFrequency(k, n2()) + character_.shift2();
            c(j, k) *= 2.0 * kPi * kI * (fm * sz + fn * tz);
        }
    return fromCoefficients(grid_, c, character_);
}

PeriodicField PeriodicField::dZbar() const {
    const Lattice& lat = grid_.lattice();
    const cd szb = lat.sZbar(), tzb = lat.tZbar();
    Grid2c c = coefficients();
    for (int j = 0; j < n1(); ++j)
        for (int k = 0; k < n2(); ++k) {
            const double fm = signedFrequency(j, n1()) + character_.shift1();
            const double fn = signedFrequency(k, n2()) + character_.shift2();
            c(j, k) *= 2.0 * kPi * kI * (fm * szb + fn * tzb);
        }
    return fromCoefficients(grid_, c, character_);
}

cd PeriodicField::integrateOverDomain() const {
    if (character_.eps1 != 1 || character_.eps2 != 1)
        throw std::invalid_argument(
            "integrateOverDomain: antiperiodic field has no well-defined domain integral "
            "(character must be (+,+))");
    return grid_.lattice().volume() * values_.mean();
}

cd PeriodicField::evaluate(double s, double t) const {
    const Grid2c c = coefficients();
    cd acc = 0.0;
    for (int j = 0; j < n1(); ++j)
        for (int k = 0; k < n2(); ++k) {
            const double fm = signedFrequency(j, n1()) + character_.shift1();
            const double fn = signedFrequency(k, n2()) + character_.shift2();
            const double phase = 2.0 * kPi * (fm * s + fn * t);
            acc += c(j, k) * cd(std::cos(phase), std::sin(phase));
        }
    return acc;
}

PeriodicField PeriodicField::conjugated() const {
    return PeriodicField(grid_, values_.conjugate(), character_);
}

PeriodicField PeriodicField::operator*(const PeriodicField& o) const {
    requireSameShape(*this, o);
    return PeriodicField(grid_, values_ * o.values_, character_.product(o.character_));
}

PeriodicField PeriodicField::operator+(const PeriodicField& o) const {
    requireSameShape(*this, o);
    if (!(character_ == o.character_))
        throw std::invalid_argument("field sum requires equal characters");
    return PeriodicField(grid_, values_ + o.values_, character_);
}

PeriodicField PeriodicField::operator-(const PeriodicField& o) const {
    requireSameShape(*this, o);
    if (!(character_ == o.character_))
        throw std::invalid_argument("field difference requires equal characters");
    return PeriodicField(grid_, values_ - o.values_, character_);
}

PeriodicField PeriodicField::operator*(cd scalar) const {
    return PeriodicField(grid_, values_ * scalar, character_);
}

PeriodicField PeriodicField::map(const std::function<cd(cd)>& fn) const {
    Grid2c v(n1(), n2());
    for (int j = 0; j < n1(); ++j)
        for (int k = 0; k < n2(); ++k) v(j, k) = fn(values_(j, k));
    return PeriodicField(grid_, std::move(v), character_);
}

PeriodicField dZ(const PeriodicField& f) { return f.dZ(); }
PeriodicField dZbar(const PeriodicField& f) { return f.dZbar(); }
cd integrateOverDomain(const PeriodicField& f) { return f.integrateOverDomain(); }

}  // namespace spectori
