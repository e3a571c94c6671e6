#include "spectori/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace spectori {

Lattice::Lattice(cd gamma1, cd gamma2) : gamma1_(gamma1), gamma2_(gamma2) {
    const double area = std::abs(std::imag(std::conj(gamma1) * gamma2));
    const double scale = std::abs(gamma1) * std::abs(gamma2);
    if (!(area > 1e-14 * std::max(scale, 1e-300)))
        throw std::invalid_argument("Lattice: generators are linearly dependent over R");
}

double Lattice::volume() const { return std::abs(std::imag(std::conj(gamma1_) * gamma2_)); }

cd Lattice::sZ() const {
    const cd den = gamma1_ * std::conj(gamma2_) - std::conj(gamma1_) * gamma2_;
    return std::conj(gamma2_) / den;
}

cd Lattice::tZ() const {
    const cd den = gamma1_ * std::conj(gamma2_) - std::conj(gamma1_) * gamma2_;
    return -std::conj(gamma1_) / den;
}

std::array<cd, 2> Lattice::dualBasis() const {
    // Real 2x2 inverse-transpose of [Re g | Im g].
    const double a = std::real(gamma1_), b = std::imag(gamma1_);
    const double c = std::real(gamma2_), d = std::imag(gamma2_);
    const double det = a * d - b * c;
    return {cd(d / det, -c / det), cd(-b / det, a / det)};
}

Lattice Lattice::changeBasis(const Eigen::Matrix2i& m) const {
    if (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) != 1)
        throw std::invalid_argument("changeBasis: matrix must have determinant 1");
    Lattice out(double(m(0, 0)) * gamma1_ + double(m(0, 1)) * gamma2_,
                double(m(1, 0)) * gamma1_ + double(m(1, 1)) * gamma2_);
    out.basisChange_ = m;
    return out;
}

FundamentalGrid::FundamentalGrid(Lattice lattice, int n1, int n2)
    : lattice_(std::move(lattice)), n1_(n1), n2_(n2) {
    if (n1 < 8 || n2 < 8 || n1 % 2 != 0 || n2 % 2 != 0)
        throw std::invalid_argument("FundamentalGrid: sizes must be even and >= 8");
}

cd FundamentalGrid::point(int j, int k) const {
    return (double(j) / n1_) * lattice_.gamma1() + (double(k) / n2_) * lattice_.gamma2();
}

}  // namespace spectori
