#ifndef SPECTORI_LATTICE_HPP
#define SPECTORI_LATTICE_HPP

#include "spectori/types.hpp"

#include <optional>

namespace spectori {

// Period lattice Lambda = gamma1 Z + gamma2 Z of a torus C/Lambda.
class Lattice {
  public:
    Lattice(cd gamma1, cd gamma2);

    cd gamma1() const { return gamma1_; }
    cd gamma2() const { return gamma2_; }
    cd gamma(int j) const { return j == 0 ? gamma1_ : gamma2_; }

    // Area of the fundamental parallelogram, |Im(conj(gamma1) gamma2)|.
    double volume() const;

    // Wirtinger factors of the lattice coordinates z = s*gamma1 + t*gamma2.
    cd sZ() const;
    cd tZ() const;
    cd sZbar() const { return std::conj(sZ()); }
    cd tZbar() const { return std::conj(tZ()); }

    // Dual generators: Re(conj(dual_i) gamma_j) = delta_ij.
    std::array<cd, 2> dualBasis() const;

    // New generators (a g1 + b g2, c g1 + d g2); requires det m = 1.
    Lattice changeBasis(const Eigen::Matrix2i& m) const;
    const std::optional<Eigen::Matrix2i>& basisChange() const { return basisChange_; }

    bool operator==(const Lattice& o) const { return gamma1_ == o.gamma1_ && gamma2_ == o.gamma2_; }

  private:
    cd gamma1_, gamma2_;
    std::optional<Eigen::Matrix2i> basisChange_;
};

// Regular sampling of the fundamental parallelogram, z_jk = (j/n1) gamma1 + (k/n2) gamma2.
// Sizes must be even and >= 8 so half-integer (antiperiodic) frequency shifts stay on grid.
class FundamentalGrid {
  public:
    FundamentalGrid(Lattice lattice, int n1, int n2);

    const Lattice& lattice() const { return lattice_; }
    int n1() const { return n1_; }
    int n2() const { return n2_; }
    cd point(int j, int k) const;

    bool operator==(const FundamentalGrid& o) const {
        return lattice_ == o.lattice_ && n1_ == o.n1_ && n2_ == o.n2_;
    }

  private:
    Lattice lattice_;
    int n1_, n2_;
};

}  // namespace spectori

#endif
