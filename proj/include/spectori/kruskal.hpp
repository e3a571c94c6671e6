#ifndef SPECTORI_KRUSKAL_HPP
#define SPECTORI_KRUSKAL_HPP

#include "spectori/builtins.hpp"
#include "spectori/spectral_curve.hpp"
#include "spectori/zakharov.hpp"

namespace spectori {

// q = 2i U_x - 4 U^2 turns the ZS eigenvalue problem into the Schroedinger
// equation [-d2/dx2 + q] f = lambda^2 f (the default, validated by that
// oracle); the 2i U_x - U^2 variant reproduces the dual-surface normalization
// literally and is kept behind the tag.
enum class MiuraConvention { ZakharovShabat, DualNormalized };

Eigen::VectorXcd miura(const Potential1D& u,
                       MiuraConvention convention = MiuraConvention::ZakharovShabat);

struct KruskalResult {
    // H_l normalized to the closed forms H1 = Int q, H2 = Int q^2,
    // H3 = Int (2q^3 - q_x^2); the recursion natively produces -H_l.
    std::vector<cd> H;
    // K_l = -2 pi H_l, oriented so that K_1 equals the Willmore energy of the
    // represented surface (cross-checked against 4 Int U^2 dx dy).
    std::vector<cd> K;
};

// Kruskal-Miura integrals of a complex Schroedinger potential over one period,
// from the density recursion R_1 = -q, R_{n+1} = -R_n' - sum R_k R_{n-k}.
KruskalResult kruskalInvariants(const Eigen::VectorXcd& q, double period, int count);

struct Theorem8Report {
    std::vector<cd> kPotential;      // K_l of the surface potential U
    std::vector<cd> kDualPotential;  // K_l of the dual potential U*
    std::vector<double> relativeDifference;
    double willmore = 0.0;           // direct surface value, for the K_1 check
    double k1VsWillmore = 0.0;
    double potentialYVariation = 0.0;
    Potential1D potential, dualPotential;
};

// Torus of revolution vs its dual: the Kruskal-Miura invariants must agree.
Theorem8Report theorem8Check(const RevolutionTorus& torus, int n1, int n2, int count = 3);

// Built directly from sampled 1D potentials (used for Moebius-transformed tori).
Theorem8Report theorem8CheckPotentials(const Potential1D& u, const Potential1D& uStar, int count);

}  // namespace spectori

#endif
