#ifndef SPECTORI_LAX_HPP
#define SPECTORI_LAX_HPP

#include "spectori/field.hpp"
#include "spectori/zakharov.hpp"

#include <vector>

namespace spectori {

// Square matrix of periodic coefficient fields, the carrier for zero-curvature
// checks.
class MatrixField {
  public:
    MatrixField(FundamentalGrid grid, int dim);

    int dim() const { return dim_; }
    const FundamentalGrid& grid() const { return grid_; }
    PeriodicField& at(int r, int c) { return entries_[size_t(r) * dim_ + c]; }
    const PeriodicField& at(int r, int c) const { return entries_[size_t(r) * dim_ + c]; }

    MatrixField dZ() const;
    MatrixField dZbar() const;
    MatrixField commutator(const MatrixField& o) const;
    MatrixField operator-(const MatrixField& o) const;
    MatrixField operator+(const MatrixField& o) const;
    double maxNorm() const;
    Eigen::MatrixXcd sampleAt(int j, int k) const;

  private:
    FundamentalGrid grid_;
    int dim_;
    std::vector<PeriodicField> entries_;
};

enum class LaxTag { CmcGeom, CmcZcc, Isothermic4x4 };

struct LaxConnection {
    LaxTag tag;
    cd lambda;
    MatrixField zMatrix;     // psi_z   = zMatrix psi
    MatrixField zbarMatrix;  // psi_zbar = zbarMatrix psi
};

// || d/dzbar(zMatrix) - d/dz(zbarMatrix) + [zMatrix, zbarMatrix] ||_inf
double zeroCurvatureResidual(const LaxConnection& c);

// (sinh-comm-1): the Gauss-Weingarten pencil of a CMC surface, u = 2 alpha.
LaxConnection cmcGeomConnection(const PeriodicField& alpha, cd lambda);
// (sinh-comm-2): the spectral-curve pencil in terms of u.
LaxConnection cmcZccConnection(const PeriodicField& u, cd lambda);

struct SinhGordonField {
    PeriodicField u;
    double residual;  // max |u_zzbar + sinh u|
};

SinhGordonField makeSinhGordonField(const PeriodicField& u);

// One-phase sinh-Gordon data from the pendulum reduction u_xx = -4 sinh u,
// period located by shooting; samples are uniform over [0, T).
struct PendulumSolution {
    Eigen::VectorXd u;
    double period;
};
PendulumSolution solveSinhGordonPendulum(double amplitude, int nSamples);

// phi solves (sinh-comm-2) iff psi = (lambda phi2, e^alpha phi1) solves
// (sinh-comm-1); returns psi and the residual of the target system.
struct CmcMapResult {
    PeriodicField psi1, psi2;
    double targetResidual;
};
CmcMapResult cmcPropMap(const PeriodicField& phi1, const PeriodicField& phi2,
                        const PeriodicField& alpha, cd lambda);

// Transfer matrix of (sinh-comm-2) over the real period for y-independent u.
Eigen::Matrix2cd cmcMonodromy(const Potential1D& uProfile, cd lambda);
std::pair<cd, cd> cmcMultipliers(const Potential1D& uProfile, cd lambda);

// Optimal-matching distance between eigenvalue multisets.
double eigenvalueSetDistance(std::vector<cd> a, std::vector<cd> b);

}  // namespace spectori

#endif
