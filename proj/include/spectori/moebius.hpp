#ifndef SPECTORI_MOEBIUS_HPP
#define SPECTORI_MOEBIUS_HPP

#include "spectori/kruskal.hpp"
#include "spectori/su2.hpp"

#include <variant>

namespace spectori {

// Liouville generators of the Moebius group O+(4,1) acting on R^3 + {inf}.
struct Isometry {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Vec3 translation = Vec3::Zero();
};
struct Inversion {
    Vec3 center = Vec3::Zero();  // x -> (x - c)/|x - c|^2
};
struct Homothety {
    double factor = 1.0;  // nonzero
};

// Primitives compose right-to-left.
class MoebiusMap {
  public:
    using Primitive = std::variant<Isometry, Inversion, Homothety>;

    MoebiusMap() = default;
    explicit MoebiusMap(std::vector<Primitive> primitives);

    const std::vector<Primitive>& primitives() const { return primitives_; }
    Vec3 apply(const Vec3& x) const;
    // Smallest distance from any inversion center to the mapped orbit of x as
    // the composition is evaluated.
    double closestApproach(const Vec3& x) const;

  private:
    std::vector<Primitive> primitives_;
};

// Stereographic projection pi(a) = (1+a)(1-a)^{-1} from the north pole and its
// inverse, in the 2x2 matrix model of R^4.
Vec3 stereographic(const Eigen::Matrix2cd& a);
Eigen::Matrix2cd stereographicInverse(const Vec3& b);
Eigen::Matrix2cd r3ToMatrix(const Vec3& x);
Vec3 matrixToR3(const Eigen::Matrix2cd& m);
bool isNorthPole(const Eigen::Matrix2cd& a, double tol = 1e-12);

ImmersionR3 stereographicProject(const SU2Immersion& f);

// Pointwise transform of an immersion; inversions require a torus (no
// translation periods) and centers must stay clear of the surface.
ImmersionR3 applyMoebius(const MoebiusMap& map, const ImmersionR3& F, double minDistance = 1e-6);

struct Theorem11Report {
    // max over the grid of min(|V - U*|, |V + U*|) where V and U* are the dual
    // potentials of image and original in the transported parameter.
    double potentialDefect = 0.0;
    int dominantSign = +1;  // majority vote for V = +U* vs -U*
    double willmoreOriginal = 0.0;
    double willmoreImage = 0.0;
    // 1D spectral data of both dual potentials (revolution-reducible case).
    std::vector<cd> branchPointsOriginal, branchPointsImage;
    double branchPointDistance = 0.0;
    std::vector<cd> kOriginal, kImage;
    std::vector<double> kRelativeDifference;
    double yVariationOriginal = 0.0, yVariationImage = 0.0;
};

// Conformal invariance for isothermic tori: the dual potential of the image
// matches +-(dual potential of the original), and the 1D spectral data of the
// dual operators coincide.
Theorem11Report theorem11Check(const ImmersionR3& F, const MoebiusMap& map,
                               const SearchRegion& region, int kruskalCount = 3);

// max |16 |A|^2 e^{-2 alpha} (before) - same (after)| and the footnote-level
// |A| e^{-alpha} comparison.
std::pair<double, double> blaschkeDensityInvariance(const ImmersionR3& F, const MoebiusMap& map);

}  // namespace spectori

#endif
