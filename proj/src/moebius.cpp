#include "spectori/moebius.hpp"

#include <cmath>
#include <stdexcept>

namespace spectori {

MoebiusMap::MoebiusMap(std::vector<Primitive> primitives) : primitives_(std::move(primitives)) {
    for (const auto& p : primitives_)
        if (const auto* h = std::get_if<Homothety>(&p); h && h->factor == 0.0)
            throw std::invalid_argument("MoebiusMap: homothety factor must be nonzero");
}

Vec3 MoebiusMap::apply(const Vec3& x) const {
    Vec3 y = x;
    for (auto it = primitives_.rbegin(); it != primitives_.rend(); ++it) {
        if (const auto* iso = std::get_if<Isometry>(&*it)) {
            y = iso->rotation * y + iso->translation;
        } else if (const auto* inv = std::get_if<Inversion>(&*it)) {
            const Vec3 d = y - inv->center;
            const double n2 = d.squaredNorm();
            if (n2 == 0.0) throw std::domain_error("MoebiusMap: point maps to infinity");
            y = d / n2;
        } else {
            y = std::get<Homothety>(*it).factor * y;
        }
    }
    return y;
}

double MoebiusMap::closestApproach(const Vec3& x) const {
    Vec3 y = x;
    double closest = std::numeric_limits<double>::infinity();
    for (auto it = primitives_.rbegin(); it != primitives_.rend(); ++it) {
        if (const auto* iso = std::get_if<Isometry>(&*it)) {
            y = iso->rotation * y + iso->translation;
        } else if (const auto* inv = std::get_if<Inversion>(&*it)) {
            const Vec3 d = y - inv->center;
            closest = std::min(closest, d.norm());
            if (d.squaredNorm() == 0.0) return 0.0;
            y = d / d.squaredNorm();
        } else {
            y = std::get<Homothety>(*it).factor * y;
        }
    }
    return closest;
}

Eigen::Matrix2cd r3ToMatrix(const Vec3& x) {
    Eigen::Matrix2cd m;
    m << kI * x[0], cd(x[1], x[2]), cd(-x[1], x[2]), -kI * x[0];
    return m;
}

Vec3 matrixToR3(const Eigen::Matrix2cd& m) {
    return {std::imag(m(0, 0)), std::real(m(0, 1)), std::imag(m(0, 1))};
}

bool isNorthPole(const Eigen::Matrix2cd& a, double tol) {
    return (a - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < tol;
}

Vec3 stereographic(const Eigen::Matrix2cd& a) {
    if (isNorthPole(a)) throw std::domain_error("stereographic: the north pole maps to infinity");
    const Eigen::Matrix2cd num = Eigen::Matrix2cd::Identity() + a;
    const Eigen::Matrix2cd den = Eigen::Matrix2cd::Identity() - a;
    return matrixToR3(num * den.inverse());
}

Eigen::Matrix2cd stereographicInverse(const Vec3& b) {
    const Eigen::Matrix2cd m = r3ToMatrix(b);
    return (m - Eigen::Matrix2cd::Identity()) * (m + Eigen::Matrix2cd::Identity()).inverse();
}

ImmersionR3 stereographicProject(const SU2Immersion& f) {
    ImmersionR3 F(f.grid);
    for (int j = 0; j < f.grid.n1(); ++j)
        for (int k = 0; k < f.grid.n2(); ++k) {
            const Vec3 p = stereographic(f.f.sampleAt(j, k));
            for (int i = 0; i < 3; ++i) F.periodicPart[i](j, k) = p[i];
        }
    return F;
}

ImmersionR3 applyMoebius(const MoebiusMap& map, const ImmersionR3& F, double minDistance) {
    const bool torus = F.isTorus();
    bool conformalOnly = true;
    for (const auto& p : map.primitives())
        if (std::holds_alternative<Inversion>(p)) conformalOnly = false;
    if (!torus && !conformalOnly)
        throw std::invalid_argument("applyMoebius: inversions need a closed torus");

    const int n1 = F.grid.n1(), n2 = F.grid.n2();
    // Distance check first so the error can report it.
    double closest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k)
            closest = std::min(closest, map.closestApproach(F.position(j, k)));
    if (closest < minDistance)
        throw std::invalid_argument(
            "applyMoebius: an inversion center sits on or near the surface (closest approach " +
            std::to_string(closest) + ")");

    ImmersionR3 out(F.grid);
    if (torus) {
        for (int j = 0; j < n1; ++j)
            for (int k = 0; k < n2; ++k) {
                const Vec3 y = map.apply(F.position(j, k));
                for (int i = 0; i < 3; ++i) out.periodicPart[i](j, k) = y[i];
            }
        return out;
    }
    // Affine maps keep the linear-plus-periodic split.
    Eigen::Matrix3d linear = Eigen::Matrix3d::Identity();
    for (const auto& p : map.primitives()) {
        if (const auto* iso = std::get_if<Isometry>(&p))
            linear = iso->rotation * linear;
        else if (const auto* h = std::get_if<Homothety>(&p))
            linear = h->factor * linear;
    }
    for (int i = 0; i < 2; ++i) out.translationPeriods[i] = linear * F.translationPeriods[i];
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) {
            const Vec3 y = map.apply(F.position(j, k));
            const double s = double(j) / n1, t = double(k) / n2;
            const Vec3 lin = s * out.translationPeriods[0] + t * out.translationPeriods[1];
            for (int i = 0; i < 3; ++i) out.periodicPart[i](j, k) = y[i] - lin[i];
        }
    return out;
}

namespace {

// Dual potential in the isothermic parameter, U* = -A e^{-alpha}; real by Im A ~ 0.
Grid2r dualPotentialGrid(const SurfaceData& s) { return -(s.hopf.real() / s.expAlpha); }

std::pair<Eigen::VectorXd, double> collapseRows(const Grid2r& g) {
    Eigen::VectorXd line(g.rows());
    double var = 0.0;
    for (int j = 0; j < g.rows(); ++j) {
        line[j] = g.row(j).mean();
        var = std::max(var, (g.row(j) - line[j]).abs().maxCoeff());
    }
    return {line, var};
}

double setDistance(const std::vector<cd>& a, const std::vector<cd>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (cd x : a) {
        double best = std::numeric_limits<double>::infinity();
        for (cd y : b) best = std::min(best, std::abs(x - y));
        worst = std::max(worst, best);
    }
    for (cd y : b) {
        double best = std::numeric_limits<double>::infinity();
        for (cd x : a) best = std::min(best, std::abs(x - y));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

Theorem11Report theorem11Check(const ImmersionR3& F, const MoebiusMap& map,
                               const SearchRegion& region, int kruskalCount) {
    Theorem11Report rep;
    SurfaceData forms = fundamentalForms(F);
    ImmersionR3 image = applyMoebius(map, F);
    SurfaceData formsImage = fundamentalForms(image);

    const Grid2r uStar = dualPotentialGrid(forms);
    const Grid2r v = dualPotentialGrid(formsImage);
    const Grid2r dMinus = (v - uStar).abs();
    const Grid2r dPlus = (v + uStar).abs();
    rep.potentialDefect = dMinus.min(dPlus).maxCoeff();
    const long plusVotes = (dMinus <= dPlus).count();
    rep.dominantSign = 2 * plusVotes >= dMinus.size() ? +1 : -1;

    rep.willmoreOriginal = willmoreDirect(forms);
    rep.willmoreImage = willmoreDirect(formsImage);

    auto [uLine, uVar] = collapseRows(uStar);
    auto [vLine, vVar] = collapseRows(v);
    rep.yVariationOriginal = uVar;
    rep.yVariationImage = vVar;

    const double T = std::abs(F.grid.lattice().gamma1());
    Potential1D uPot(uLine, T);
    Potential1D vPot(vLine, T);

    SpectralCurve1D curveU = branchPoints(Monodromy1D(uPot), region);
    SpectralCurve1D curveV = branchPoints(Monodromy1D(vPot), region);
    rep.branchPointsOriginal = curveU.branchPoints;
    rep.branchPointsImage = curveV.branchPoints;
    rep.branchPointDistance = setDistance(curveU.branchPoints, curveV.branchPoints);

    rep.kOriginal = kruskalInvariants(miura(uPot), T, kruskalCount).K;
    rep.kImage = kruskalInvariants(miura(vPot), T, kruskalCount).K;
    for (int l = 0; l < kruskalCount; ++l)
        rep.kRelativeDifference.push_back(std::abs(rep.kOriginal[l] - rep.kImage[l]) /
                                          (1.0 + std::abs(rep.kOriginal[l])));
    return rep;
}

std::pair<double, double> blaschkeDensityInvariance(const ImmersionR3& F, const MoebiusMap& map) {
    SurfaceData before = fundamentalForms(F);
    SurfaceData after = fundamentalForms(applyMoebius(map, F));
    const Grid2r densityBefore = 16.0 * before.hopf.abs2() / before.expTwoAlpha;
    const Grid2r densityAfter = 16.0 * after.hopf.abs2() / after.expTwoAlpha;
    const Grid2r footBefore = before.hopf.abs() / before.expAlpha;
    const Grid2r footAfter = after.hopf.abs() / after.expAlpha;
    return {(densityBefore - densityAfter).abs().maxCoeff(),
            (footBefore - footAfter).abs().maxCoeff()};
}

}  // namespace spectori
