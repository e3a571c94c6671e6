#include "spectori/spectral_curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace spectori {
namespace {

struct EvalCache {
    const Monodromy1D* m;
    long count = 0;
    long budget;
    std::unordered_map<long long, std::pair<cd, cd>> cache;
    bool exhausted = false;

    // Keyed on the exact bit pattern; contour points are reused across shared
    // box edges.
    std::pair<cd, cd> operator()(cd lambda) {
        const double re = std::real(lambda), im = std::imag(lambda);
        long long key = 0;
        static_assert(sizeof(double) == 8);
        unsigned long long a, b;
        std::memcpy(&a, &re, 8);
        std::memcpy(&b, &im, 8);
        key = (long long)(a * 1000003ULL ^ b);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        if (count >= budget) {
            exhausted = true;
            return {cd(1.0, 0.0), cd(0.0, 0.0)};
        }
        ++count;
        auto val = m->discriminant(lambda);
        cache.emplace(key, val);
        return val;
    }
};

struct Box {
    double reLo, reHi, imLo, imHi;
    double width() const { return std::max(reHi - reLo, imHi - imLo); }
    cd center() const { return cd(0.5 * (reLo + reHi), 0.5 * (imLo + imHi)); }
};

// Winding number of f over the box boundary. Edges are sampled adaptively
// until consecutive phase differences stay below pi/2.
int winding(EvalCache& f, const Box& b, bool& reliable) {
    std::vector<cd> corners = {cd(b.reLo, b.imLo), cd(b.reHi, b.imLo), cd(b.reHi, b.imHi),
                               cd(b.reLo, b.imHi), cd(b.reLo, b.imLo)};
    double total = 0.0;
    reliable = true;
    for (int e = 0; e < 4; ++e) {
        // Adaptive subdivision of one edge.
        struct Seg {
            cd a, z;  // endpoints
            cd fa, fz;
            int depth;
        };
        std::vector<Seg> stack;
        auto fa0 = f(corners[e]).first;
        auto fb0 = f(corners[e + 1]).first;
        stack.push_back({corners[e], corners[e + 1], fa0, fb0, 0});
        while (!stack.empty()) {
            Seg s = stack.back();
            stack.pop_back();
            if (std::abs(s.fa) == 0.0 || std::abs(s.fz) == 0.0) {
                reliable = false;
                return 0;
            }
            const double dphase = std::arg(s.fz / s.fa);
            if (std::abs(dphase) < 0.5 * kPi) {
                total += dphase;
                continue;
            }
            if (s.depth > 24 || f.exhausted) {
                reliable = false;
                return 0;
            }
            const cd mid = 0.5 * (s.a + s.z);
            const cd fm = f(mid).first;
            stack.push_back({s.a, mid, s.fa, fm, s.depth + 1});
            stack.push_back({mid, s.z, fm, s.fz, s.depth + 1});
        }
    }
    const double w = total / (2.0 * kPi);
    const long r = std::lround(w);
    if (std::abs(w - r) > 0.25) reliable = false;
    return int(r);
}

cd newtonOnF(EvalCache& f, cd start, double tol, int iters = 60) {
    cd z = start;
    for (int i = 0; i < iters; ++i) {
        auto [fv, fp] = f(z);
        if (std::abs(fp) == 0.0) break;
        const cd step = fv / fp;
        z -= step;
        if (std::abs(step) < tol * (1.0 + std::abs(z))) break;
    }
    return z;
}

// Newton on f' (critical point), for double-root polishing; f'' by central
// difference of the analytic f'.
cd newtonOnFPrime(EvalCache& f, cd start, double tol, int iters = 60) {
    cd z = start;
    for (int i = 0; i < iters; ++i) {
        const double h = 1e-6 * (1.0 + std::abs(z));
        const cd fp = f(z).second;
        const cd fpp = (f(z + h).second - f(z - h).second) / (2.0 * h);
        if (std::abs(fpp) == 0.0) break;
        const cd step = fp / fpp;
        z -= step;
        if (std::abs(step) < tol * (1.0 + std::abs(z))) break;
    }
    return z;
}

struct Collector {
    std::vector<cd> simple, dbl;
    double mergeTol;

    static bool near(const std::vector<cd>& v, cd z, double tol) {
        for (cd w : v)
            if (std::abs(w - z) < tol) return true;
        return false;
    }
    void addSimple(cd z) {
        if (!near(simple, z, mergeTol)) simple.push_back(z);
    }
    void addDouble(cd z) {
        if (!near(dbl, z, mergeTol)) dbl.push_back(z);
    }
};

void subdivide(EvalCache& f, const Box& box, const RootSearchBudget& budget, Collector& out,
               bool& complete, int depth) {
    if (f.exhausted) {
        complete = false;
        return;
    }
    bool reliable = true;
    Box b = box;
    int w = winding(f, b, reliable);
    if (!reliable) {
        // A zero close to the boundary; nudge the box outward slightly.
        const double jitter = 1e-3 * b.width() * (1.0 + 0.1 * depth);
        b = Box{b.reLo - jitter, b.reHi + jitter, b.imLo - jitter * 1.1, b.imHi + jitter * 0.9};
        w = winding(f, b, reliable);
        if (!reliable) {
            if (depth > 48) {
                complete = false;
                return;
            }
        }
    }
    if (w == 0) return;

    const double scale = 1.0 + std::abs(f(b.center()).second);
    if (w == 1) {
        const cd root = newtonOnF(f, b.center(), budget.newtonTol);
        out.addSimple(root);
        return;
    }
    if (w == 2 && b.width() < 64.0 * budget.minBoxWidth) {
        // Either one double root or two nearby simple ones.
        const cd crit = newtonOnFPrime(f, b.center(), budget.newtonTol);
        auto [fc, fpc] = f(crit);
        if (std::abs(fc) < budget.classifyTol * scale &&
            std::abs(crit - b.center()) < 2.0 * b.width()) {
            out.addDouble(crit);
            return;
        }
    }
    if (b.width() < budget.minBoxWidth) {
        // Unresolved cluster at the resolution floor: report the centroid as a
        // double point.
        out.addDouble(newtonOnFPrime(f, b.center(), budget.newtonTol));
        if (w > 2) complete = false;
        return;
    }
    const cd c = b.center();
    const Box quads[4] = {Box{b.reLo, std::real(c), b.imLo, std::imag(c)},
                          Box{std::real(c), b.reHi, b.imLo, std::imag(c)},
                          Box{b.reLo, std::real(c), std::imag(c), b.imHi},
                          Box{std::real(c), b.reHi, std::imag(c), b.imHi}};
    for (const Box& q : quads) subdivide(f, q, budget, out, complete, depth + 1);
}

}  // namespace

SpectralCurve1D branchPoints(const Monodromy1D& m, const SearchRegion& region,
                             const RootSearchBudget& budget) {
    if (!(region.reHi > region.reLo) || !(region.imHi > region.imLo)) {
        SpectralCurve1D empty;
        empty.region = region;
        return empty;
    }
    EvalCache f{&m, 0, budget.maxEvaluations};
    Collector out{{}, {}, std::max(budget.minBoxWidth, 10.0 * budget.newtonTol)};
    bool complete = true;
    subdivide(f, Box{region.reLo, region.reHi, region.imLo, region.imHi}, budget, out, complete, 0);

    SpectralCurve1D curve;
    curve.region = region;
    curve.evaluations = f.count;
    curve.complete = complete && !f.exhausted;

    // Final classification by the derivative test.
    for (cd z : out.simple) {
        const auto [fv, fp] = f(z);
        const double scale = 1.0 + std::abs(fp);
        if (std::abs(fp) < budget.classifyTol * scale)
            curve.resonancePoints.push_back(z);
        else
            curve.branchPoints.push_back(z);
    }
    for (cd z : out.dbl) curve.resonancePoints.push_back(z);

    auto cmp = [](cd a, cd b) {
        return std::real(a) != std::real(b) ? std::real(a) < std::real(b)
                                            : std::imag(a) < std::imag(b);
    };
    std::sort(curve.branchPoints.begin(), curve.branchPoints.end(), cmp);
    std::sort(curve.resonancePoints.begin(), curve.resonancePoints.end(), cmp);
    curve.genusEstimate =
        curve.complete ? std::max(0, int(curve.branchPoints.size()) / 2 - 1) : -1;
    return curve;
}

}  // namespace spectori
