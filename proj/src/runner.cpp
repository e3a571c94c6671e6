#include "spectori/runner.hpp"

#include "spectori/builtins.hpp"
#include "spectori/hitchin.hpp"
#include "spectori/isothermic.hpp"
#include "spectori/kruskal.hpp"
#include "spectori/lax.hpp"
#include "spectori/moebius.hpp"
#include "spectori/spinor.hpp"

#include <filesystem>

namespace spectori {

const std::vector<std::string> kSubcommands = {
    "clifford", "revolve",  "potential",         "spectrum1d", "spectrum2d",
    "willmore", "kruskal",  "dual",              "cmc-curve",  "isothermic-pencil",
    "s3-spectrum", "moebius", "verify"};

namespace {

namespace fs = std::filesystem;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

double getNum(const Json& j, const std::string& key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

int getInt(const Json& j, const std::string& key, int fallback) {
    return j.contains(key) ? j.at(key).get<int>() : fallback;
}

std::string getStr(const Json& j, const std::string& key, const std::string& fallback) {
    return j.contains(key) ? j.at(key).get<std::string>() : fallback;
}

Json section(const Json& config, const std::string& name) {
    return config.contains(name) ? config.at(name) : Json::object();
}

struct CheckList {
    Json entries = Json::array();
    bool allPassed = true;

    void add(const std::string& name, double value, double tolerance) {
        const bool ok = value < tolerance;
        entries.push_back({{"check", name}, {"value", value}, {"tolerance", tolerance},
                           {"passed", ok}});
        allPassed = allPassed && ok;
    }
    void addFlag(const std::string& name, bool ok, const Json& detail = {}) {
        Json e = {{"check", name}, {"passed", ok}};
        if (!detail.is_null()) e["detail"] = detail;
        entries.push_back(e);
        allPassed = allPassed && ok;
    }
};

RevolutionTorus torusFromConfig(const Json& surface) {
    return {getNum(surface, "R", 2.0), getNum(surface, "r", 1.0)};
}

struct GridSpec {
    int n1, n2;
};

GridSpec gridFromConfig(const Json& config, int def1 = 64, int def2 = 64) {
    const Json g = section(config, "grid");
    return {getInt(g, "n1", def1), getInt(g, "n2", def2)};
}

Lattice latticeFromConfig(const Json& config, const Lattice& fallback) {
    if (!config.contains("lattice")) return fallback;
    const Json& l = config.at("lattice");
    return Lattice(complexFromJson(l.at("gamma1")), complexFromJson(l.at("gamma2")));
}

ImmersionR3 surfaceFromConfig(const Json& config, const GridSpec& g) {
    const Json s = section(config, "surface");
    const std::string type = getStr(s, "type", "revolution");
    if (type == "revolution") return torusFromConfig(s).immersion(g.n1, g.n2);
    if (type == "clifford-projected") return cliffordShapeTorus().immersion(g.n1, g.n2);
    if (type == "plane") {
        const Lattice lat = latticeFromConfig(config, Lattice(1.0, cd(0.0, 1.0)));
        return planeImmersion(lat, g.n1, g.n2);
    }
    if (type == "fromFieldFile") {
        throw ConfigError("surface.type fromFieldFile: use `potential` inputs instead");
    }
    throw ConfigError("unknown surface.type: " + type);
}

PeriodicField potentialFromConfig(const Json& config, const GridSpec& g) {
    const Json p = section(config, "potential");
    const std::string type = getStr(p, "type", "zero");
    const Lattice lat = latticeFromConfig(config, Lattice(1.0, cd(0.0, 1.0)));
    FundamentalGrid grid(lat, g.n1, g.n2);
    if (type == "zero") return PeriodicField::constant(grid, 0.0);
    if (type == "constant") return PeriodicField::constant(grid, getNum(p, "C", 0.2));
    if (type == "cosine") {
        const double amp = getNum(p, "amplitude", 0.1);
        const double base = getNum(p, "base", 0.0);
        return PeriodicField::sample(
            grid, [&](cd, double s, double) { return cd(base + amp * std::cos(2.0 * kPi * s), 0.0); });
    }
    if (type == "fromSurface") {
        ImmersionR3 F = surfaceFromConfig(config, g);
        return spinorFromSurface(F).spinor.potentialU;
    }
    throw ConfigError("unknown potential.type: " + type);
}

Potential1D potential1DFromConfig(const Json& config) {
    const Json p = section(config, "potential");
    const std::string type = getStr(p, "type", "fromSurface");
    if (type == "oneDim") {
        if (!p.contains("samples")) throw ConfigError("potential.oneDim requires samples");
        Eigen::VectorXd samples(p.at("samples").size());
        for (int i = 0; i < samples.size(); ++i) samples[i] = p.at("samples").at(i).get<double>();
        return Potential1D(samples, getNum(p, "period", 1.0));
    }
    if (type == "zero" || type == "constant") {
        const double c = type == "zero" ? 0.0 : getNum(p, "C", 0.2);
        const double T = getNum(p, "period", 2.0 * kPi);
        return Potential1D(Eigen::VectorXd::Constant(64, c), T);
    }
    if (type == "fromSurface") {
        const Json s = section(config, "surface");
        RevolutionTorus torus = torusFromConfig(s);
        const GridSpec g = gridFromConfig(config, 128, 16);
        const int n = g.n1;
        Eigen::VectorXd samples(n);
        const double T = torus.conformalPeriod();
        for (int j = 0; j < n; ++j) samples[j] = torus.potentialU(T * j / n);
        return Potential1D(samples, T);
    }
    throw ConfigError("unknown potential.type for 1d work: " + type);
}

SearchRegion regionFromConfig(const Json& config, SearchRegion fallback) {
    if (!config.contains("scan") || !config.at("scan").contains("region")) return fallback;
    const Json& r = config.at("scan").at("region");
    return {getNum(r, "reLo", fallback.reLo), getNum(r, "reHi", fallback.reHi),
            getNum(r, "imLo", fallback.imLo), getNum(r, "imHi", fallback.imHi)};
}

MoebiusMap moebiusFromConfig(const Json& config) {
    std::vector<MoebiusMap::Primitive> prims;
    if (!config.contains("moebius")) {
        prims.push_back(Inversion{Vec3::Zero()});
        return MoebiusMap(prims);
    }
    for (const Json& p : config.at("moebius")) {
        const std::string type = p.at("type").get<std::string>();
        if (type == "translation") {
            Isometry iso;
            iso.translation = Vec3(p.at("v").at(0).get<double>(), p.at("v").at(1).get<double>(),
                                   p.at("v").at(2).get<double>());
            prims.push_back(iso);
        } else if (type == "inversion") {
            Inversion inv;
            if (p.contains("center"))
                inv.center = Vec3(p.at("center").at(0).get<double>(),
                                  p.at("center").at(1).get<double>(),
                                  p.at("center").at(2).get<double>());
            prims.push_back(inv);
        } else if (type == "homothety") {
            prims.push_back(Homothety{getNum(p, "factor", 2.0)});
        } else {
            throw ConfigError("unknown moebius primitive: " + type);
        }
    }
    return MoebiusMap(prims);
}

// ---- subcommands ---------------------------------------------------------

Json runClifford(const Json& config, CheckList& checks) {
    const GridSpec g = gridFromConfig(config, 128, 128);
    SU2Immersion f = cliffordTorus(g.n1, g.n2);
    SphereSpinor s = spinorFromS3(f);
    const double rt2 = std::sqrt(2.0);
    const double eaErr = (s.expAlpha - 1.0 / rt2).abs().maxCoeff();
    const double vErr = (s.potentialV + kI / (2.0 * rt2)).abs().maxCoeff();
    const double aErr = (s.hopf - 0.25).abs().maxCoeff();
    const Json tol = section(config, "tolerances");
    checks.add("expAlpha = 1/sqrt(2)", eaErr, getNum(tol, "cliffordValues", 1e-10));
    checks.add("V = -i/(2 sqrt 2)", vErr, getNum(tol, "cliffordValues", 1e-10));
    checks.add("A = 1/4", aErr, getNum(tol, "cliffordValues", 1e-10));
    const auto [res, resConj] = diracSResidual(s);
    checks.add("dirac residual", res, getNum(tol, "diracResidual", 1e-9));
    checks.add("conjugate solution residual", std::abs(res - resConj), 1e-10);
    Json out;
    out["expAlphaError"] = eaErr;
    out["potentialError"] = vErr;
    out["hopfError"] = aErr;
    out["diracResidual"] = res;
    out["character"] = {s.character.eps1, s.character.eps2};
    out["unitarityDefect"] = f.unitarityDefect();
    return out;
}

Json runRevolve(const Json& config, CheckList& checks, const std::string& outDir) {
    const GridSpec g = gridFromConfig(config, 128, 64);
    ImmersionR3 F = surfaceFromConfig(config, g);
    SurfaceData forms = fundamentalForms(F);
    SpinorExtraction ext = spinorFromSurface(F);
    const auto closure = closureDefect(ext.spinor);
    const auto [gauss, codazzi] = forms.codazziResiduals();
    const Json tol = section(config, "tolerances");
    checks.add("codazzi gauss residual", gauss, getNum(tol, "codazzi", 1e-7));
    checks.add("codazzi mean-curvature residual", codazzi, getNum(tol, "codazzi", 1e-7));
    checks.add("dirac residual", ext.spinor.diracResidual(), getNum(tol, "diracResidual", 1e-8));
    double closureMax = 0.0;
    for (cd d : closure) closureMax = std::max(closureMax, std::abs(d));
    checks.add("closure defect", closureMax, getNum(tol, "closure", 1e-8));

    Json out;
    out["willmore"] = willmoreDirect(forms);
    out["willmoreFromPotential"] = willmoreFromPotential(ext.spinor);
    out["closureDefect"] = Json::array(
        {complexToJson(closure[0]), complexToJson(closure[1]), complexToJson(closure[2])});
    out["isothermicDefect"] = forms.hopf.imag().abs().maxCoeff();
    out["characters"] = {ext.detectedCharacter.eps1, ext.detectedCharacter.eps2};
    if (!outDir.empty()) {
        writeFile(outDir + "/surface.obj", immersionToObj(F));
        out["objFile"] = "surface.obj";
    }
    return out;
}

Json runPotential(const Json& config, CheckList& checks, const std::string& outDir) {
    const GridSpec g = gridFromConfig(config);
    PeriodicField u = potentialFromConfig(config, g);
    checks.addFlag("potential finite", u.values().isFinite().all());
    Json out;
    out["field"] = fieldToJson(u);
    out["l2"] = std::sqrt(std::real(integrateOverDomain(
        PeriodicField(u.grid(), u.values().abs2().cast<cd>()))));
    if (!outDir.empty()) {
        writeFile(outDir + "/potential.csv", fieldToCsv(u));
        out["csvFile"] = "potential.csv";
    }
    return out;
}

Json runSpectrum1d(const Json& config, CheckList& checks, const std::string& outDir) {
    Potential1D u = potential1DFromConfig(config);
    Monodromy1D mono(u);
    const Json tol = section(config, "tolerances");

    std::vector<cd> lambdas;
    const int nGrid = getInt(section(config, "scan"), "lambdaGridSize", 100);
    for (int i = 0; i < nGrid; ++i) {
        const double t = double(i) / std::max(nGrid - 1, 1);
        lambdas.push_back(cd(-2.0 + 4.0 * t, std::sin(3.0 * kPi * t)));
    }
    double detDefect = 0.0;
    for (cd l : lambdas) detDefect = std::max(detDefect, std::abs(mono(l).determinant() - 1.0));
    checks.add("det T = 1 over lambda grid", detDefect, getNum(tol, "det", 1e-10));

    SpectralCurve1D curve =
        branchPoints(mono, regionFromConfig(config, {-2.0, 2.0, -2.0, 2.0}));
    Json out;
    out["detDefect"] = detDefect;
    out["spectralCurve"] = spectralCurveToJson(curve);
    if (!outDir.empty()) {
        writeFile(outDir + "/monodromy.csv", monodromyScanCsv(mono, lambdas));
        out["csvFile"] = "monodromy.csv";
    }
    return out;
}

Json runSpectrum2d(const Json& config, CheckList& checks, const std::string& outDir) {
    const Json scan = section(config, "scan");
    const GridSpec g = gridFromConfig(config, 32, 32);
    PeriodicField u = potentialFromConfig(config, g);
    const int M = getInt(scan, "cutoff", 8);
    DiracPencilFactory factory(u, M);

    ScanSlice slice;
    if (scan.contains("slice")) {
        const Json& s = scan.at("slice");
        if (s.contains("base"))
            slice.base = {complexFromJson(s.at("base").at(0)), complexFromJson(s.at("base").at(1))};
        if (s.contains("direction"))
            slice.direction = {complexFromJson(s.at("direction").at(0)),
                               complexFromJson(s.at("direction").at(1))};
        slice.reLo = getNum(s, "reLo", -1.0);
        slice.reHi = getNum(s, "reHi", 1.0);
        slice.imLo = getNum(s, "imLo", -1.0);
        slice.imHi = getNum(s, "imHi", 1.0);
        slice.nRe = getInt(s, "nRe", 41);
        slice.nIm = getInt(s, "nIm", 41);
    } else {
        // Default: the asymptotic lambda_+ line through the origin.
        slice.base = {};
        slice.direction = {cd(0.0, -1.0) / (2.0 * kPi), cd(1.0, 0.0) / (2.0 * kPi)};
        slice.reLo = -4.0;
        slice.reHi = 4.0;
        slice.imLo = -4.0;
        slice.imHi = 4.0;
    }
    ScanOptions opts;
    opts.relFlagTol = getNum(scan, "relFlagTol", 1e-6);
    opts.absFlagTol = getNum(scan, "absFlagTol", -1.0);
    opts.nSingular = getInt(scan, "nSingular", 1);
    auto samples = spectrumScan(factory, slice, opts);

    const auto flaggedSet = flagged(samples);
    SymmetryReport sym = involutionChecks(factory, samples, opts);
    Json out;
    out["cutoff"] = M;
    out["spectralTailFraction"] = factory.spectralTailFraction();
    out["flaggedCount"] = flaggedSet.size();
    Json fl = Json::array();
    for (const auto* s : flaggedSet)
        fl.push_back({{"k1", complexToJson(s->k.k1)},
                      {"k2", complexToJson(s->k.k2)},
                      {"witness", s->witness},
                      {"mu1", complexToJson(s->mu1)},
                      {"mu2", complexToJson(s->mu2)}});
    out["flaggedZeros"] = std::move(fl);
    out["symmetryResiduals"] = {{"holomorphic", sym.holomorphicMax},
                                {"antiholomorphic", sym.antiholomorphicMax},
                                {"dualShift", sym.dualShiftMax}};
    checks.addFlag("witness values finite", std::isfinite(sym.dualShiftMax));

    if (scan.contains("fitRadii")) {
        FitOptions fopts;
        fopts.radii.clear();
        for (const Json& r : scan.at("fitRadii")) fopts.radii.push_back(r.get<double>());
        AsymptoticExpansion fit = extractC1(factory, u, fopts);
        out["C1"] = complexToJson(fit.c1);
        out["willmoreFromC1"] = fit.willmoreFromC1;
        out["willmoreDirect"] = fit.willmoreDirect;
        out["fitResidual"] = fit.fitResidual;
        out["fitReliable"] = fit.reliable;
        checks.addFlag("asymptotic fit reliable", fit.reliable);
    }
    if (!outDir.empty()) {
        writeFile(outDir + "/scan.csv", spectrumScanCsv(samples));
        out["csvFile"] = "scan.csv";
    }
    return out;
}

Json runWillmore(const Json& config, CheckList& checks) {
    Json cfg = config;
    if (!cfg.contains("surface")) cfg["surface"] = {{"type", "clifford-projected"}};
    const GridSpec g = gridFromConfig(cfg, 256, 256);
    ImmersionR3 F = surfaceFromConfig(cfg, g);
    SurfaceData forms = fundamentalForms(F);
    SpinorExtraction ext = spinorFromSurface(F);
    const double direct = willmoreDirect(forms);
    const double fromPot = willmoreFromPotential(ext.spinor);
    const Json tol = section(cfg, "tolerances");
    checks.add("willmore route agreement", std::abs(direct - fromPot),
               getNum(tol, "willmoreAgreement", 1e-6) * (1.0 + direct));
    Json out;
    out["willmore"] = direct;
    out["willmoreFromPotential"] = fromPot;
    const std::string type = getStr(section(cfg, "surface"), "type", "clifford-projected");
    if (type == "clifford-projected") {
        const double target = 2.0 * kPi * kPi;
        checks.add("clifford value 2 pi^2", std::abs(direct - target),
                   getNum(tol, "cliffordWillmore", 1e-6));
        out["target"] = target;
    }
    return out;
}

Json runKruskal(const Json& config, CheckList& checks) {
    const Json s = section(config, "surface");
    RevolutionTorus torus = torusFromConfig(s);
    const GridSpec g = gridFromConfig(config, 128, 16);
    const int count = getInt(section(config, "scan"), "kruskalCount", 3);
    Theorem8Report rep = theorem8Check(torus, g.n1, std::max(g.n2, 16), count);
    const Json tol = section(config, "tolerances");
    for (int l = 0; l < count; ++l)
        checks.add("theorem 8 invariant K" + std::to_string(l + 1),
                   rep.relativeDifference[l], getNum(tol, "kruskalAgreement", 1e-6));
    checks.add("K1 equals Willmore", rep.k1VsWillmore / (1.0 + rep.willmore),
               getNum(tol, "kruskalWillmore", 1e-6));
    Json out;
    out["willmore"] = rep.willmore;
    out["K"] = Json::array();
    out["KDual"] = Json::array();
    for (int l = 0; l < count; ++l) {
        out["K"].push_back(complexToJson(rep.kPotential[l]));
        out["KDual"].push_back(complexToJson(rep.kDualPotential[l]));
    }
    out["potentialYVariation"] = rep.potentialYVariation;
    return out;
}

Json runDual(const Json& config, CheckList& checks, const std::string& outDir) {
    const GridSpec g = gridFromConfig(config, 128, 64);
    ImmersionR3 F = surfaceFromConfig(config, g);
    SurfaceData forms = fundamentalForms(F);
    ImmersionR3 dual = dualIsothermic(F);
    SurfaceData dualForms = fundamentalForms(dual);
    const Json tol = section(config, "tolerances");

    double normalFlip = 0.0;
    for (int i = 0; i < 3; ++i)
        normalFlip = std::max(normalFlip, (forms.normal[i] + dualForms.normal[i]).abs().maxCoeff());
    checks.add("antipodal gauss maps", normalFlip, getNum(tol, "dualNormal", 1e-8));

    ImmersionR3 doubleDual = dualIsothermic(dual);
    double ddDefect = 0.0;
    Vec3 shift = doubleDual.position(0, 0) - F.position(0, 0);
    for (int j = 0; j < g.n1; ++j)
        for (int k = 0; k < g.n2; ++k)
            ddDefect = std::max(ddDefect,
                                (doubleDual.position(j, k) - F.position(j, k) - shift).norm());
    checks.add("double dual is a translate", ddDefect, getNum(tol, "doubleDual", 1e-7));

    // U = (k1+k2) e^alpha/4 and U* = (k2-k1) e^alpha/4 in the isothermic frame.
    const Grid2r uFromCurv =
        (0.5 * forms.meanCurv * forms.expAlpha);  // (k1+k2) e^alpha / 4
    const Grid2r uStar = -(forms.hopf.real() / forms.expAlpha);
    SpinorExtraction dualExt = spinorFromSurface(dual);
    const Grid2r uStarDirect = dualExt.spinor.potentialU.values().real();
    checks.add("dual potential identity", (uStar - uStarDirect).abs().maxCoeff(),
               getNum(tol, "dualPotential", 1e-8));

    Json out;
    out["metricInversionDefect"] =
        (dualForms.expTwoAlpha * forms.expTwoAlpha - 1.0).abs().maxCoeff();
    out["dualWillmore"] = willmoreDirect(dualForms);
    out["uMax"] = uFromCurv.abs().maxCoeff();
    out["uStarMax"] = uStar.abs().maxCoeff();
    if (!outDir.empty()) {
        writeFile(outDir + "/dual.obj", immersionToObj(dual));
        out["objFile"] = "dual.obj";
    }
    return out;
}

Json runCmcCurve(const Json& config, CheckList& checks) {
    const Json scan = section(config, "scan");
    const double amplitude = getNum(scan, "amplitude", 0.8);
    const int n = getInt(section(config, "grid"), "n1", 64);
    PendulumSolution sol = solveSinhGordonPendulum(amplitude, n);
    FundamentalGrid grid(Lattice(sol.period, cd(0.0, 1.0)), n, 8);
    Grid2c u2(n, 8);
    for (int j = 0; j < n; ++j) u2.row(j).setConstant(sol.u[j]);
    SinhGordonField sg = makeSinhGordonField(PeriodicField(grid, u2));
    const Json tol = section(config, "tolerances");
    checks.add("sinh-gordon residual", sg.residual, getNum(tol, "sinhGordon", 1e-8));

    std::vector<cd> lambdas = {cd(1.0, 0.0), cd(0.0, 1.0), cd(2.0, 0.0), cd(0.5, 0.0)};
    Json samples = Json::array();
    double resLo = 1e300, resHi = 0.0, invMax = 0.0;
    Potential1D uProfile(sol.u, sol.period);
    for (cd l : lambdas) {
        LaxConnection c = cmcZccConnection(sg.u, l);
        const double res = zeroCurvatureResidual(c);
        resLo = std::min(resLo, res);
        resHi = std::max(resHi, res);
        Eigen::Matrix2cd mono = cmcMonodromy(uProfile, l);
        Eigen::Matrix2cd monoNeg = cmcMonodromy(uProfile, -l);
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> e1(mono), e2(monoNeg);
        const double inv = eigenvalueSetDistance(
            {e1.eigenvalues()[0], e1.eigenvalues()[1]},
            {e2.eigenvalues()[0], e2.eigenvalues()[1]});
        invMax = std::max(invMax, inv);
        samples.push_back({{"lambda", complexToJson(l)},
                           {"eigenvalues", Json::array({complexToJson(e1.eigenvalues()[0]),
                                                        complexToJson(e1.eigenvalues()[1])})},
                           {"residuals", res}});
    }
    checks.add("zero-curvature residual", resHi, getNum(tol, "zeroCurvature", 1e-8));
    checks.add("lambda independence", resHi - resLo, getNum(tol, "lambdaIndependence", 1e-9));
    checks.add("sigma involution", invMax, getNum(tol, "sigmaInvolution", 1e-9));

    Json out;
    out["lambdaSamples"] = std::move(samples);
    out["involutionResidual"] = invMax;
    out["codazziResidual"] = sg.residual;
    out["period"] = sol.period;
    return out;
}

IsothermicProfiles revolutionProfiles(const RevolutionTorus& torus, int n) {
    const double T = torus.conformalPeriod();
    Eigen::VectorXd alpha(n), k1(n), k2(n);
    for (int j = 0; j < n; ++j) {
        const double x = T * j / n;
        alpha[j] = std::log(torus.expAlpha(x));
        k1[j] = torus.curvatureMeridian();
        k2[j] = torus.curvatureParallel(x);
    }
    return {Potential1D(alpha, T), Potential1D(k1, T), Potential1D(k2, T)};
}

Json runIsothermicPencil(const Json& config, CheckList& checks) {
    const Json s = section(config, "surface");
    RevolutionTorus torus = torusFromConfig(s);
    const GridSpec g = gridFromConfig(config, 64, 8);
    const double T = torus.conformalPeriod();
    FundamentalGrid grid(Lattice(T, cd(0.0, 2.0 * kPi)), g.n1, std::max(g.n2, 8));

    auto lineField = [&](auto fn) {
        Grid2c v(grid.n1(), grid.n2());
        for (int j = 0; j < grid.n1(); ++j) v.row(j).setConstant(fn(T * j / grid.n1()));
        return PeriodicField(grid, v);
    };
    IsothermicData data{lineField([&](double x) { return std::log(torus.expAlpha(x)); }),
                        lineField([&](double) { return torus.curvatureMeridian(); }),
                        lineField([&](double x) { return torus.curvatureParallel(x); })};
    const auto [c1, c2] = data.codazziResiduals();
    const Json tol = section(config, "tolerances");
    checks.add("isothermic codazzi", std::max(c1, c2), getNum(tol, "codazzi", 1e-7));

    std::vector<cd> lambdas = {cd(0.5, 0.0), cd(1.0, 0.0), cd(0.0, 2.0)};
    double resMax = 0.0, invMax = 0.0;
    Json samples = Json::array();
    IsothermicProfiles profiles = revolutionProfiles(torus, g.n1);
    for (cd l : lambdas) {
        LaxConnection c = isothermicPencil(data, l);
        const double res = zeroCurvatureResidual(c);
        resMax = std::max(resMax, res);
        Monodromy4x4 mono = isothermicMonodromy(profiles, l);
        Monodromy4x4 monoNeg = isothermicMonodromy(profiles, -l);
        invMax = std::max(invMax, eigenvalueSetDistance(mono.eigenvalues(), monoNeg.eigenvalues()));
        Json eig = Json::array();
        for (cd e : mono.eigenvalues()) eig.push_back(complexToJson(e));
        samples.push_back(
            {{"lambda", complexToJson(l)}, {"eigenvalues", eig}, {"residuals", res}});
    }
    checks.add("zero-curvature residual", resMax, getNum(tol, "zeroCurvature", 1e-8));
    checks.add("sigma involution", invMax, getNum(tol, "sigmaInvolution", 1e-9));

    DiracPairExtraction pair = extractDiracPair(profiles, cd(0.7, 0.3), g.n1);
    checks.add("dirac extraction residual",
               std::max(pair.diracResidual, pair.diracResidualStar),
               getNum(tol, "extraction", 1e-7));
    checks.add("multiplier agreement",
               std::max(std::abs(pair.multiplierPsi - pair.multiplierPhi),
                        std::abs(pair.multiplierPsiStar - pair.multiplierPhi)),
               getNum(tol, "multiplier", 1e-9) * (1.0 + std::abs(pair.multiplierPhi)));

    Json out;
    out["lambdaSamples"] = std::move(samples);
    out["involutionResidual"] = invMax;
    out["codazziResidual"] = std::max(c1, c2);
    out["extractionResiduals"] = {pair.diracResidual, pair.diracResidualStar};
    return out;
}

Json runS3Spectrum(const Json& config, CheckList& checks) {
    const GridSpec g = gridFromConfig(config, 64, 64);
    SU2Immersion f = cliffordTorus(g.n1, g.n2);
    SphereSpinor s = spinorFromS3(f);
    const Json tol = section(config, "tolerances");
    const auto [harm1, harm2] = harmonicityResiduals(f);
    checks.add("harmonicity", std::max(harm1, harm2), getNum(tol, "harmonicity", 1e-8));

    Json out;
    Json samples = Json::array();
    // Closed-form multiplier map samples, compared against the 1D data of the
    // stereographic projection (reported, not asserted: the identification is
    // open in general).
    RevolutionTorus proj = cliffordShapeTorus();
    const double T = proj.conformalPeriod();
    const int n = 128;
    Eigen::VectorXd uLine(n);
    for (int j = 0; j < n; ++j) uLine[j] = proj.potentialU(T * j / n);
    Monodromy1D mono(Potential1D{uLine, T});
    double worstMismatch = 0.0;
    for (double t : {0.30, 0.55, 0.80, 1.05}) {
        const cd nu(t, 0.17 * t);
        const auto [mu1, mu2] = cliffordSpectrumMap(nu);
        // Match the y-multiplier, read off the ZS eigenvalues at that lambda.
        const cd lambda = kI * (nu + 1.0 / (8.0 * nu));
        const auto [z1, z2] = floquetMultipliers1D(mono, lambda);
        const double mismatch =
            std::min({std::abs(mu1 - z1), std::abs(mu1 + z1), std::abs(mu1 - z2),
                      std::abs(mu1 + z2)}) /
            (1.0 + std::abs(mu1));
        worstMismatch = std::max(worstMismatch, mismatch);
        samples.push_back({{"nu", complexToJson(nu)},
                           {"mu", Json::array({complexToJson(mu1), complexToJson(mu2)})},
                           {"zsMultipliers",
                            Json::array({complexToJson(z1), complexToJson(z2)})},
                           {"relativeMismatch", mismatch}});
    }
    out["cliffordMapSamples"] = std::move(samples);
    out["projectionComparisonMaxMismatch"] = worstMismatch;
    out["comparisonAsserted"] = false;

    Theorem10Report t10 = theorem10Gauge(f, s, cd(1.0, 0.0));
    checks.add("gauge identity Psi", t10.gaugeResidualPsi, getNum(tol, "gauge", 1e-9));
    checks.add("gauge identity Psi*", t10.gaugeResidualPsiStar, getNum(tol, "gauge", 1e-9));
    checks.add("gauged dirac residual", t10.diracResidual, getNum(tol, "gaugedDirac", 1e-8));
    out["theorem10"] = {{"gaugeResiduals",
                         Json::array({t10.gaugeResidualPsi, t10.gaugeResidualPsiStar})},
                        {"diracResidual", t10.diracResidual},
                        {"characterSign", t10.characterSign},
                        {"multiplierDefect", t10.multiplierDefect}};
    return out;
}

Json runMoebius(const Json& config, CheckList& checks) {
    const GridSpec g = gridFromConfig(config, 128, 64);
    const Json s = section(config, "surface");
    RevolutionTorus torus = torusFromConfig(s);
    ImmersionR3 F = torus.immersion(g.n1, g.n2);
    MoebiusMap map = moebiusFromConfig(config);
    const Json tol = section(config, "tolerances");

    const auto [density, footnote] = blaschkeDensityInvariance(F, map);
    checks.add("blaschke density invariance", density, getNum(tol, "blaschke", 1e-6));

    Theorem11Report rep =
        theorem11Check(F, map, regionFromConfig(config, {-1.5, 1.5, -1.5, 1.5}));
    checks.add("theorem 11 potential defect", rep.potentialDefect,
               getNum(tol, "theorem11", 1e-6));
    checks.add("willmore invariance",
               std::abs(rep.willmoreOriginal - rep.willmoreImage) / (1.0 + rep.willmoreOriginal),
               getNum(tol, "willmoreInvariance", 1e-5));
    checks.add("branch point agreement", rep.branchPointDistance,
               getNum(tol, "branchPoints", 1e-5));
    for (size_t l = 0; l < rep.kRelativeDifference.size(); ++l)
        checks.add("kruskal K" + std::to_string(l + 1) + " agreement",
                   rep.kRelativeDifference[l], getNum(tol, "kruskalAgreement", 1e-5));

    Json out;
    out["theorem11Defect"] = rep.potentialDefect;
    out["dominantSign"] = rep.dominantSign;
    out["willmore"] = {{"original", rep.willmoreOriginal}, {"image", rep.willmoreImage}};
    out["blaschkeDensityDefect"] = density;
    out["hopfDensityFootnoteDefect"] = footnote;
    Json bp = Json::array();
    for (cd z : rep.branchPointsImage) bp.push_back(complexToJson(z));
    out["spectraComparison"] = {{"branchPointDistance", rep.branchPointDistance},
                                {"imageBranchPoints", bp},
                                {"kRelativeDifference", rep.kRelativeDifference}};
    return out;
}

Json runVerify(const Json& config, CheckList& checks, const std::string& outDir) {
    Json out;
    Json sub = Json::object();
    // A reduced-size pass through every module's hard checks.
    Json cfg = config;
    if (!cfg.contains("grid")) cfg["grid"] = {{"n1", 64}, {"n2", 64}};
    sub["clifford"] = runClifford(cfg, checks);
    Json revolveCfg = cfg;
    revolveCfg["surface"] = {{"type", "revolution"}, {"R", 2.0}, {"r", 1.0}};
    sub["revolve"] = runRevolve(revolveCfg, checks, outDir);
    Json willCfg = revolveCfg;
    willCfg["grid"] = {{"n1", 128}, {"n2", 128}};
    willCfg["surface"] = {{"type", "clifford-projected"}};
    willCfg["tolerances"] = {{"cliffordWillmore", 1e-4}};
    sub["willmore"] = runWillmore(willCfg, checks);
    Json kruskalCfg = revolveCfg;
    kruskalCfg["grid"] = {{"n1", 256}, {"n2", 16}};
    sub["kruskal"] = runKruskal(kruskalCfg, checks);
    sub["dual"] = runDual(revolveCfg, checks, "");
    sub["cmc-curve"] = runCmcCurve(cfg, checks);
    Json isoCfg = revolveCfg;
    isoCfg["grid"] = {{"n1", 64}, {"n2", 8}};
    sub["isothermic-pencil"] = runIsothermicPencil(isoCfg, checks);
    Json s3Cfg = cfg;
    s3Cfg["grid"] = {{"n1", 64}, {"n2", 64}};
    sub["s3-spectrum"] = runS3Spectrum(s3Cfg, checks);
    out["subreports"] = std::move(sub);

    Json failures = Json::array();
    for (const auto& e : checks.entries)
        if (!e.at("passed").get<bool>()) failures.push_back(e);
    out["failures"] = failures;
    return out;
}

}  // namespace

void applyOverride(Json& config, const std::string& keyValue) {
    const auto eq = keyValue.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override must look like key.path=value: " + keyValue);
    const std::string path = keyValue.substr(0, eq);
    const std::string value = keyValue.substr(eq + 1);
    Json* node = &config;
    size_t start = 0;
    while (true) {
        const size_t dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
        if (dot == std::string::npos) {
            Json parsed = Json::parse(value, nullptr, false);
            (*node)[key] = parsed.is_discarded() ? Json(value) : parsed;
            return;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

RunResult runSubcommand(const std::string& name, Json config, const std::string& outDir) {
    RunResult result;
    CheckList checks;
    Json body;
    try {
        if (!outDir.empty()) fs::create_directories(outDir);
        if (name == "clifford")
            body = runClifford(config, checks);
        else if (name == "revolve")
            body = runRevolve(config, checks, outDir);
        else if (name == "potential")
            body = runPotential(config, checks, outDir);
        else if (name == "spectrum1d")
            body = runSpectrum1d(config, checks, outDir);
        else if (name == "spectrum2d")
            body = runSpectrum2d(config, checks, outDir);
        else if (name == "willmore")
            body = runWillmore(config, checks);
        else if (name == "kruskal")
            body = runKruskal(config, checks);
        else if (name == "dual")
            body = runDual(config, checks, outDir);
        else if (name == "cmc-curve")
            body = runCmcCurve(config, checks);
        else if (name == "isothermic-pencil")
            body = runIsothermicPencil(config, checks);
        else if (name == "s3-spectrum")
            body = runS3Spectrum(config, checks);
        else if (name == "moebius")
            body = runMoebius(config, checks);
        else if (name == "verify")
            body = runVerify(config, checks, outDir);
        else
            throw ConfigError("unknown subcommand: " + name);
    } catch (const ConfigError& e) {
        result.exitCode = 1;
        result.report = {{"error", e.what()}, {"kind", "config"}};
        return result;
    } catch (const std::invalid_argument& e) {
        result.exitCode = 1;
        result.report = {{"error", e.what()}, {"kind", "config"}};
        return result;
    } catch (const std::exception& e) {
        result.exitCode = 2;
        result.report = {{"error", e.what()}, {"kind", "numerical"}};
        return result;
    }
    result.report["subcommand"] = name;
    result.report["config"] = config;
    result.report["checks"] = checks.entries;
    result.report["result"] = body;
    result.exitCode = checks.allPassed ? 0 : 3;
    if (!outDir.empty())
        writeFile(outDir + "/report.json", result.report.dump(2) + "\n");
    return result;
}

}  // namespace spectori
