#include "spectori/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spectori {
namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Json complexToJson(cd z) { return Json::array({std::real(z), std::imag(z)}); }

cd complexFromJson(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

Json fieldToJson(const PeriodicField& f) {
    Json j;
    j["lattice"]["gamma1"] = complexToJson(f.grid().lattice().gamma1());
    j["lattice"]["gamma2"] = complexToJson(f.grid().lattice().gamma2());
    j["n1"] = f.n1();
    j["n2"] = f.n2();
    j["character"] = {f.character().eps1, f.character().eps2};
    Json values = Json::array();
    for (int r = 0; r < f.n1(); ++r)
        for (int c = 0; c < f.n2(); ++c) values.push_back(complexToJson(f(r, c)));
    j["values"] = std::move(values);
    return j;
}

PeriodicField fieldFromJson(const Json& j) {
    const Lattice lat(complexFromJson(j.at("lattice").at("gamma1")),
                      complexFromJson(j.at("lattice").at("gamma2")));
    const int n1 = j.at("n1").get<int>(), n2 = j.at("n2").get<int>();
    FundamentalGrid grid(lat, n1, n2);
    Character chi{j.at("character").at(0).get<int>(), j.at("character").at(1).get<int>()};
    const auto& values = j.at("values");
    if (int(values.size()) != n1 * n2)
        throw std::invalid_argument("fieldFromJson: values size does not match the grid");
    Grid2c v(n1, n2);
    int i = 0;
    for (int r = 0; r < n1; ++r)
        for (int c = 0; c < n2; ++c) v(r, c) = complexFromJson(values.at(i++));
    return PeriodicField(grid, std::move(v), chi);
}

std::string fieldToCsv(const PeriodicField& f) {
    std::ostringstream out;
    out << "s,t,x,y,re,im\n";
    for (int j = 0; j < f.n1(); ++j)
        for (int k = 0; k < f.n2(); ++k) {
            const double s = double(j) / f.n1(), t = double(k) / f.n2();
            const cd z = f.grid().point(j, k);
            out << num(s) << ',' << num(t) << ',' << num(std::real(z)) << ','
                << num(std::imag(z)) << ',' << num(std::real(f(j, k))) << ','
                << num(std::imag(f(j, k))) << '\n';
        }
    return out.str();
}

std::string monodromyScanCsv(const Monodromy1D& m, const std::vector<cd>& lambdas) {
    std::ostringstream out;
    out << "lambda_re,lambda_im,trace_re,trace_im,mu1_re,mu1_im,mu2_re,mu2_im\n";
    for (cd l : lambdas) {
        const Eigen::Matrix2cd t = m(l);
        const auto [m1, m2] = floquetMultipliers1D(t);
        const cd tr = t.trace();
        out << num(std::real(l)) << ',' << num(std::imag(l)) << ',' << num(std::real(tr)) << ','
            << num(std::imag(tr)) << ',' << num(std::real(m1)) << ',' << num(std::imag(m1)) << ','
            << num(std::real(m2)) << ',' << num(std::imag(m2)) << '\n';
    }
    return out.str();
}

std::string spectrumScanCsv(const std::vector<SpectrumSample>& samples) {
    std::ostringstream out;
    out << "k1_re,k1_im,k2_re,k2_im,witness,mu1_re,mu1_im,mu2_re,mu2_im\n";
    for (const auto& s : samples) {
        out << num(std::real(s.k.k1)) << ',' << num(std::imag(s.k.k1)) << ','
            << num(std::real(s.k.k2)) << ',' << num(std::imag(s.k.k2)) << ',' << num(s.witness)
            << ',' << num(std::real(s.mu1)) << ',' << num(std::imag(s.mu1)) << ','
            << num(std::real(s.mu2)) << ',' << num(std::imag(s.mu2)) << '\n';
    }
    return out.str();
}

Json spectralCurveToJson(const SpectralCurve1D& curve) {
    Json j;
    j["branchPoints"] = Json::array();
    for (cd z : curve.branchPoints) j["branchPoints"].push_back(complexToJson(z));
    j["resonancePoints"] = Json::array();
    for (cd z : curve.resonancePoints) j["resonancePoints"].push_back(complexToJson(z));
    if (curve.genusEstimate >= 0)
        j["genusEstimate"] = curve.genusEstimate;
    else
        j["genusEstimate"] = "exceeds search region";
    j["searchRegion"] = {{"reLo", curve.region.reLo},
                         {"reHi", curve.region.reHi},
                         {"imLo", curve.region.imLo},
                         {"imHi", curve.region.imHi}};
    j["complete"] = curve.complete;
    j["evaluations"] = curve.evaluations;
    return j;
}

std::string immersionToObj(const ImmersionR3& F) {
    const int n1 = F.grid.n1(), n2 = F.grid.n2();
    std::ostringstream out;
    out << "# spectral-tori torus export, " << n1 << "x" << n2 << " periodic grid\n";
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) {
            const Vec3 p = F.position(j, k);
            // y-up: swap into (x, z, y) with a handedness-preserving flip.
            out << "v " << num(p[0]) << ' ' << num(p[2]) << ' ' << num(-p[1]) << '\n';
        }
    auto vid = [&](int j, int k) { return ((j % n1) * n2 + (k % n2)) + 1; };
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k)
            out << "f " << vid(j, k) << ' ' << vid(j + 1, k) << ' ' << vid(j + 1, k + 1) << ' '
                << vid(j, k + 1) << '\n';
    return out.str();
}

void writeFile(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("writeFile: cannot open " + path);
    out << contents;
    if (!out) throw std::runtime_error("writeFile: short write to " + path);
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("readFile: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace spectori
