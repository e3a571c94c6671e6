#ifndef SPECTORI_IO_HPP
#define SPECTORI_IO_HPP

#include "spectori/branch2d.hpp"
#include "spectori/immersion.hpp"
#include "spectori/spectral_curve.hpp"

#include <json.hpp>

#include <string>

namespace spectori {

using Json = nlohmann::ordered_json;

// {lattice:{gamma1:[re,im],gamma2:[re,im]}, n1, n2, character:[+-1,+-1],
//  values:[[re,im],...] row-major}
Json fieldToJson(const PeriodicField& f);
PeriodicField fieldFromJson(const Json& j);

// Sample-grid CSV with columns s,t,x,y,re,im.
std::string fieldToCsv(const PeriodicField& f);

// lambda_re,lambda_im,trace_re,trace_im,mu1_re,mu1_im,mu2_re,mu2_im
std::string monodromyScanCsv(const Monodromy1D& m, const std::vector<cd>& lambdas);

// k1_re,k1_im,k2_re,k2_im,witness,mu1_re,mu1_im,mu2_re,mu2_im
std::string spectrumScanCsv(const std::vector<SpectrumSample>& samples);

Json spectralCurveToJson(const SpectralCurve1D& curve);

// Vertices in grid order, quad faces with periodic wrap, y-up right-handed.
std::string immersionToObj(const ImmersionR3& F);

Json complexToJson(cd z);
cd complexFromJson(const Json& j);

void writeFile(const std::string& path, const std::string& contents);
std::string readFile(const std::string& path);

}  // namespace spectori

#endif
