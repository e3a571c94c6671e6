#include "spectori/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace spectori {
namespace {

std::mutex& plannerMutex() {
    static std::mutex m;
    return m;
}

struct PlanKey {
    int n0, n1, sign;
    bool operator==(const PlanKey& o) const { return n0 == o.n0 && n1 == o.n1 && sign == o.sign; }
};
struct PlanKeyHash {
    size_t operator()(const PlanKey& k) const {
        return std::hash<long long>()(((long long)k.n0 << 24) ^ ((long long)k.n1 << 2) ^ (k.sign > 0));
    }
};

// One scratch workspace per thread; FFTW plan creation is serialized.
struct Workspace {
    std::unordered_map<PlanKey, fftw_plan, PlanKeyHash> plans;
    std::vector<cd> buf;

    ~Workspace() {
        std::lock_guard<std::mutex> lock(plannerMutex());
        for (auto& [k, p] : plans) fftw_destroy_plan(p);
    }

    fftw_plan plan(int n0, int n1, int sign) {
        PlanKey key{n0, n1, sign};
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        buf.resize(std::max<size_t>(buf.size(), size_t(n0) * n1));
        std::lock_guard<std::mutex> lock(plannerMutex());
        fftw_plan p;
        auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        if (n1 == 1)
            p = fftw_plan_dft_1d(n0, raw, raw, sign, flags);
        else
            p = fftw_plan_dft_2d(n0, n1, raw, raw, sign, flags);
        plans.emplace(key, p);
        return p;
    }
};

Workspace& workspace() {
    static thread_local Workspace ws;
    return ws;
}

void execute(int n0, int n1, int sign, std::vector<cd>& data) {
    auto& ws = workspace();
    fftw_plan p = ws.plan(n0, n1, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
}

}  // namespace

Grid2c fft2Forward(const Grid2c& values) {
    const int n1 = int(values.rows()), n2 = int(values.cols());
    std::vector<cd> data(size_t(n1) * n2);
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) data[size_t(j) * n2 + k] = values(j, k);
    execute(n1, n2, FFTW_FORWARD, data);
    Grid2c out(n1, n2);
    const double scale = 1.0 / (double(n1) * n2);
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) out(j, k) = data[size_t(j) * n2 + k] * scale;
    return out;
}

Grid2c fft2Inverse(const Grid2c& coeffs) {
    const int n1 = int(coeffs.rows()), n2 = int(coeffs.cols());
    std::vector<cd> data(size_t(n1) * n2);
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) data[size_t(j) * n2 + k] = coeffs(j, k);
    execute(n1, n2, FFTW_BACKWARD, data);
    Grid2c out(n1, n2);
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) out(j, k) = data[size_t(j) * n2 + k];
    return out;
}

Eigen::VectorXcd fft1Forward(const Eigen::VectorXcd& values) {
    const int n = int(values.size());
    std::vector<cd> data(values.data(), values.data() + n);
    execute(n, 1, FFTW_FORWARD, data);
    Eigen::VectorXcd out(n);
    for (int j = 0; j < n; ++j) out[j] = data[j] / double(n);
    return out;
}

Eigen::VectorXcd fft1Inverse(const Eigen::VectorXcd& coeffs) {
    const int n = int(coeffs.size());
    std::vector<cd> data(coeffs.data(), coeffs.data() + n);
    execute(n, 1, FFTW_BACKWARD, data);
    return Eigen::Map<Eigen::VectorXcd>(data.data(), n);
}

}  // namespace spectori
