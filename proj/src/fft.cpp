#include "symtfa/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace symtfa {

namespace {

// FFTW planning is not thread-safe; execution with new arrays is.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> a(n), b(n);
        fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()),
                                       sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw planning failed");
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& kv : plans_) fftw_destroy_plan(kv.second);
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

void check_pow2(int n) {
    if (n < 4 || (n & (n - 1)) != 0) throw std::invalid_argument("DFT length must be a power of two");
}

// (-1)^k ramps realize the centered-grid phase because N/2 is even for N >= 4.
void alternate(cplx* a, int n) {
    for (int i = 1; i < n; i += 2) a[i] = -a[i];
}

void ct_line(cplx* line, int n, double scale, int sign, std::vector<cplx>& scratch) {
    alternate(line, n);
    dft(line, scratch.data(), n, sign);
    for (int k = 0; k < n; ++k) line[k] = scratch[k] * scale;
    alternate(line, n);
}

void ct_axis(std::vector<cplx>& a, int n, int axis, double scale, int sign) {
    if (a.size() != static_cast<size_t>(n) * n) throw std::invalid_argument("array is not n x n");
    std::vector<cplx> line(n), scratch(n);
    for (int r = 0; r < n; ++r) {
        if (axis == 1) {
            ct_line(a.data() + static_cast<size_t>(r) * n, n, scale, sign, scratch);
        } else {
            for (int i = 0; i < n; ++i) line[i] = a[static_cast<size_t>(i) * n + r];
            ct_line(line.data(), n, scale, sign, scratch);
            for (int i = 0; i < n; ++i) a[static_cast<size_t>(i) * n + r] = line[i];
        }
    }
}

}  // namespace

void dft(const cplx* in, cplx* out, int n, int sign) {
    check_pow2(n);
    fftw_plan p = PlanCache::instance().get(n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

std::vector<cplx> ct_forward(const std::vector<cplx>& f, double h) {
    const int n = static_cast<int>(f.size());
    check_pow2(n);
    std::vector<cplx> line = f, scratch(n);
    ct_line(line.data(), n, h, -1, scratch);
    return line;
}

std::vector<cplx> ct_inverse(const std::vector<cplx>& F, double hd) {
    const int n = static_cast<int>(F.size());
    check_pow2(n);
    std::vector<cplx> line = F, scratch(n);
    ct_line(line.data(), n, hd, +1, scratch);
    return line;
}

void ct_forward_axis(std::vector<cplx>& a, int n, int axis, double h) { ct_axis(a, n, axis, h, -1); }

void ct_inverse_axis(std::vector<cplx>& a, int n, int axis, double hd) { ct_axis(a, n, axis, hd, +1); }

}  // namespace symtfa
