#include "gapfill/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace gapfill {
namespace {

enum Kind { c2c_fwd, c2c_bwd, r2c, c2r };

struct Plan {
    fftw_plan plan = nullptr;
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
    std::size_t rsize = 0, csize = 0;
};

std::mutex plan_mutex;

std::map<std::tuple<std::size_t, std::size_t, int>, Plan>& plan_cache() {
    static std::map<std::tuple<std::size_t, std::size_t, int>, Plan> cache;
    return cache;
}

// Plans are created on FFTW-allocated buffers and executed through the
// new-array interface; callers' arrays with a different SIMD alignment go
// through the plan buffers instead.
const Plan& get_plan(std::size_t m1, std::size_t m2, Kind kind) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(m1, m2, static_cast<int>(kind));
    auto& cache = plan_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Plan p;
    const int a = static_cast<int>(m1), b = static_cast<int>(m2);
    switch (kind) {
        case c2c_fwd:
        case c2c_bwd: {
            p.csize = m1 * m2;
            p.cbuf = fftw_alloc_complex(p.csize);
            const int dir = kind == c2c_fwd ? FFTW_FORWARD : FFTW_BACKWARD;
            p.plan = fftw_plan_dft_2d(a, b, p.cbuf, p.cbuf, dir, FFTW_ESTIMATE);
            break;
        }
        case r2c:
            p.rsize = m1 * m2;
            p.csize = m1 * (m2 / 2 + 1);
            p.rbuf = fftw_alloc_real(p.rsize);
            p.cbuf = fftw_alloc_complex(p.csize);
            p.plan = fftw_plan_dft_r2c_2d(a, b, p.rbuf, p.cbuf, FFTW_ESTIMATE);
            break;
        case c2r:
            p.rsize = m1 * m2;
            p.csize = m1 * (m2 / 2 + 1);
            p.rbuf = fftw_alloc_real(p.rsize);
            p.cbuf = fftw_alloc_complex(p.csize);
            p.plan = fftw_plan_dft_c2r_2d(a, b, p.cbuf, p.rbuf, FFTW_ESTIMATE);
            break;
    }
    return cache.emplace(key, p).first->second;
}

bool aligned_like(const void* p, const void* ref) {
    return fftw_alignment_of(const_cast<double*>(static_cast<const double*>(p))) ==
           fftw_alignment_of(const_cast<double*>(static_cast<const double*>(ref)));
}

}  // namespace

void fft2_inplace(cplx* data, std::size_t m1, std::size_t m2, int sign) {
    if (m1 * m2 <= 1) return;
    const Plan& p = get_plan(m1, m2, sign < 0 ? c2c_fwd : c2c_bwd);
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    if (aligned_like(data, p.cbuf)) {
        fftw_execute_dft(p.plan, buf, buf);
        return;
    }
    std::lock_guard<std::mutex> lock(plan_mutex);
    std::memcpy(static_cast<void*>(p.cbuf), static_cast<const void*>(data), p.csize * sizeof(cplx));
    fftw_execute(p.plan);
    std::memcpy(static_cast<void*>(data), static_cast<const void*>(p.cbuf), p.csize * sizeof(cplx));
}

void fft1_inplace(cplx* data, std::size_t m, int sign) { fft2_inplace(data, 1, m, sign); }

void r2c_2d(const double* in, cplx* half, std::size_t m1, std::size_t m2) {
    if (m1 * m2 == 1) {
        half[0] = in[0];
        return;
    }
    const Plan& p = get_plan(m1, m2, r2c);
    if (aligned_like(in, p.rbuf) && aligned_like(half, p.cbuf)) {
        fftw_execute_dft_r2c(p.plan, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(half));
        return;
    }
    std::lock_guard<std::mutex> lock(plan_mutex);
    std::memcpy(p.rbuf, in, p.rsize * sizeof(double));
    fftw_execute(p.plan);
    std::memcpy(static_cast<void*>(half), static_cast<const void*>(p.cbuf), p.csize * sizeof(cplx));
}

void c2r_2d(cplx* half, double* out, std::size_t m1, std::size_t m2) {
    if (m1 * m2 == 1) {
        out[0] = half[0].real();
        return;
    }
    const Plan& p = get_plan(m1, m2, c2r);
    if (aligned_like(half, p.cbuf) && aligned_like(out, p.rbuf)) {
        fftw_execute_dft_c2r(p.plan, reinterpret_cast<fftw_complex*>(half), out);
        return;
    }
    std::lock_guard<std::mutex> lock(plan_mutex);
    std::memcpy(static_cast<void*>(p.cbuf), static_cast<const void*>(half), p.csize * sizeof(cplx));
    fftw_execute(p.plan);
    std::memcpy(out, p.rbuf, p.rsize * sizeof(double));
}

}  // namespace gapfill
