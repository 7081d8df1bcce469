#include "gfdm/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "gfdm/kernels.hpp"

namespace gfdm::fft {

namespace {

// Plan key: (n, howmany, stride, dist, sign). Plans are created once with
// FFTW_UNALIGNED so they can execute on any buffer afterwards.
using PlanKey = std::tuple<int, int, int, int, int>;

class PlanCache {
  public:
    fftw_plan get(int n, int howmany, int stride, int dist, int sign, cplx* buf) {
        PlanKey key{n, howmany, stride, dist, sign};
        std::lock_guard<std::mutex> lock(mu_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        auto* io = reinterpret_cast<fftw_complex*>(buf);
        fftw_plan p = fftw_plan_many_dft(1, &n, howmany, io, nullptr, stride, dist, io, nullptr, stride,
                                         dist, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

  private:
    std::mutex mu_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void execute(int n, int howmany, int stride, int dist, int sign, cplx* buf) {
    fftw_plan p = cache().get(n, howmany, stride, dist, sign, buf);
    auto* io = reinterpret_cast<fftw_complex*>(buf);
    fftw_execute_dft(p, io, io);
}

void scale(cplx* buf, int total, double s) { kernels::cscale(buf, buf, cplx(s, 0.0), total); }

}  // namespace

void dft(cplx* x, int n) {
    execute(n, 1, 1, 0, FFTW_FORWARD, x);
    scale(x, n, 1.0 / std::sqrt(static_cast<double>(n)));
}

void idft(cplx* x, int n) {
    execute(n, 1, 1, 0, FFTW_BACKWARD, x);
    scale(x, n, 1.0 / std::sqrt(static_cast<double>(n)));
}

void dft_unnormalized(cplx* x, int n) { execute(n, 1, 1, 0, FFTW_FORWARD, x); }

void dft_cols(cplx* buf, int K, int M) {
    execute(K, M, 1, K, FFTW_FORWARD, buf);
    scale(buf, K * M, 1.0 / std::sqrt(static_cast<double>(K)));
}

void idft_cols(cplx* buf, int K, int M) {
    execute(K, M, 1, K, FFTW_BACKWARD, buf);
    scale(buf, K * M, 1.0 / std::sqrt(static_cast<double>(K)));
}

void dft_rows(cplx* buf, int K, int M) {
    execute(M, K, K, 1, FFTW_FORWARD, buf);
    scale(buf, K * M, 1.0 / std::sqrt(static_cast<double>(M)));
}

void idft_rows(cplx* buf, int K, int M) {
    execute(M, K, K, 1, FFTW_BACKWARD, buf);
    scale(buf, K * M, 1.0 / std::sqrt(static_cast<double>(M)));
}

}  // namespace gfdm::fft
