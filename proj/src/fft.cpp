#include "kpw/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace kpw::fft {

namespace {

struct Plan {
    fftw_plan plan = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    std::size_t total = 0;
    std::mutex mu; // fftw_execute on a shared buffer pair must be serialized

    ~Plan() {
        if (plan) fftw_destroy_plan(plan);
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }
};

using Key = std::pair<std::vector<int>, int>; // dims, sign

std::mutex g_cache_mu;
std::map<Key, std::unique_ptr<Plan>>& cache() {
    static std::map<Key, std::unique_ptr<Plan>> c;
    return c;
}

Plan& get_plan(const Grid& g, int sign) {
    std::vector<int> dims(g.dim, g.points_per_axis);
    Key key{dims, sign};
    std::lock_guard<std::mutex> lk(g_cache_mu);
    auto it = cache().find(key);
    if (it != cache().end()) return *it->second;

    auto p = std::make_unique<Plan>();
    p->total = g.total_points();
    p->in = fftw_alloc_complex(p->total);
    p->out = fftw_alloc_complex(p->total);
    p->plan = fftw_plan_dft(g.dim, dims.data(), p->in, p->out, sign, FFTW_ESTIMATE);
    if (!p->plan) throw std::runtime_error("fftw plan creation failed");
    auto& ref = *p;
    cache().emplace(std::move(key), std::move(p));
    return ref;
}

std::vector<cplx> execute(const Grid& g, const std::vector<cplx>& in, int sign) {
    if (in.size() != g.total_points()) throw std::invalid_argument("fft: size/grid mismatch");
    Plan& p = get_plan(g, sign);
    std::vector<cplx> out(in.size());
    const double scale = 1.0 / std::sqrt(double(p.total));
    {
        std::lock_guard<std::mutex> lk(p.mu);
        for (std::size_t i = 0; i < in.size(); ++i) {
            p.in[i][0] = in[i].real();
            p.in[i][1] = in[i].imag();
        }
        fftw_execute(p.plan);
        for (std::size_t i = 0; i < in.size(); ++i)
            out[i] = cplx(p.out[i][0] * scale, p.out[i][1] * scale);
    }
    return out;
}

} // namespace

std::vector<cplx> forward(const Grid& g, const std::vector<cplx>& in) {
    return execute(g, in, FFTW_FORWARD);
}

std::vector<cplx> inverse(const Grid& g, const std::vector<cplx>& in) {
    return execute(g, in, FFTW_BACKWARD);
}

GridFunction forward(const GridFunction& f) {
    return GridFunction(f.grid, forward(f.grid, f.samples));
}

GridFunction inverse(const GridFunction& f) {
    return GridFunction(f.grid, inverse(f.grid, f.samples));
}

} // namespace kpw::fft
