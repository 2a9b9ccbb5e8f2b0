// Times the serial reference kernels against their OpenMP counterparts.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "core/kernels.hpp"
#include "core/tensor.hpp"

using namespace vqts::core;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, const char* size, double serial_ms, double omp_ms) {
    std::printf("%-28s %-22s %10.3f %10.3f %8.2fx\n", name, size, serial_ms, omp_ms,
                serial_ms / omp_ms);
}

Tensor3 random_tensor(int b, int c, int l, std::mt19937_64& rng) {
    Tensor3 t(b, c, l);
    std::normal_distribution<double> n(0.0, 1.0);
    for (double& x : t.v) x = n(rng);
    return t;
}

}  // namespace

int main() {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::printf("%-28s %-22s %10s %10s %9s\n", "kernel", "size", "serial/ms", "omp/ms",
                "speedup");

    // conv1d forward/backward at the channel widths the encoder stacks use
    for (int cw : {40, 80, 160}) {
        const int b = 16, cin = cw, cout = 2 * cw, l = 128, k = 3;
        Tensor3 x = random_tensor(b, cin, l, rng);
        std::vector<double> w(static_cast<size_t>(cout) * cin * k), bias(cout);
        for (double& v : w) v = normal(rng);
        for (double& v : bias) v = normal(rng);
        Tensor3 y;
        char size[64];
        std::snprintf(size, sizeof size, "B16 %d->%d L128", cin, cout);
        report("conv1d_forward", size,
               time_ms([&] { kernels::conv1d_forward_serial(x, w, bias, cout, k, 1, 1, y); }, 5),
               time_ms([&] { kernels::conv1d_forward_omp(x, w, bias, cout, k, 1, 1, y); }, 5));

        kernels::conv1d_forward_serial(x, w, bias, cout, k, 1, 1, y);
        Tensor3 gx(b, cin, l);
        report("conv1d_backward_input", size,
               time_ms([&] { kernels::conv1d_backward_input_serial(y, w, cin, k, 1, 1, gx); }, 5),
               time_ms([&] { kernels::conv1d_backward_input_omp(y, w, cin, k, 1, 1, gx); }, 5));

        std::vector<double> gw(w.size()), gb(bias.size());
        report("conv1d_backward_params", size,
               time_ms([&] { kernels::conv1d_backward_params_serial(x, y, k, 1, 1, gw, gb); }, 5),
               time_ms([&] { kernels::conv1d_backward_params_omp(x, y, k, 1, 1, gw, gb); }, 5));
    }

    // batchnorm statistics
    {
        Tensor3 x = random_tensor(32, 80, 128, rng);
        std::vector<double> mean, var;
        report("batchnorm_stats", "B32 C80 L128",
               time_ms([&] { kernels::batchnorm_stats_serial(x, mean, var); }, 20),
               time_ms([&] { kernels::batchnorm_stats_omp(x, mean, var); }, 20));
    }

    // codeword distance scan at the dictionary sizes of interest
    for (int kk : {256, 512, 1024}) {
        const size_t n = 2048, d = 80;
        std::vector<double> q(n * d), codes(static_cast<size_t>(kk) * d),
            dist(n * static_cast<size_t>(kk));
        for (double& v : q) v = normal(rng);
        for (double& v : codes) v = normal(rng);
        char size[64];
        std::snprintf(size, sizeof size, "N2048 K%d d80", kk);
        report("pairwise_sqdist", size,
               time_ms([&] { kernels::pairwise_sqdist_serial(q.data(), n, codes.data(), kk, d,
                                                             dist.data()); }, 5),
               time_ms([&] { kernels::pairwise_sqdist_omp(q.data(), n, codes.data(), kk, d,
                                                          dist.data()); }, 5));
    }

    return 0;
}
