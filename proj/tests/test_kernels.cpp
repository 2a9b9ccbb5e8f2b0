#include <doctest.h>

#include <random>

#include "core/kernels.hpp"
#include "core/tensor.hpp"
#include "support.hpp"

using namespace vqts::core;
using vqts::testing::random_tensor;

namespace {
std::vector<double> random_vec(size_t n, Rng& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}
}  // namespace

// The OpenMP kernels must be bit-identical to the serial references: they
// parallelize over independent output slices and keep the inner summation
// order, so equality is exact, not approximate.
TEST_CASE("conv1d kernels: omp matches serial bitwise") {
    Rng rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        const int b = 1 + trial % 3, cin = 2 + trial, cout = 3 + trial, l = 9 + 4 * trial, k = 3;
        Tensor3 x = random_tensor(b, cin, l, rng);
        auto w = random_vec(static_cast<size_t>(cout) * cin * k, rng);
        auto bias = random_vec(cout, rng);

        Tensor3 ys, yp;
        kernels::conv1d_forward_serial(x, w, bias, cout, k, 1, 1, ys);
        kernels::conv1d_forward_omp(x, w, bias, cout, k, 1, 1, yp);
        CHECK(ys.v == yp.v);

        Tensor3 gxs(b, cin, l), gxp(b, cin, l);
        kernels::conv1d_backward_input_serial(ys, w, cin, k, 1, 1, gxs);
        kernels::conv1d_backward_input_omp(ys, w, cin, k, 1, 1, gxp);
        CHECK(gxs.v == gxp.v);

        std::vector<double> gws(w.size(), 0.0), gwp(w.size(), 0.0), gbs(cout, 0.0), gbp(cout, 0.0);
        kernels::conv1d_backward_params_serial(x, ys, k, 1, 1, gws, gbs);
        kernels::conv1d_backward_params_omp(x, ys, k, 1, 1, gwp, gbp);
        CHECK(gws == gwp);
        CHECK(gbs == gbp);
    }
}

TEST_CASE("deconv1d kernels: omp matches serial bitwise") {
    Rng rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        const int b = 2, cin = 3 + trial, cout = 2 + trial, l = 8 + trial, k = 3;
        Tensor3 x = random_tensor(b, cin, l, rng);
        auto w = random_vec(static_cast<size_t>(cin) * cout * k, rng);
        auto bias = random_vec(cout, rng);

        Tensor3 ys, yp;
        kernels::deconv1d_forward_serial(x, w, bias, cout, k, 1, ys);
        kernels::deconv1d_forward_omp(x, w, bias, cout, k, 1, yp);
        CHECK(ys.v == yp.v);
        CHECK(ys.l == l);  // k=3, pad=1 preserves length

        Tensor3 gxs(b, cin, l), gxp(b, cin, l);
        kernels::deconv1d_backward_input_serial(ys, w, cin, k, 1, gxs);
        kernels::deconv1d_backward_input_omp(ys, w, cin, k, 1, gxp);
        CHECK(gxs.v == gxp.v);

        std::vector<double> gws(w.size(), 0.0), gwp(w.size(), 0.0), gbs(cout, 0.0), gbp(cout, 0.0);
        kernels::deconv1d_backward_params_serial(x, ys, k, 1, gws, gbs);
        kernels::deconv1d_backward_params_omp(x, ys, k, 1, gwp, gbp);
        CHECK(gws == gwp);
        CHECK(gbs == gbp);
    }
}

TEST_CASE("batchnorm stats: omp matches serial bitwise") {
    Rng rng(13);
    Tensor3 x = random_tensor(7, 11, 23, rng);
    std::vector<double> ms, vs, mp, vp;
    kernels::batchnorm_stats_serial(x, ms, vs);
    kernels::batchnorm_stats_omp(x, mp, vp);
    CHECK(ms == mp);
    CHECK(vs == vp);
}

TEST_CASE("pairwise_sqdist: omp matches serial bitwise") {
    Rng rng(14);
    const size_t n = 257, kk = 64, d = 17;
    auto q = random_vec(n * d, rng);
    auto codes = random_vec(kk * d, rng);
    std::vector<double> ds(n * kk), dp(n * kk);
    kernels::pairwise_sqdist_serial(q.data(), n, codes.data(), kk, d, ds.data());
    kernels::pairwise_sqdist_omp(q.data(), n, codes.data(), kk, d, dp.data());
    CHECK(ds == dp);
}

TEST_CASE("rowwise_argmin breaks ties toward the lowest index") {
    std::vector<double> dist = {3.0, 1.0, 1.0, 2.0,   // row 0: tie at 1 and 2
                                5.0, 5.0, 5.0, 5.0};  // row 1: full tie
    std::vector<int> out;
    kernels::rowwise_argmin(dist.data(), 2, 4, out);
    CHECK(out[0] == 1);
    CHECK(out[1] == 0);
}
