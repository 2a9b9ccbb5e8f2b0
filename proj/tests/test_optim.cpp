#include <doctest.h>

#include <cmath>

#include "core/optim.hpp"
#include "support.hpp"

using namespace vqts::core;

TEST_CASE("gradient clipping scales to the configured global norm") {
    Parameter p;
    p.init("p", {4});
    p.grad = {2.0, 2.0, 2.0, 2.0};  // global norm 4
    AdamConfig cfg;
    cfg.clip_norm = 2.0;
    Adam opt(cfg);
    const double pre = opt.clip_gradients({&p});
    CHECK(pre == doctest::Approx(4.0));
    for (double g : p.grad) CHECK(g == doctest::Approx(1.0));  // scaled by 0.5
    double post = 0.0;
    for (double g : p.grad) post += g * g;
    CHECK(std::sqrt(post) <= 2.0 + 1e-9);
}

TEST_CASE("post-clip norm never exceeds clip_norm") {
    Rng rng(1);
    std::normal_distribution<double> n(0.0, 3.0);
    for (int trial = 0; trial < 25; ++trial) {
        Parameter p;
        p.init("p", {16});
        for (double& g : p.grad) g = n(rng);
        AdamConfig cfg;
        cfg.clip_norm = 2.0;
        Adam opt(cfg);
        opt.clip_gradients({&p});
        double norm = 0.0;
        for (double g : p.grad) norm += g * g;
        CHECK(std::sqrt(norm) <= 2.0 + 1e-9);
    }
}

TEST_CASE("zero gradient and zero weight decay leave parameters bit-identical") {
    Parameter p;
    p.init("p", {3});
    p.value = {0.25, -1.5, 3.0};
    const auto before = p.value;
    Adam opt(AdamConfig{});
    opt.clip_gradients({&p});
    opt.step({&p});
    CHECK(p.value == before);
}

TEST_CASE("non-finite gradient names the offending parameter") {
    Parameter p;
    p.init("enc.weight", {2});
    p.grad = {1.0, std::numeric_limits<double>::quiet_NaN()};
    Adam opt(AdamConfig{});
    CHECK_THROWS_WITH_AS(opt.clip_gradients({&p}), doctest::Contains("enc.weight"),
                         std::runtime_error);
}

TEST_CASE("adam descends a quadratic") {
    Parameter p;
    p.init("p", {1});
    p.value = {5.0};
    AdamConfig cfg;
    cfg.lr = 0.1;
    Adam opt(cfg);
    for (int it = 0; it < 400; ++it) {
        p.grad[0] = 2.0 * p.value[0];
        opt.step({&p});
        opt.zero_grad({&p});
    }
    CHECK(std::fabs(p.value[0]) < 1e-2);
}

TEST_CASE("plateau scheduler reduces after ten flat epochs") {
    AdamConfig cfg;
    cfg.lr = 1e-3;
    Adam opt(cfg);
    PlateauScheduler sched(0.1, 10);
    CHECK_FALSE(sched.observe(1.0, opt));  // first observation sets the best
    for (int epoch = 0; epoch < 9; ++epoch) {
        CHECK_FALSE(sched.observe(1.0, opt));
        CHECK(opt.lr() == doctest::Approx(1e-3));
    }
    CHECK(sched.observe(1.0, opt));  // tenth flat epoch
    CHECK(opt.lr() == doctest::Approx(1e-4));
}

TEST_CASE("plateau scheduler resets on improvement") {
    Adam opt(AdamConfig{});
    PlateauScheduler sched(0.1, 3);
    sched.observe(1.0, opt);
    sched.observe(1.0, opt);
    sched.observe(0.5, opt);  // improvement resets the wait counter
    CHECK_FALSE(sched.observe(0.6, opt));
    CHECK_FALSE(sched.observe(0.6, opt));
    CHECK(sched.observe(0.6, opt));
}

TEST_CASE("non-trainable parameters are never updated") {
    Parameter buf;
    buf.init("bn.running_mean", {2}, false);
    buf.value = {1.0, 2.0};
    buf.grad = {9.0, 9.0};
    const auto before = buf.value;
    AdamConfig cfg;
    cfg.weight_decay = 0.5;
    Adam opt(cfg);
    opt.step({&buf});
    CHECK(buf.value == before);
}
