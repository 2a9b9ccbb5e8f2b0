#include <doctest.h>

#include <cmath>

#include "core/losses.hpp"
#include "support.hpp"

using namespace vqts::core;
using vqts::testing::random_tensor;

TEST_CASE("masked_mse averages only over observed entries") {
    Tensor3 pred(1, 1, 3), target(1, 1, 3), mask(1, 1, 3);
    pred.v = {2.0, 5.0, 7.0};
    target.v = {2.0, 0.0, 7.0};  // error 5 sits on a masked-out slot
    mask.v = {1.0, 0.0, 1.0};
    auto r = masked_mse(pred, target, mask);
    CHECK(r.value == 0.0);
    CHECK_FALSE(r.empty_observed);
}

TEST_CASE("masked_mse gradient at a single observed entry") {
    Tensor3 pred(1, 1, 1), target(1, 1, 1), mask(1, 1, 1);
    pred.v = {3.0};
    target.v = {1.0};
    mask.v = {1.0};
    auto r = masked_mse(pred, target, mask);
    CHECK(r.value == 4.0);
    CHECK(r.grad.v[0] == 4.0);  // d(y-t)^2/dy = 2*(3-1)
}

TEST_CASE("fully masked loss returns zero with a warning flag and zero gradients") {
    Rng rng(1);
    Tensor3 pred = random_tensor(2, 3, 4, rng);
    Tensor3 target = random_tensor(2, 3, 4, rng);
    Tensor3 mask(2, 3, 4);  // all zero
    auto r = masked_mse(pred, target, mask);
    CHECK(r.value == 0.0);
    CHECK(r.empty_observed);
    for (double g : r.grad.v) CHECK(g == 0.0);
}

TEST_CASE("masked_mse is invariant to values at masked positions") {
    Rng rng(2);
    Tensor3 pred = random_tensor(2, 2, 5, rng);
    Tensor3 target = random_tensor(2, 2, 5, rng);
    Tensor3 mask(2, 2, 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& m : mask.v) m = u(rng) < 0.5 ? 1.0 : 0.0;
    auto base = masked_mse(pred, target, mask);

    Tensor3 poked_pred = pred, poked_target = target;
    for (size_t i = 0; i < mask.size(); ++i)
        if (mask.v[i] == 0.0) {
            poked_pred.v[i] += 1000.0 * u(rng);
            poked_target.v[i] -= 500.0 * u(rng);
        }
    auto poked = masked_mse(poked_pred, poked_target, mask);
    CHECK(base.value == poked.value);
    CHECK(base.grad.v == poked.grad.v);
}

TEST_CASE("weighted bce equals plain bce when classes are balanced") {
    Rng rng(3);
    Tensor3 logits = random_tensor(1, 1, 8, rng);
    Tensor3 target(1, 1, 8);
    target.v = {1, 0, 1, 0, 1, 0, 1, 0};
    auto weighted = weighted_bce_logits(logits, target, nullptr);

    double plain = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double z = logits.v[i], t = target.v[i];
        plain += std::log(1.0 + std::exp(z)) - t * z;
    }
    plain /= 8.0;
    CHECK(weighted.value == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("weighted bce honors the observation mask") {
    Tensor3 logits(1, 1, 2), target(1, 1, 2), mask(1, 1, 2);
    logits.v = {0.3, 100.0};
    target.v = {1.0, 0.0};
    mask.v = {1.0, 0.0};
    auto r = weighted_bce_logits(logits, target, &mask);
    CHECK(r.grad.v[1] == 0.0);
    CHECK(std::isfinite(r.value));
}

TEST_CASE("cross entropy of a uniform prediction is ln K") {
    Tensor3 logits(1, 3, 1);  // equal logits -> uniform softmax
    logits.fill(0.7);
    auto r = cross_entropy(logits, {1});
    CHECK(r.value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("cross entropy gradient sums to zero per row") {
    Rng rng(4);
    Tensor3 logits = random_tensor(4, 3, 1, rng);
    auto r = cross_entropy(logits, {0, 2, 1, 1});
    for (int bi = 0; bi < 4; ++bi) {
        double s = 0.0;
        for (int ci = 0; ci < 3; ++ci) s += r.grad.at(bi, ci, 0);
        CHECK(s == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("loss gradients agree with finite differences") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Tensor3 pred = random_tensor(2, 2, 4, rng);
        Tensor3 target = random_tensor(2, 2, 4, rng);
        Tensor3 mask(2, 2, 4);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (double& m : mask.v) m = u(rng) < 0.7 ? 1.0 : 0.0;

        Tensor3 grad_store(2, 2, 4);
        auto eval = [&]() { return masked_mse(pred, target, mask).value; };
        auto compute = [&]() {
            auto r = masked_mse(pred, target, mask);
            std::copy(r.grad.v.begin(), r.grad.v.end(), grad_store.v.begin());
        };
        std::vector<GradCheckSlot> slots{{pred.v.data(), grad_store.v.data(), pred.size(), "pred"}};
        auto rep = grad_check(eval, compute, slots, 1e-6);
        CHECK(rep.pass);

        Tensor3 binary(2, 2, 4);
        for (double& t : binary.v) t = u(rng) < 0.4 ? 1.0 : 0.0;
        auto eval_bce = [&]() { return weighted_bce_logits(pred, binary, &mask).value; };
        auto compute_bce = [&]() {
            auto r = weighted_bce_logits(pred, binary, &mask);
            std::copy(r.grad.v.begin(), r.grad.v.end(), grad_store.v.begin());
        };
        auto rep_bce = grad_check(eval_bce, compute_bce, slots, 1e-6);
        CHECK(rep_bce.pass);
    }
}
