#pragma once

// Shared helpers for the unit and acceptance suites: random tensors plus a
// finite-difference harness for layer stacks. The harness re-draws inputs that
// land too close to a ReLU kink or a pooling tie, since central differences
// are meaningless across a non-differentiable point.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/gradcheck.hpp"
#include "core/layers.hpp"
#include "core/losses.hpp"
#include "core/optim.hpp"
#include "core/rng.hpp"
#include "core/tensor.hpp"

namespace vqts::testing {

inline core::Tensor3 random_tensor(int b, int c, int l, core::Rng& rng, double sd = 1.0) {
    core::Tensor3 t(b, c, l);
    std::normal_distribution<double> n(0.0, sd);
    for (double& x : t.v) x = n(rng);
    return t;
}

// Replays the stack layer by layer and checks every tensor feeding a ReLU or
// MaxPool1d keeps a safety margin from the kink.
inline bool stack_margins_ok(core::Stack& st, const core::Tensor3& x, core::Rng rng,
                             double margin) {
    core::Tensor3 h = x;
    for (size_t i = 0; i < st.depth(); ++i) {
        core::Layer& layer = st.layer(i);
        const std::string kind = layer.kind();
        if (kind == "relu") {
            for (double v : h.v)
                if (std::fabs(v) < margin) return false;
        } else if (kind == "maxpool1d") {
            for (int bi = 0; bi < h.b; ++bi)
                for (int ci = 0; ci < h.c; ++ci)
                    for (int t = 0; t + 1 < h.l; t += 2) {
                        const double a = h.at(bi, ci, t), b = h.at(bi, ci, t + 1);
                        if (std::fabs(a - b) < margin) return false;
                    }
        }
        h = layer.forward(h, true, rng);
    }
    return true;
}

// Finite-difference check of a stack under a masked-MSE objective against a
// fixed random target. Checks all trainable parameters and the input.
inline core::GradCheckReport check_stack_gradients(core::Stack& st, core::Tensor3 x,
                                                   core::Rng& rng, double tolerance,
                                                   double step = 1e-5) {
    core::Rng probe = rng;
    core::Tensor3 out_shape_probe = st.forward(x, true, probe);
    core::Tensor3 target = random_tensor(out_shape_probe.b, out_shape_probe.c, out_shape_probe.l, rng);
    core::Tensor3 ones(out_shape_probe.b, out_shape_probe.c, out_shape_probe.l);
    ones.fill(1.0);

    auto params = st.params();
    core::Rng snap = rng;

    auto run_loss = [&]() {
        core::Rng r = snap;
        core::Tensor3 y = st.forward(x, true, r);
        return core::masked_mse(y, target, ones);
    };

    core::Tensor3 input_grad(x.b, x.c, x.l);
    auto eval = [&]() { return run_loss().value; };
    auto compute = [&]() {
        core::Adam::zero_grad(params);
        core::LossResult res = run_loss();
        core::Tensor3 gx = st.backward(res.grad);
        std::copy(gx.v.begin(), gx.v.end(), input_grad.v.begin());
    };

    std::vector<core::GradCheckSlot> slots;
    for (core::Parameter* p : params) {
        if (!p->trainable) continue;
        slots.push_back({p->value.data(), p->grad.data(), p->size(), p->name});
    }
    slots.push_back({x.v.data(), input_grad.v.data(), x.size(), "input"});

    return core::grad_check(eval, compute, slots, tolerance, step);
}

// Builds a fresh stack per attempt until the kink margins hold, then runs the
// finite-difference check. Throws if no margin-respecting draw is found.
inline core::GradCheckReport checked_stack_fd(
    const std::function<void(core::Stack&, core::Rng&)>& build, int b, int c, int l,
    std::uint64_t seed, double tolerance) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        core::Rng rng(seed + 1000003ULL * attempt);
        core::Stack st;
        build(st, rng);
        core::Tensor3 x = random_tensor(b, c, l, rng);
        if (!stack_margins_ok(st, x, rng, 1e-3)) continue;
        return check_stack_gradients(st, x, rng, tolerance);
    }
    throw std::runtime_error("checked_stack_fd: no kink-free draw found");
}

}  // namespace vqts::testing
