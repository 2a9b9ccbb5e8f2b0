#pragma once

#include <functional>
#include <string>
#include <vector>

namespace vqts::core {

struct GradCheckSlot {
    double* value = nullptr;       // mutable storage perturbed by the checker
    const double* grad = nullptr;  // analytic gradient for the same storage
    size_t n = 0;
    std::string name;
};

struct GradCheckReport {
    double max_rel_err = 0.0;
    bool pass = false;
    size_t n_checked = 0;
    std::string worst_slot;
};

// Central-difference check of analytic gradients. `compute_grads` must run a
// full forward/backward and leave gradients in the slots; `eval` must return
// the loss for the current slot values without touching the gradients. Both
// callbacks must be deterministic (callers snapshot any RNG state).
GradCheckReport grad_check(const std::function<double()>& eval,
                           const std::function<void()>& compute_grads,
                           std::vector<GradCheckSlot>& slots, double tolerance,
                           double step = 1e-5);

}  // namespace vqts::core
