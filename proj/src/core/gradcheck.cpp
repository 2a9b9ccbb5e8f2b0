#include "core/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vqts::core {

GradCheckReport grad_check(const std::function<double()>& eval,
                           const std::function<void()>& compute_grads,
                           std::vector<GradCheckSlot>& slots, double tolerance, double step) {
    size_t total = 0;
    for (const auto& s : slots) total += s.n;
    if (total > 5000)
        throw std::invalid_argument("grad_check: fragment too large (" + std::to_string(total) +
                                    " values, limit 5000)");

    compute_grads();
    std::vector<std::vector<double>> analytic;
    analytic.reserve(slots.size());
    for (const auto& s : slots) analytic.emplace_back(s.grad, s.grad + s.n);

    GradCheckReport report;
    for (size_t si = 0; si < slots.size(); ++si) {
        auto& s = slots[si];
        for (size_t i = 0; i < s.n; ++i) {
            const double saved = s.value[i];
            s.value[i] = saved + step;
            const double f_plus = eval();
            s.value[i] = saved - step;
            const double f_minus = eval();
            s.value[i] = saved;
            const double numeric = (f_plus - f_minus) / (2.0 * step);
            const double a = analytic[si][i];
            const double denom = std::max({1e-6, std::fabs(a), std::fabs(numeric)});
            const double rel = std::fabs(a - numeric) / denom;
            if (rel > report.max_rel_err) {
                report.max_rel_err = rel;
                report.worst_slot = s.name + "[" + std::to_string(i) + "]";
            }
            ++report.n_checked;
        }
    }
    report.pass = report.max_rel_err < tolerance;
    return report;
}

}  // namespace vqts::core
