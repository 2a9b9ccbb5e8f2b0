#include "core/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace vqts::core {

double Adam::clip_gradients(const std::vector<Parameter*>& params) const {
    double sq = 0.0;
    for (const Parameter* p : params) {
        if (!p->trainable) continue;
        for (double g : p->grad) {
            if (!std::isfinite(g))
                throw std::runtime_error("non-finite gradient in parameter " + p->name);
            sq += g * g;
        }
    }
    const double norm = std::sqrt(sq);
    if (cfg_.clip_norm > 0.0 && norm > cfg_.clip_norm) {
        const double scale = cfg_.clip_norm / norm;
        for (Parameter* p : params) {
            if (!p->trainable) continue;
            for (double& g : p->grad) g *= scale;
        }
    }
    return norm;
}

void Adam::step(const std::vector<Parameter*>& params) {
    ++step_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_));
    for (Parameter* p : params) {
        if (!p->trainable) continue;
        for (size_t i = 0; i < p->value.size(); ++i) {
            const double g = p->grad[i] + cfg_.weight_decay * p->value[i];
            p->m1[i] = cfg_.beta1 * p->m1[i] + (1.0 - cfg_.beta1) * g;
            p->m2[i] = cfg_.beta2 * p->m2[i] + (1.0 - cfg_.beta2) * g * g;
            const double mhat = p->m1[i] / bc1;
            const double vhat = p->m2[i] / bc2;
            p->value[i] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
        }
    }
}

void Adam::zero_grad(const std::vector<Parameter*>& params) {
    for (Parameter* p : params) p->zero_grad();
}

bool PlateauScheduler::observe(double val_loss, Adam& opt) {
    if (val_loss < best_) {
        best_ = val_loss;
        wait_ = 0;
        return false;
    }
    if (++wait_ >= patience_) {
        opt.set_lr(opt.lr() * factor_);
        wait_ = 0;
        return true;
    }
    return false;
}

}  // namespace vqts::core
