#pragma once

#include <limits>
#include <vector>

#include "core/layers.hpp"

namespace vqts::core {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 0.0;
    double clip_norm = 0.0;  // 0 disables clipping
};

class Adam {
public:
    explicit Adam(AdamConfig cfg) : cfg_(cfg) {}

    // Scales all trainable gradients so the global L2 norm is at most
    // clip_norm; returns the pre-clip norm. Throws on a non-finite gradient,
    // naming the offending parameter.
    double clip_gradients(const std::vector<Parameter*>& params) const;

    void step(const std::vector<Parameter*>& params);
    static void zero_grad(const std::vector<Parameter*>& params);

    double lr() const { return cfg_.lr; }
    void set_lr(double lr) { cfg_.lr = lr; }
    long step_count() const { return step_; }
    void set_step_count(long t) { step_ = t; }
    const AdamConfig& config() const { return cfg_; }

private:
    AdamConfig cfg_;
    long step_ = 0;
};

// Multiplies the learning rate by `factor` after `patience` consecutive
// epochs without validation improvement.
class PlateauScheduler {
public:
    PlateauScheduler(double factor = 0.1, int patience = 10)
        : factor_(factor), patience_(patience) {}

    // Returns true when the rate was reduced this epoch.
    bool observe(double val_loss, Adam& opt);

    double best() const { return best_; }
    int wait() const { return wait_; }

private:
    double factor_;
    int patience_;
    double best_ = std::numeric_limits<double>::infinity();
    int wait_ = 0;
};

}  // namespace vqts::core
