#include "core/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace vqts::core {

LossResult masked_mse(const Tensor3& pred, const Tensor3& target, const Tensor3& mask01) {
    if (!pred.same_shape(target) || !pred.same_shape(mask01))
        throw std::invalid_argument("masked_mse: shape mismatch pred " + pred.shape_str() +
                                    " target " + target.shape_str() + " mask " +
                                    mask01.shape_str());
    LossResult r;
    r.grad = Tensor3(pred.b, pred.c, pred.l);
    r.elems = Tensor3(pred.b, pred.c, pred.l);
    size_t n_obs = 0;
    for (size_t i = 0; i < pred.size(); ++i)
        if (mask01.v[i] == 1.0) ++n_obs;
    if (n_obs == 0) {
        r.empty_observed = true;
        return r;
    }
    const double inv = 1.0 / static_cast<double>(n_obs);
    double acc = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) {
        if (mask01.v[i] != 1.0) continue;
        const double d = pred.v[i] - target.v[i];
        r.elems.v[i] = d * d * inv;
        r.grad.v[i] = 2.0 * d * inv;
        acc += d * d;
    }
    r.value = acc * inv;
    return r;
}

LossResult weighted_bce_logits(const Tensor3& logits, const Tensor3& target01,
                               const Tensor3* mask01) {
    if (!logits.same_shape(target01))
        throw std::invalid_argument("weighted_bce_logits: shape mismatch " + logits.shape_str() +
                                    " vs " + target01.shape_str());
    if (mask01 && !logits.same_shape(*mask01))
        throw std::invalid_argument("weighted_bce_logits: mask shape mismatch");

    LossResult r;
    r.grad = Tensor3(logits.b, logits.c, logits.l);
    r.elems = Tensor3(logits.b, logits.c, logits.l);

    size_t n_pos = 0, n_obs = 0;
    for (size_t i = 0; i < logits.size(); ++i) {
        if (mask01 && mask01->v[i] != 1.0) continue;
        ++n_obs;
        if (target01.v[i] >= 0.5) ++n_pos;
    }
    if (n_obs == 0) {
        r.empty_observed = true;
        return r;
    }
    const size_t n_neg = n_obs - n_pos;
    const double w_pos = n_pos > 0 ? static_cast<double>(n_obs) / (2.0 * n_pos) : 0.0;
    const double w_neg = n_neg > 0 ? static_cast<double>(n_obs) / (2.0 * n_neg) : 0.0;
    const double inv = 1.0 / static_cast<double>(n_obs);

    double acc = 0.0;
    for (size_t i = 0; i < logits.size(); ++i) {
        if (mask01 && mask01->v[i] != 1.0) continue;
        const double z = logits.v[i];
        const double t = target01.v[i] >= 0.5 ? 1.0 : 0.0;
        const double w = t > 0.5 ? w_pos : w_neg;
        // log(1 + e^z) computed stably for either sign of z
        const double softplus = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
        const double e = w * (softplus - t * z);
        const double sig = 1.0 / (1.0 + std::exp(-z));
        r.elems.v[i] = e * inv;
        r.grad.v[i] = w * (sig - t) * inv;
        acc += e;
    }
    r.value = acc * inv;
    return r;
}

LossResult cross_entropy(const Tensor3& logits, const std::vector<int>& labels,
                         const std::vector<double>* class_weights) {
    if (logits.l != 1)
        throw std::invalid_argument("cross_entropy: expected [B,C,1] logits, got " +
                                    logits.shape_str());
    if (static_cast<int>(labels.size()) != logits.b)
        throw std::invalid_argument("cross_entropy: label count " +
                                    std::to_string(labels.size()) + " != batch " +
                                    std::to_string(logits.b));
    LossResult r;
    r.grad = Tensor3(logits.b, logits.c, 1);
    r.elems = Tensor3(logits.b, 1, 1);

    double total_w = 0.0, acc = 0.0;
    std::vector<double> row_w(logits.b, 1.0);
    for (int bi = 0; bi < logits.b; ++bi) {
        const int y = labels[bi];
        if (y < 0 || y >= logits.c)
            throw std::invalid_argument("cross_entropy: label " + std::to_string(y) +
                                        " outside [0," + std::to_string(logits.c) + ")");
        if (class_weights) row_w[bi] = (*class_weights)[y];
        total_w += row_w[bi];
    }
    if (total_w <= 0.0) throw std::invalid_argument("cross_entropy: nonpositive total weight");

    for (int bi = 0; bi < logits.b; ++bi) {
        double mx = logits.at(bi, 0, 0);
        for (int ci = 1; ci < logits.c; ++ci) mx = std::max(mx, logits.at(bi, ci, 0));
        double z = 0.0;
        for (int ci = 0; ci < logits.c; ++ci) z += std::exp(logits.at(bi, ci, 0) - mx);
        const double logz = std::log(z) + mx;
        const int y = labels[bi];
        const double nll = logz - logits.at(bi, y, 0);
        const double w = row_w[bi] / total_w;
        r.elems.at(bi, 0, 0) = w * nll;
        acc += w * nll;
        for (int ci = 0; ci < logits.c; ++ci) {
            const double p = std::exp(logits.at(bi, ci, 0) - logz);
            r.grad.at(bi, ci, 0) = w * (p - (ci == y ? 1.0 : 0.0));
        }
    }
    r.value = acc;
    return r;
}

}  // namespace vqts::core
