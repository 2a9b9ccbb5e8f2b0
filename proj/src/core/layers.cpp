#include "core/layers.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "core/kernels.hpp"

namespace vqts::core {

namespace {
size_t shape_numel(const std::vector<int>& shape) {
    size_t n = 1;
    for (int s : shape) n *= static_cast<size_t>(s);
    return n;
}

// Uniform fan-in init for conv/linear weights and biases.
void fan_in_init(std::vector<double>& w, int fan_in, Rng& rng) {
    const double a = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::uniform_real_distribution<double> u(-a, a);
    for (double& x : w) x = u(rng);
}
}  // namespace

void Parameter::init(std::string n, std::vector<int> shp, bool trainable_) {
    name = std::move(n);
    shape = std::move(shp);
    trainable = trainable_;
    const size_t numel = shape_numel(shape);
    value.assign(numel, 0.0);
    grad.assign(numel, 0.0);
    m1.assign(numel, 0.0);
    m2.assign(numel, 0.0);
}

void Layer::require_recorded(const char* who) const {
    if (!recorded_)
        throw std::logic_error(std::string(who) + ": backward without a recorded train forward");
}

// ----------------------------------------------------------------- Conv1d

Conv1d::Conv1d(int cin, int cout, int k, int stride, int pad, const std::string& name, Rng& rng)
    : cin_(cin), cout_(cout), k_(k), stride_(stride), pad_(pad) {
    weight.init(name + ".weight", {cout, cin, k});
    bias.init(name + ".bias", {cout});
    fan_in_init(weight.value, cin * k, rng);
    fan_in_init(bias.value, cin * k, rng);
}

Tensor3 Conv1d::forward(const Tensor3& x, bool train, Rng&) {
    if (x.c != cin_)
        throw std::invalid_argument("conv1d " + weight.name + ": expected " +
                                    std::to_string(cin_) + " input channels, got " + x.shape_str());
    Tensor3 y;
    kernels::conv1d_forward(x, weight.value, bias.value, cout_, k_, stride_, pad_, y);
    if (train) {
        x_ = x;
        recorded_ = true;
    }
    return y;
}

Tensor3 Conv1d::backward(const Tensor3& gy) {
    require_recorded("conv1d");
    kernels::conv1d_backward_params(x_, gy, k_, stride_, pad_, weight.grad, bias.grad);
    Tensor3 gx(x_.b, cin_, x_.l);
    kernels::conv1d_backward_input(gy, weight.value, cin_, k_, stride_, pad_, gx);
    return gx;
}

void Conv1d::collect(std::vector<Parameter*>& out) {
    out.push_back(&weight);
    out.push_back(&bias);
}

// --------------------------------------------------------------- Deconv1d

Deconv1d::Deconv1d(int cin, int cout, int k, int pad, const std::string& name, Rng& rng)
    : cin_(cin), cout_(cout), k_(k), pad_(pad) {
    weight.init(name + ".weight", {cin, cout, k});
    bias.init(name + ".bias", {cout});
    fan_in_init(weight.value, cin * k, rng);
    fan_in_init(bias.value, cin * k, rng);
}

Tensor3 Deconv1d::forward(const Tensor3& x, bool train, Rng&) {
    if (x.c != cin_)
        throw std::invalid_argument("deconv1d " + weight.name + ": expected " +
                                    std::to_string(cin_) + " input channels, got " +
                                    x.shape_str());
    Tensor3 y;
    kernels::deconv1d_forward(x, weight.value, bias.value, cout_, k_, pad_, y);
    if (train) {
        x_ = x;
        recorded_ = true;
    }
    return y;
}

Tensor3 Deconv1d::backward(const Tensor3& gy) {
    require_recorded("deconv1d");
    kernels::deconv1d_backward_params(x_, gy, k_, pad_, weight.grad, bias.grad);
    Tensor3 gx(x_.b, cin_, x_.l);
    kernels::deconv1d_backward_input(gy, weight.value, cin_, k_, pad_, gx);
    return gx;
}

void Deconv1d::collect(std::vector<Parameter*>& out) {
    out.push_back(&weight);
    out.push_back(&bias);
}

// ------------------------------------------------------------ BatchNorm1d

BatchNorm1d::BatchNorm1d(int c, const std::string& name, double momentum, double eps)
    : c_(c), momentum_(momentum), eps_(eps) {
    gamma.init(name + ".gamma", {c});
    beta.init(name + ".beta", {c});
    running_mean.init(name + ".running_mean", {c}, false);
    running_var.init(name + ".running_var", {c}, false);
    std::fill(gamma.value.begin(), gamma.value.end(), 1.0);
    std::fill(running_var.value.begin(), running_var.value.end(), 1.0);
}

Tensor3 BatchNorm1d::forward(const Tensor3& x, bool train, Rng&) {
    if (x.c != c_)
        throw std::invalid_argument("batchnorm1d " + gamma.name + ": expected " +
                                    std::to_string(c_) + " channels, got " + x.shape_str());
    Tensor3 y(x.b, x.c, x.l);
    if (train) {
        kernels::batchnorm_stats(x, batch_mean_, batch_var_);
        xhat_ = Tensor3(x.b, x.c, x.l);
        for (int ci = 0; ci < c_; ++ci) {
            const double inv = 1.0 / std::sqrt(batch_var_[ci] + eps_);
            for (int bi = 0; bi < x.b; ++bi)
                for (int li = 0; li < x.l; ++li) {
                    const double h = (x.at(bi, ci, li) - batch_mean_[ci]) * inv;
                    xhat_.at(bi, ci, li) = h;
                    y.at(bi, ci, li) = gamma.value[ci] * h + beta.value[ci];
                }
            running_mean.value[ci] =
                (1.0 - momentum_) * running_mean.value[ci] + momentum_ * batch_mean_[ci];
            running_var.value[ci] =
                (1.0 - momentum_) * running_var.value[ci] + momentum_ * batch_var_[ci];
        }
        recorded_ = true;
    } else {
        for (int ci = 0; ci < c_; ++ci) {
            const double inv = 1.0 / std::sqrt(running_var.value[ci] + eps_);
            for (int bi = 0; bi < x.b; ++bi)
                for (int li = 0; li < x.l; ++li)
                    y.at(bi, ci, li) =
                        gamma.value[ci] * (x.at(bi, ci, li) - running_mean.value[ci]) * inv +
                        beta.value[ci];
        }
    }
    return y;
}

Tensor3 BatchNorm1d::backward(const Tensor3& gy) {
    require_recorded("batchnorm1d");
    const double n = static_cast<double>(gy.b) * gy.l;
    Tensor3 gx(gy.b, gy.c, gy.l);
    for (int ci = 0; ci < c_; ++ci) {
        double sum_g = 0.0, sum_gh = 0.0;
        for (int bi = 0; bi < gy.b; ++bi)
            for (int li = 0; li < gy.l; ++li) {
                const double g = gy.at(bi, ci, li);
                sum_g += g;
                sum_gh += g * xhat_.at(bi, ci, li);
            }
        gamma.grad[ci] += sum_gh;
        beta.grad[ci] += sum_g;
        const double inv = 1.0 / std::sqrt(batch_var_[ci] + eps_);
        const double scale = gamma.value[ci] * inv;
        for (int bi = 0; bi < gy.b; ++bi)
            for (int li = 0; li < gy.l; ++li) {
                const double g = gy.at(bi, ci, li);
                const double h = xhat_.at(bi, ci, li);
                gx.at(bi, ci, li) = scale * (g - sum_g / n - h * sum_gh / n);
            }
    }
    return gx;
}

void BatchNorm1d::collect(std::vector<Parameter*>& out) {
    out.push_back(&gamma);
    out.push_back(&beta);
    out.push_back(&running_mean);
    out.push_back(&running_var);
}

// ------------------------------------------------------------------- ReLU

Tensor3 ReLU::forward(const Tensor3& x, bool train, Rng&) {
    Tensor3 y(x.b, x.c, x.l);
    for (size_t i = 0; i < x.size(); ++i) y.v[i] = x.v[i] > 0.0 ? x.v[i] : 0.0;
    if (train) {
        x_ = x;
        recorded_ = true;
    }
    return y;
}

Tensor3 ReLU::backward(const Tensor3& gy) {
    require_recorded("relu");
    Tensor3 gx(gy.b, gy.c, gy.l);
    for (size_t i = 0; i < gy.size(); ++i) gx.v[i] = x_.v[i] > 0.0 ? gy.v[i] : 0.0;
    return gx;
}

// --------------------------------------------------------------- Identity

Tensor3 Identity::forward(const Tensor3& x, bool train, Rng&) {
    if (train) {
        b_ = x.b;
        c_ = x.c;
        l_ = x.l;
        recorded_ = true;
    }
    return x;
}

Tensor3 Identity::backward(const Tensor3& gy) {
    require_recorded("identity");
    return gy;
}

// -------------------------------------------------------------- MaxPool1d

Tensor3 MaxPool1d::forward(const Tensor3& x, bool train, Rng&) {
    const int lout = x.l / k_;
    if (lout < 1)
        throw std::invalid_argument("maxpool1d: input length " + std::to_string(x.l) +
                                    " shorter than kernel " + std::to_string(k_));
    Tensor3 y(x.b, x.c, lout);
    std::vector<int> amax(static_cast<size_t>(x.b) * x.c * lout, 0);
    for (int bi = 0; bi < x.b; ++bi)
        for (int ci = 0; ci < x.c; ++ci)
            for (int t = 0; t < lout; ++t) {
                int best = t * k_;
                double bv = x.at(bi, ci, best);
                for (int j = 1; j < k_; ++j) {
                    const double v = x.at(bi, ci, t * k_ + j);
                    if (v > bv) {
                        bv = v;
                        best = t * k_ + j;
                    }
                }
                y.at(bi, ci, t) = bv;
                amax[(static_cast<size_t>(bi) * x.c + ci) * lout + t] = best;
            }
    if (train) {
        argmax_ = std::move(amax);
        in_l_ = x.l;
        b_ = x.b;
        c_ = x.c;
        recorded_ = true;
    }
    return y;
}

Tensor3 MaxPool1d::backward(const Tensor3& gy) {
    require_recorded("maxpool1d");
    Tensor3 gx(b_, c_, in_l_);
    for (int bi = 0; bi < b_; ++bi)
        for (int ci = 0; ci < c_; ++ci)
            for (int t = 0; t < gy.l; ++t)
                gx.at(bi, ci, argmax_[(static_cast<size_t>(bi) * c_ + ci) * gy.l + t]) +=
                    gy.at(bi, ci, t);
    return gx;
}

// ---------------------------------------------------------------- Dropout

Dropout::Dropout(double p) : p_(p) {
    if (p < 0.0 || p >= 1.0)
        throw std::invalid_argument("dropout: probability must be in [0,1), got " +
                                    std::to_string(p));
}

Tensor3 Dropout::forward(const Tensor3& x, bool train, Rng& rng) {
    if (!train || p_ == 0.0) return x;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double keep = 1.0 - p_;
    mask_.resize(x.size());
    Tensor3 y(x.b, x.c, x.l);
    for (size_t i = 0; i < x.size(); ++i) {
        mask_[i] = u(rng) < keep ? 1.0 / keep : 0.0;
        y.v[i] = x.v[i] * mask_[i];
    }
    b_ = x.b;
    c_ = x.c;
    l_ = x.l;
    recorded_ = true;
    return y;
}

Tensor3 Dropout::backward(const Tensor3& gy) {
    if (p_ == 0.0) return gy;
    require_recorded("dropout");
    Tensor3 gx(b_, c_, l_);
    for (size_t i = 0; i < gy.size(); ++i) gx.v[i] = gy.v[i] * mask_[i];
    return gx;
}

// ----------------------------------------------------------------- Linear

Linear::Linear(int cin, int cout, const std::string& name, Rng& rng) : cin_(cin), cout_(cout) {
    weight.init(name + ".weight", {cout, cin});
    bias.init(name + ".bias", {cout});
    fan_in_init(weight.value, cin, rng);
    fan_in_init(bias.value, cin, rng);
}

Tensor3 Linear::forward(const Tensor3& x, bool train, Rng&) {
    if (x.c != cin_ || x.l != 1)
        throw std::invalid_argument("linear " + weight.name + ": expected [B," +
                                    std::to_string(cin_) + ",1], got " + x.shape_str());
    Tensor3 y(x.b, cout_, 1);
    for (int bi = 0; bi < x.b; ++bi)
        for (int co = 0; co < cout_; ++co) {
            double acc = bias.value[co];
            const double* wrow = &weight.value[static_cast<size_t>(co) * cin_];
            for (int ci = 0; ci < cin_; ++ci) acc += wrow[ci] * x.at(bi, ci, 0);
            y.at(bi, co, 0) = acc;
        }
    if (train) {
        x_ = x;
        recorded_ = true;
    }
    return y;
}

Tensor3 Linear::backward(const Tensor3& gy) {
    require_recorded("linear");
    Tensor3 gx(x_.b, cin_, 1);
    for (int bi = 0; bi < gy.b; ++bi)
        for (int co = 0; co < cout_; ++co) {
            const double g = gy.at(bi, co, 0);
            bias.grad[co] += g;
            double* wgrow = &weight.grad[static_cast<size_t>(co) * cin_];
            const double* wrow = &weight.value[static_cast<size_t>(co) * cin_];
            for (int ci = 0; ci < cin_; ++ci) {
                wgrow[ci] += g * x_.at(bi, ci, 0);
                gx.at(bi, ci, 0) += g * wrow[ci];
            }
        }
    return gx;
}

void Linear::collect(std::vector<Parameter*>& out) {
    out.push_back(&weight);
    out.push_back(&bias);
}

// ---------------------------------------------------------------- Flatten

Tensor3 Flatten::forward(const Tensor3& x, bool train, Rng&) {
    Tensor3 y(x.b, x.c * x.l, 1);
    y.v = x.v;
    if (train) {
        b_ = x.b;
        c_ = x.c;
        l_ = x.l;
        recorded_ = true;
    }
    return y;
}

Tensor3 Flatten::backward(const Tensor3& gy) {
    require_recorded("flatten");
    Tensor3 gx(b_, c_, l_);
    gx.v = gy.v;
    return gx;
}

// -------------------------------------------------------------- LayerSpec

LayerSpec LayerSpec::conv(int cin, int cout, std::string name) {
    LayerSpec s;
    s.kind = Kind::conv1d;
    s.cin = cin;
    s.cout = cout;
    s.name = std::move(name);
    return s;
}
LayerSpec LayerSpec::deconv(int cin, int cout, std::string name) {
    LayerSpec s;
    s.kind = Kind::deconv1d;
    s.cin = cin;
    s.cout = cout;
    s.name = std::move(name);
    return s;
}
LayerSpec LayerSpec::batchnorm(int c, std::string name) {
    LayerSpec s;
    s.kind = Kind::batchnorm1d;
    s.cin = c;
    s.name = std::move(name);
    return s;
}
LayerSpec LayerSpec::relu() {
    LayerSpec s;
    s.kind = Kind::relu;
    return s;
}
LayerSpec LayerSpec::identity() {
    LayerSpec s;
    s.kind = Kind::identity;
    return s;
}
LayerSpec LayerSpec::maxpool(int k) {
    LayerSpec s;
    s.kind = Kind::maxpool1d;
    s.pool_k = k;
    return s;
}
LayerSpec LayerSpec::dropout(double p) {
    LayerSpec s;
    s.kind = Kind::dropout;
    s.drop_p = p;
    return s;
}
LayerSpec LayerSpec::linear(int cin, int cout, std::string name) {
    LayerSpec s;
    s.kind = Kind::linear;
    s.cin = cin;
    s.cout = cout;
    s.name = std::move(name);
    return s;
}

std::unique_ptr<Layer> make_layer(const LayerSpec& spec, Rng& rng) {
    switch (spec.kind) {
        case LayerSpec::Kind::conv1d:
            return std::make_unique<Conv1d>(spec.cin, spec.cout, spec.kernel, spec.stride,
                                            spec.pad, spec.name, rng);
        case LayerSpec::Kind::deconv1d:
            return std::make_unique<Deconv1d>(spec.cin, spec.cout, spec.kernel, spec.pad,
                                              spec.name, rng);
        case LayerSpec::Kind::batchnorm1d:
            return std::make_unique<BatchNorm1d>(spec.cin, spec.name);
        case LayerSpec::Kind::relu:
            return std::make_unique<ReLU>();
        case LayerSpec::Kind::identity:
            return std::make_unique<Identity>();
        case LayerSpec::Kind::maxpool1d:
            return std::make_unique<MaxPool1d>(spec.pool_k);
        case LayerSpec::Kind::dropout:
            return std::make_unique<Dropout>(spec.drop_p);
        case LayerSpec::Kind::linear:
            return std::make_unique<Linear>(spec.cin, spec.cout, spec.name, rng);
    }
    throw std::logic_error("make_layer: unknown kind");
}

// ------------------------------------------------------------------ Stack

Tensor3 Stack::forward(const Tensor3& x, bool train, Rng& rng) {
    Tensor3 h = x;
    for (auto& layer : layers_) h = layer->forward(h, train, rng);
    return h;
}

Tensor3 Stack::backward(const Tensor3& gy) {
    Tensor3 g = gy;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = (*it)->backward(g);
    return g;
}

std::vector<Parameter*> Stack::params() {
    std::vector<Parameter*> out;
    for (auto& layer : layers_) layer->collect(out);
    return out;
}

}  // namespace vqts::core
