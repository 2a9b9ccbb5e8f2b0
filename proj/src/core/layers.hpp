#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/rng.hpp"
#include "core/tensor.hpp"

namespace vqts::core {

struct Parameter {
    std::string name;
    std::vector<int> shape;
    std::vector<double> value;
    std::vector<double> grad;
    std::vector<double> m1, m2;  // Adam moment accumulators
    bool trainable = true;

    void init(std::string n, std::vector<int> shp, bool trainable_ = true);
    size_t size() const { return value.size(); }
    void zero_grad() { std::fill(grad.begin(), grad.end(), 0.0); }
};

class Layer {
public:
    virtual ~Layer() = default;

    // Train-mode forward records whatever backward needs; eval forward is
    // deterministic and leaves no trace.
    virtual Tensor3 forward(const Tensor3& x, bool train, Rng& rng) = 0;

    // Returns gradient w.r.t. the layer input and accumulates parameter
    // gradients. Throws if no train-mode forward was recorded.
    virtual Tensor3 backward(const Tensor3& gy) = 0;

    virtual void collect(std::vector<Parameter*>& out) { (void)out; }
    virtual const char* kind() const = 0;

protected:
    void require_recorded(const char* who) const;
    bool recorded_ = false;
};

class Conv1d : public Layer {
public:
    Conv1d(int cin, int cout, int k, int stride, int pad, const std::string& name, Rng& rng);
    Tensor3 forward(const Tensor3& x, bool train, Rng& rng) override;
    Tensor3 backward(const Tensor3& gy) override;
    void collect(std::vector<Parameter*>& out) override;
    const char* kind() const override { return "conv1d"; }

    Parameter weight, bias;

private:
    int cin_, cout_, k_, stride_, pad_;
    Tensor3 x_;
};

class Deconv1d : public Layer {
public:
    Deconv1d(int cin, int cout, int k, int pad, const std::string& name, Rng& rng);
    Tensor3 forward(const Tensor3& x, bool train, Rng& rng) override;
    Tensor3 backward(const Tensor3& gy) override;
    void collect(std::vector<Parameter*>& out) override;
    const char* kind() const override { return "deconv1d"; }

    Parameter weight, bias;

private:
    int cin_, cout_, k_, pad_;
    Tensor3 x_;
};

class BatchNorm1d : public Layer {
public:
    explicit BatchNorm1d(int c, const std::string& name, double momentum = 0.1,
                         double eps = 1e-5);
    Tensor3 forward(const Tensor3& x, bool train, Rng& rng) override;
    Tensor3 backward(const Tensor3& gy) override;
    void collect(std::vector<Parameter*>& out) override;
    const char* kind() const override { return "batchnorm1d"; }

    Parameter gamma, beta;
    Parameter running_mean, running_var;  // non-trainable

private:
    int c_;
    double momentum_, eps_;
    Tensor3 xhat_;
    std::vector<double> batch_mean_, batch_var_;
};

class ReLU : public Layer {
public:
    Tensor3 forward(const Tensor3& x, bool train, Rng& rng) override;
    Tensor3 backward(const Tensor3& gy) override;
    const char* kind() const override { return "relu"; }

private:
    Tensor3 x_;
};

class Identity : public Layer {
public:
    Tensor3 forward(const Tensor3& x, bool train, Rng& rng) override;
    Tensor3 backward(const Tensor3& gy) override;
    const char* kind() const override { return "identity"; }

private:
    int b_ = 0, c_ = 0, l_ = 0;
};

// Kernel-2 style pooling with stride == kernel; trailing remainder dropped.
class MaxPool1d : public Layer {
public:
    explicit MaxPool1d(int k = 2) : k_(k) {}
    Tensor3 forward(const Tensor3& x, bool train, Rng& rng) override;
    Tensor3 backward(const Tensor3& gy) override;
    const char* kind() const override { return "maxpool1d"; }

private:
    int k_;
    int in_l_ = 0, b_ = 0, c_ = 0;
    std::vector<int> argmax_;
};

// Inverted scaling at train time; eval is the identity.
class Dropout : public Layer {
public:
    explicit Dropout(double p);
    Tensor3 forward(const Tensor3& x, bool train, Rng& rng) override;
    Tensor3 backward(const Tensor3& gy) override;
    const char* kind() const override { return "dropout"; }

private:
    double p_;
    std::vector<double> mask_;
    int b_ = 0, c_ = 0, l_ = 0;
};

// Acts on [B, Cin, 1] tensors.
class Linear : public Layer {
public:
    Linear(int cin, int cout, const std::string& name, Rng& rng);
    Tensor3 forward(const Tensor3& x, bool train, Rng& rng) override;
    Tensor3 backward(const Tensor3& gy) override;
    void collect(std::vector<Parameter*>& out) override;
    const char* kind() const override { return "linear"; }

    Parameter weight, bias;

private:
    int cin_, cout_;
    Tensor3 x_;
};

// [B,C,L] -> [B,C*L,1]; feeds Linear after conv stacks.
class Flatten : public Layer {
public:
    Tensor3 forward(const Tensor3& x, bool train, Rng& rng) override;
    Tensor3 backward(const Tensor3& gy) override;
    const char* kind() const override { return "flatten"; }

private:
    int b_ = 0, c_ = 0, l_ = 0;
};

// Declarative layer description; make_layer turns it into a Layer.
struct LayerSpec {
    enum class Kind { conv1d, deconv1d, batchnorm1d, relu, identity, maxpool1d, dropout, linear };
    Kind kind = Kind::identity;
    int cin = 0, cout = 0;
    int kernel = 3, stride = 1, pad = 1;
    int pool_k = 2;
    double drop_p = 0.0;
    std::string name;

    static LayerSpec conv(int cin, int cout, std::string name);
    static LayerSpec deconv(int cin, int cout, std::string name);
    static LayerSpec batchnorm(int c, std::string name);
    static LayerSpec relu();
    static LayerSpec identity();
    static LayerSpec maxpool(int k = 2);
    static LayerSpec dropout(double p);
    static LayerSpec linear(int cin, int cout, std::string name);
};

std::unique_ptr<Layer> make_layer(const LayerSpec& spec, Rng& rng);

class Stack {
public:
    void push(std::unique_ptr<Layer> layer) { layers_.push_back(std::move(layer)); }
    void push(const LayerSpec& spec, Rng& rng) { layers_.push_back(make_layer(spec, rng)); }

    Tensor3 forward(const Tensor3& x, bool train, Rng& rng);
    Tensor3 backward(const Tensor3& gy);

    std::vector<Parameter*> params();
    size_t depth() const { return layers_.size(); }
    Layer& layer(size_t i) { return *layers_[i]; }

private:
    std::vector<std::unique_ptr<Layer>> layers_;
};

}  // namespace vqts::core
