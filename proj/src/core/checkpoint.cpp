#include "core/checkpoint.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace vqts::core {

namespace {
size_t shape_numel(const std::vector<int>& shape) {
    size_t n = 1;
    for (int s : shape) n *= static_cast<size_t>(s);
    return n;
}
}  // namespace

void Checkpoint::put(const std::string& name, std::vector<int> shape,
                     std::vector<double> values) {
    if (shape_numel(shape) != values.size())
        throw std::invalid_argument("checkpoint: shape/value mismatch for " + name);
    arrays[name] = NamedArray{std::move(shape), std::move(values)};
}

const NamedArray& Checkpoint::get(const std::string& name) const {
    auto it = arrays.find(name);
    if (it == arrays.end()) throw std::runtime_error("checkpoint: missing array " + name);
    return it->second;
}

void Checkpoint::save(const std::string& path) const {
    nlohmann::json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["meta"] = meta.is_null() ? nlohmann::json::object() : meta;
    nlohmann::json arr = nlohmann::json::object();
    for (const auto& [name, a] : arrays) {
        for (double x : a.values)
            if (!std::isfinite(x))
                throw std::runtime_error("checkpoint: non-finite value in " + name);
        arr[name] = {{"shape", a.shape}, {"values", a.values}};
    }
    j["arrays"] = std::move(arr);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("checkpoint: cannot write " + tmp);
        out << j.dump();
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("checkpoint: rename failed for " + path);
}

Checkpoint Checkpoint::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != kFormat)
        throw std::runtime_error("checkpoint: bad format tag in " + path);
    if (j.value("version", -1) != kVersion)
        throw std::runtime_error("checkpoint: unsupported version in " + path);
    Checkpoint ckpt;
    ckpt.meta = j.value("meta", nlohmann::json::object());
    for (const auto& [name, a] : j.at("arrays").items()) {
        NamedArray na;
        na.shape = a.at("shape").get<std::vector<int>>();
        na.values = a.at("values").get<std::vector<double>>();
        if (shape_numel(na.shape) != na.values.size())
            throw std::runtime_error("checkpoint: corrupt array " + name);
        ckpt.arrays[name] = std::move(na);
    }
    return ckpt;
}

void store_params(Checkpoint& ckpt, const std::vector<Parameter*>& params) {
    for (const Parameter* p : params) {
        ckpt.put(p->name, p->shape, p->value);
        if (p->trainable) {
            ckpt.put(p->name + ".m1", p->shape, p->m1);
            ckpt.put(p->name + ".m2", p->shape, p->m2);
        }
    }
}

void load_params(const Checkpoint& ckpt, const std::vector<Parameter*>& params) {
    for (Parameter* p : params) {
        const NamedArray& a = ckpt.get(p->name);
        if (a.shape != p->shape)
            throw std::runtime_error("checkpoint: shape mismatch for " + p->name);
        p->value = a.values;
        if (p->trainable) {
            p->m1 = ckpt.get(p->name + ".m1").values;
            p->m2 = ckpt.get(p->name + ".m2").values;
        }
    }
}

}  // namespace vqts::core
