#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/layers.hpp"

namespace vqts::core {

// Versioned JSON container of named arrays. Doubles survive the round trip
// bit-exactly (shortest-exact serialization); NaN/Inf are rejected on save.
struct NamedArray {
    std::vector<int> shape;
    std::vector<double> values;
};

struct Checkpoint {
    static constexpr int kVersion = 1;
    static constexpr const char* kFormat = "vqts-checkpoint";

    std::map<std::string, NamedArray> arrays;
    nlohmann::json meta;  // free-form: config echo, optimizer step, codebook stats

    void put(const std::string& name, std::vector<int> shape, std::vector<double> values);
    const NamedArray& get(const std::string& name) const;
    bool has(const std::string& name) const { return arrays.count(name) != 0; }

    void save(const std::string& path) const;  // atomic: tmp file + rename
    static Checkpoint load(const std::string& path);
};

// Stores value plus Adam moments for each parameter under its own name.
void store_params(Checkpoint& ckpt, const std::vector<Parameter*>& params);
// Restores by name with shape checks; throws on a missing or mismatched entry.
void load_params(const Checkpoint& ckpt, const std::vector<Parameter*>& params);

}  // namespace vqts::core
