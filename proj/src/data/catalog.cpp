#include "data/catalog.hpp"

#include <stdexcept>

namespace vqts::data {

const char* var_type_name(VarType t) {
    switch (t) {
        case VarType::real: return "real";
        case VarType::positive_real: return "positive_real";
        case VarType::count: return "count";
        case VarType::binary: return "binary";
    }
    return "?";
}

VarType var_type_from_name(const std::string& s) {
    if (s == "real") return VarType::real;
    if (s == "positive_real") return VarType::positive_real;
    if (s == "count") return VarType::count;
    if (s == "binary") return VarType::binary;
    throw std::invalid_argument("unknown variable type: " + s);
}

std::vector<VariableSpec> default_catalog() {
    std::vector<VariableSpec> c;

    VariableSpec v;
    v.name = "time_walking";
    v.type = VarType::positive_real;
    v.clip_min = 120.0;
    v.clip_max = 15000.0;
    v.missing_rate = 0.6279;
    v.regime_means = {1200.0, 5200.0, 2800.0};
    v.sd = 0.35;
    c.push_back(v);

    v = VariableSpec{};
    v.name = "app_usage";
    v.type = VarType::positive_real;
    v.clip_min = 180.0;
    v.clip_max = 35000.0;
    v.missing_rate = 0.8315;
    v.regime_means = {2500.0, 11000.0, 6000.0};
    v.sd = 0.4;
    c.push_back(v);

    v = VariableSpec{};
    v.name = "practiced_sport";
    v.type = VarType::binary;
    v.missing_rate = 0.0;
    v.regime_means = {0.15, 0.7, 0.4};
    v.exempt_synthetic = true;
    c.push_back(v);

    v = VariableSpec{};
    v.name = "total_steps";
    v.type = VarType::count;
    v.clip_min = 150.0;
    v.clip_max = 25000.0;
    v.missing_rate = 0.5530;
    v.regime_means = {3500.0, 11000.0, 7000.0};
    c.push_back(v);

    v = VariableSpec{};
    v.name = "location_clusters";
    v.type = VarType::count;
    v.clip_min = 1.0;
    v.clip_max = 15.0;
    v.missing_rate = 0.7253;
    v.regime_means = {3.0, 9.0, 6.0};
    c.push_back(v);

    v = VariableSpec{};
    v.name = "distance";
    v.type = VarType::positive_real;
    v.clip_min = 20.0;
    v.clip_max = 95000.0;
    v.missing_rate = 0.7301;
    v.regime_means = {3000.0, 24000.0, 11000.0};
    v.sd = 0.45;
    c.push_back(v);

    v = VariableSpec{};
    v.name = "time_at_home";
    v.type = VarType::positive_real;
    v.clip_min = 120.0;
    v.missing_rate = 0.8253;
    v.regime_means = {900.0, 320.0, 600.0};
    v.sd = 0.3;
    c.push_back(v);

    v = VariableSpec{};
    v.name = "weekend";
    v.type = VarType::binary;
    v.missing_rate = 0.0;
    v.regime_means = {0.0, 0.0, 0.0};  // unused, day-of-week rule applies
    v.weekend_rule = true;
    v.exempt_synthetic = true;
    c.push_back(v);

    v = VariableSpec{};
    v.name = "sleep_duration";
    v.type = VarType::positive_real;
    v.clip_min = 3600.0;
    v.clip_max = 54000.0;
    v.missing_rate = 0.6676;
    v.regime_means = {30000.0, 19000.0, 25000.0};
    v.sd = 0.18;
    c.push_back(v);

    v = VariableSpec{};
    v.name = "sleep_start";
    v.type = VarType::real;
    v.clip_min = -22500.0;
    v.clip_max = 25000.0;
    v.missing_rate = 0.6611;
    v.regime_means = {-4000.0, 8000.0, 1500.0};
    v.sd = 2800.0;
    c.push_back(v);

    return c;
}

int find_variable(const std::vector<VariableSpec>& catalog, const std::string& name) {
    for (size_t i = 0; i < catalog.size(); ++i)
        if (catalog[i].name == name) return static_cast<int>(i);
    return -1;
}

}  // namespace vqts::data
