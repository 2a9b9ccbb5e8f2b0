#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vqts::data {

enum class VarType { real, positive_real, count, binary };

const char* var_type_name(VarType t);
VarType var_type_from_name(const std::string& s);

// One behavioral variable: its value family, clipping bounds, baseline natural
// missingness, and the per-regime generative parameters used by the synthetic
// cohort. `regime_means` holds the location per regime (Poisson rate for
// counts, Bernoulli probability for binary; cycled when a cohort has more
// regimes than entries).
struct VariableSpec {
    std::string name;
    VarType type = VarType::real;
    std::optional<double> clip_min;
    std::optional<double> clip_max;
    double missing_rate = 0.0;
    std::vector<double> regime_means;
    double sd = 1.0;               // normal sd, or log-space sd for positive variables
    bool weekend_rule = false;     // deterministic day-of-week indicator
    bool exempt_synthetic = false; // never receives synthetic missingness
};

// The ten-variable default set with the clipping bounds and missingness rates
// the pipeline was tuned on.
std::vector<VariableSpec> default_catalog();

int find_variable(const std::vector<VariableSpec>& catalog, const std::string& name);

}  // namespace vqts::data
