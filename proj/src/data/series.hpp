#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "data/catalog.hpp"

namespace vqts::data {

enum class Space { original, scaled };
enum class Corruption { none, mcar, mnar };

const char* corruption_name(Corruption c);
Corruption corruption_from_name(const std::string& s);

// Trinary mask codes. The mask is the source of truth for observability;
// values at mask==0 hold a sentinel (0) that no loss or metric ever reads,
// while mask==2 keeps the true value so imputation can be scored against it.
inline constexpr std::uint8_t kMissing = 0;
inline constexpr std::uint8_t kObserved = 1;
inline constexpr std::uint8_t kSynthetic = 2;

// Date-contiguous block of one patient's record: F variables over `length`
// consecutive days starting at `start_day`.
struct TimeSeriesSample {
    std::string patient;
    int start_day = 0;
    int n_features = 0;
    int length = 0;
    std::vector<double> values;      // F x T row-major
    std::vector<std::uint8_t> mask;  // F x T trinary
    Space space = Space::original;

    TimeSeriesSample() = default;
    TimeSeriesSample(std::string patient_, int start, int f, int t)
        : patient(std::move(patient_)),
          start_day(start),
          n_features(f),
          length(t),
          values(static_cast<size_t>(f) * t, 0.0),
          mask(static_cast<size_t>(f) * t, kMissing) {}

    double& value(int f, int t) { return values[static_cast<size_t>(f) * length + t]; }
    double value(int f, int t) const { return values[static_cast<size_t>(f) * length + t]; }
    std::uint8_t& mask_at(int f, int t) { return mask[static_cast<size_t>(f) * length + t]; }
    std::uint8_t mask_at(int f, int t) const { return mask[static_cast<size_t>(f) * length + t]; }
};

// A possibly gappy record as imported: day indices strictly increasing but not
// necessarily consecutive.
struct RawSeries {
    std::string patient;
    std::vector<int> days;
    int n_features = 0;
    std::vector<double> values;      // F x N
    std::vector<std::uint8_t> mask;  // F x N

    double value(int f, int i) const { return values[static_cast<size_t>(f) * days.size() + i]; }
    std::uint8_t mask_at(int f, int i) const {
        return mask[static_cast<size_t>(f) * days.size() + i];
    }
};

// Splits a record at day gaps into contiguous samples, dropping pieces shorter
// than min_length; order of days is preserved.
std::vector<TimeSeriesSample> split_on_gaps(const RawSeries& raw, int min_length);

// Flags out-of-bounds values as missing (mask 0, value sentinel); in-range
// values are untouched. Bounds come from the catalog.
void clip_and_flag(RawSeries& raw, const std::vector<VariableSpec>& catalog);
void clip_and_flag(TimeSeriesSample& sample, const std::vector<VariableSpec>& catalog);

// Collapses the trinary mask to the binary observation mask: 1 -> 1; 0,2 -> 0.
std::vector<double> binarize_mask(const std::vector<std::uint8_t>& trinary);

}  // namespace vqts::data
