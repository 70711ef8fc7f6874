#pragma once

#include <span>
#include <string_view>

namespace silab {

inline constexpr const char* kThresholdsVersion = "1";

enum class Provenance { Paper, Derived, PilotCalibrated };

/// One named statistical pass threshold. Every experiment verdict records
/// the thresholds it used together with their provenance, so reports stay
/// auditable when values are recalibrated.
struct Threshold {
    const char* key;
    double value;
    Provenance provenance;
    const char* note;
};

const Threshold& threshold(std::string_view key); // ParameterError when missing
double threshold_value(std::string_view key);
std::span<const Threshold> all_thresholds();
const char* provenance_name(Provenance p);

} // namespace silab
