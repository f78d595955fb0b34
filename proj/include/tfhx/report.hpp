#pragma once

#include <string>

#include <json.hpp>

#include "tfhx/atom_energy.hpp"
#include "tfhx/constants.hpp"
#include "tfhx/dataset.hpp"
#include "tfhx/dot_energy.hpp"

namespace tfhx {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

ojson constants_to_json(const std::vector<ConstantReport>& reports, std::uint64_t seed);
ojson atom_correlation_to_json(const AtomCorrelationBreakdown& b);
ojson atom_hx_to_json(const AtomSmoothHX& hx, double N);
ojson dot_energy_to_json(const DotEnergyBreakdown& b);
ojson fit_to_json(const FitResult& fit, const CorrelationDataset& data);

/// Figure-style plot data: one `n,model,data` row per record.
std::string fit_plot_csv(const FitResult& fit, const CorrelationDataset& data);

/// Writes with a trailing newline; throws IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

} // namespace tfhx
