#pragma once

#include <string>
#include <vector>

namespace tfhx {

/// One reference correlation-energy record: total (not per-electron)
/// HF-relative correlation energy in hartrees, typically negative.
struct CorrelationRecord {
    int n = 0;
    std::string label;
    double e_corr_hartree = 0.0;
    std::string source; // "exp" or "ext-hf"
};

struct CorrelationDataset {
    std::vector<CorrelationRecord> records;
};

/// CSV schema: header `n,label,e_corr_hartree,source`; duplicate n within a
/// source or an unknown source tag is rejected with the offending line number.
CorrelationDataset load_correlation_csv(const std::string& path);

enum class SlopeConvention { per_lnN, per_lnN13 };

std::string to_string(SlopeConvention c);

/// Least-squares offset of the per-electron model
///   e/N = -slope * L(N) + c'
/// with L = ln N (per_lnN) or ln N^{1/3} (per_lnN13) and the slope held at the
/// supplied theory value.
struct FitResult {
    SlopeConvention convention = SlopeConvention::per_lnN;
    double slope = 0.0;
    double c_prime = 0.0;
    std::vector<double> residuals;       // data minus model, per record
    double max_rel_dev_n_ge_10 = 0.0;    // max |residual/model| over n >= 10
};

FitResult fit_offset(const CorrelationDataset& data, SlopeConvention convention,
                     double theory_slope);

} // namespace tfhx
