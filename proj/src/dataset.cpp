#include "tfhx/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tfhx/common.hpp"

namespace tfhx {

CorrelationDataset load_correlation_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_correlation_csv: cannot open " + path);
    CorrelationDataset ds;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    std::set<std::pair<std::string, int>> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "n,label,e_corr_hartree,source")
                throw std::invalid_argument("load_correlation_csv: bad header at line " +
                                            std::to_string(lineno));
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string ncell, label, ecell, source;
        if (!std::getline(ss, ncell, ',') || !std::getline(ss, label, ',') ||
            !std::getline(ss, ecell, ',') || !std::getline(ss, source))
            throw std::invalid_argument("load_correlation_csv: malformed row at line " +
                                        std::to_string(lineno));
        CorrelationRecord rec;
        try {
            rec.n = std::stoi(ncell);
            rec.e_corr_hartree = std::stod(ecell);
        } catch (const std::exception&) {
            throw std::invalid_argument("load_correlation_csv: bad number at line " +
                                        std::to_string(lineno));
        }
        rec.label = label;
        rec.source = source;
        if (rec.n < 1)
            throw std::invalid_argument("load_correlation_csv: n must be >= 1 at line " +
                                        std::to_string(lineno));
        if (!std::isfinite(rec.e_corr_hartree))
            throw std::invalid_argument("load_correlation_csv: non-finite energy at line " +
                                        std::to_string(lineno));
        if (rec.source != "exp" && rec.source != "ext-hf")
            throw std::invalid_argument("load_correlation_csv: unknown source tag at line " +
                                        std::to_string(lineno));
        if (!seen.insert({rec.source, rec.n}).second)
            throw std::invalid_argument("load_correlation_csv: duplicate n within source at line " +
                                        std::to_string(lineno));
        ds.records.push_back(std::move(rec));
    }
    if (!header_seen)
        throw std::invalid_argument("load_correlation_csv: missing header in " + path);
    return ds;
}

std::string to_string(SlopeConvention c) {
    return c == SlopeConvention::per_lnN ? "per-lnN" : "per-lnN^(1/3)";
}

FitResult fit_offset(const CorrelationDataset& data, SlopeConvention convention,
                     double theory_slope) {
    if (data.records.size() < 3)
        throw std::invalid_argument("fit_offset: need at least 3 records");
    FitResult fit;
    fit.convention = convention;
    fit.slope = theory_slope;

    auto logterm = [&](double n) {
        double l = std::log(n);
        return convention == SlopeConvention::per_lnN ? l : l / 3.0;
    };
    // least squares in c' alone: c' = mean(y + slope L), accumulated in a
    // canonical record order so the fit is exactly reorder-invariant
    std::vector<std::size_t> order(data.records.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = data.records[a];
        const auto& rb = data.records[b];
        if (ra.n != rb.n) return ra.n < rb.n;
        if (ra.source != rb.source) return ra.source < rb.source;
        return ra.label < rb.label;
    });
    double acc = 0.0;
    for (std::size_t i : order) {
        const auto& r = data.records[i];
        double y = r.e_corr_hartree / double(r.n);
        acc += y + theory_slope * logterm(double(r.n));
    }
    fit.c_prime = acc / double(data.records.size());

    fit.residuals.reserve(data.records.size());
    double worst = 0.0;
    for (const auto& r : data.records) {
        double y = r.e_corr_hartree / double(r.n);
        double model = -theory_slope * logterm(double(r.n)) + fit.c_prime;
        double res = y - model;
        fit.residuals.push_back(res);
        if (r.n >= 10 && model != 0.0) worst = std::max(worst, std::abs(res / model));
    }
    fit.max_rel_dev_n_ge_10 = worst;
    return fit;
}

} // namespace tfhx
