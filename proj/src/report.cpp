#include "tfhx/report.hpp"

#include <cmath>
#include <fstream>

#include "tfhx/common.hpp"
#include "tfhx/profile_io.hpp"

namespace tfhx {
namespace {

ojson num_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

} // namespace

ojson constants_to_json(const std::vector<ConstantReport>& reports, std::uint64_t seed) {
    ojson arr = ojson::array();
    for (const auto& r : reports) {
        ojson e;
        e["name"] = r.name;
        e["closed_form"] = num_or_null(r.closed_form);
        e["numeric"] = r.numeric;
        e["rel_error"] = num_or_null(r.rel_error);
        if (!std::isnan(r.std_error)) e["std_error"] = r.std_error;
        if (!std::isnan(r.numeric_alt)) e["numeric_alt"] = r.numeric_alt;
        e["method"] = r.method;
        e["flagged"] = r.flagged;
        e["seed"] = seed;
        arr.push_back(std::move(e));
    }
    ojson out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "constants";
    out["seed"] = seed;
    out["reports"] = std::move(arr);
    return out;
}

ojson atom_correlation_to_json(const AtomCorrelationBreakdown& b) {
    ojson out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "atom-correlation";
    out["N"] = b.N;
    out["Z"] = b.Z;
    out["scaled"] = {{"log_coeff", b.log_coeff},
                     {"const_base", b.const_base},
                     {"A_value", b.A_value},
                     {"A_raw", b.A_raw},
                     {"B_value", b.B_value},
                     {"x_a", b.x_a},
                     {"x_b", b.x_b},
                     {"ec2_const", b.ec2_const},
                     {"ec2_integral", b.ec2_integral},
                     {"x_unknown", b.x_unknown}};
    out["hartree_per_electron"] = {{"log_per_lnN13", b.h_log_per_lnN13},
                                   {"log_per_lnN", b.h_log_per_lnN},
                                   {"const_universal", b.h_const_universal},
                                   {"x_a", b.h_x_a},
                                   {"x_b", b.h_x_b},
                                   {"x_unknown", b.h_x_unknown},
                                   {"ec2_const", b.h_ec2_const},
                                   {"ec2_integral", b.h_ec2_integral}};
    out["sign_convention"] = b.sign_convention;
    out["note"] = "x_unknown is the uncomputed constant x; it defaults to 0 and every"
                  " report carries it explicitly";
    return out;
}

ojson atom_hx_to_json(const AtomSmoothHX& hx, double N) {
    auto t = hx.terms(N);
    ojson out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "atom-smooth-hx";
    out["N"] = N;
    out["coefficients"] = {{"c7", hx.c7}, {"c6", hx.c6}, {"c5", hx.c5}};
    if (hx.c4) out["coefficients"]["c4"] = *hx.c4;
    if (hx.c3) out["coefficients"]["c3"] = *hx.c3;
    if (hx.c0) out["coefficients"]["c0"] = *hx.c0;
    out["terms_hartree"] = {{"N^{7/3}", t.t73}, {"N^2", t.t2},     {"N^{5/3}", t.t53},
                            {"N^{4/3}", t.t43}, {"N", t.t1},       {"N ln N", t.tlog}};
    out["total_hartree"] = t.total;
    return out;
}

ojson dot_energy_to_json(const DotEnergyBreakdown& b) {
    ojson out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "dot-energy";
    out["N"] = b.n_electrons;
    out["coefficients_scaled"] = {{"e_tf", b.e_tf},
                                  {"exchange_term", b.exchange_term},
                                  {"exchange_term_via_j", b.exchange_term_via_j},
                                  {"laplacian_term", b.laplacian_term},
                                  {"delta_term", b.delta_term},
                                  {"corr_const", b.corr_const},
                                  {"corr_integral", b.corr_integral}};
    out["total_scaled"] = b.total(b.n_electrons);
    return out;
}

ojson fit_to_json(const FitResult& fit, const CorrelationDataset& data) {
    ojson out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "fit";
    out["slope_convention"] = to_string(fit.convention);
    out["slope"] = fit.slope;
    out["c_prime"] = fit.c_prime;
    out["max_rel_dev_n_ge_10"] = fit.max_rel_dev_n_ge_10;
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        const auto& r = data.records[i];
        rows.push_back({{"n", r.n},
                        {"label", r.label},
                        {"source", r.source},
                        {"per_electron", r.e_corr_hartree / double(r.n)},
                        {"residual", fit.residuals[i]}});
    }
    out["records"] = std::move(rows);
    return out;
}

std::string fit_plot_csv(const FitResult& fit, const CorrelationDataset& data) {
    std::string s = "n,model,data\n";
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        const auto& r = data.records[i];
        double y = r.e_corr_hartree / double(r.n);
        double model = y - fit.residuals[i];
        s += std::to_string(r.n) + "," + format_g17(model) + "," + format_g17(y) + "\n";
    }
    return s;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_text_file: cannot open " + path);
    out << content;
    if (!out) throw IoError("write_text_file: write failed for " + path);
}

} // namespace tfhx
