#pragma once

#include <map>
#include <string>
#include <vector>

namespace tfhx {

/// Radial profile dump: `#`-comment header with solver metadata, then
/// `r,mu_plus,mu_plus_prime` rows at 17 significant digits (lossless for
/// doubles, so emit -> load round-trips bit-exactly).
struct ProfileDump {
    std::map<std::string, std::string> meta; // d, q or confinement, mu_global, residual, grid size
    std::vector<double> r;
    std::vector<double> mu_plus;
    std::vector<double> mu_plus_prime;
};

void write_profile_csv(const std::string& path, const ProfileDump& p);
ProfileDump read_profile_csv(const std::string& path);

std::string format_g17(double v);

} // namespace tfhx
