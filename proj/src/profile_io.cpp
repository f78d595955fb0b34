#include "tfhx/profile_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tfhx/common.hpp"

namespace tfhx {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_profile_csv(const std::string& path, const ProfileDump& p) {
    std::ofstream out(path);
    if (!out) throw IoError("write_profile_csv: cannot open " + path);
    for (const auto& [k, v] : p.meta) out << "# " << k << " = " << v << "\n";
    out << "r,mu_plus,mu_plus_prime\n";
    for (std::size_t i = 0; i < p.r.size(); ++i)
        out << format_g17(p.r[i]) << ',' << format_g17(p.mu_plus[i]) << ','
            << format_g17(p.mu_plus_prime[i]) << "\n";
    if (!out) throw IoError("write_profile_csv: write failed for " + path);
}

ProfileDump read_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_profile_csv: cannot open " + path);
    ProfileDump p;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string k = line.substr(1, eq - 1);
                std::string v = line.substr(eq + 1);
                auto trim = [](std::string s) {
                    std::size_t a = s.find_first_not_of(" \t");
                    std::size_t b = s.find_last_not_of(" \t\r");
                    return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
                };
                p.meta[trim(k)] = trim(v);
            }
            continue;
        }
        if (!header_seen) {
            if (line.rfind("r,mu_plus,mu_plus_prime", 0) != 0)
                throw std::invalid_argument("read_profile_csv: bad column header at line " +
                                         std::to_string(lineno));
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string cell;
        double vals[3];
        for (int c = 0; c < 3; ++c) {
            if (!std::getline(ss, cell, ','))
                throw std::invalid_argument("read_profile_csv: malformed row at line " +
                                         std::to_string(lineno));
            try {
                vals[c] = std::stod(cell);
            } catch (const std::exception&) {
                throw std::invalid_argument("read_profile_csv: bad number at line " +
                                         std::to_string(lineno));
            }
        }
        p.r.push_back(vals[0]);
        p.mu_plus.push_back(vals[1]);
        p.mu_plus_prime.push_back(vals[2]);
    }
    if (!header_seen) throw std::invalid_argument("read_profile_csv: missing column header");
    return p;
}

} // namespace tfhx
