#include "mbgk/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "mbgk/types.hpp"

namespace mbgk {

namespace {

const std::set<std::string>& knownKeys() {
    static const std::set<std::string> keys = {
        "case", "scheme", "tableau", "mood", "delta", "nx", "nv", "vmax", "cfl", "dt", "tf",
        "snapshot_every", "out", "rs", "tau", "cfl_recheck_every", "b_r", "b_v", "b_mindist",
        // sod
        "sod_rho_l", "sod_t_l", "sod_u_l", "sod_rho_r", "sod_t_r", "sod_u_r", "sod_x0",
        // plate
        "plate_p0", "plate_t0", "plate_t_left", "plate_t_right", "plate_l", "plate_chamber",
        "plate_rho_factor", "plate_area", "plate_mass", "plate_d",
        // cavity
        "cavity_p0", "cavity_t0", "cavity_umax", "cavity_l", "body_side", "body_x", "body_y",
        "body_rho_factor", "body_t",
        // shear
        "shear_rho0",
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::fromFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return fromString(ss.str());
}

Config Config::fromString(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineNo) + ": expected key = value");
        c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

void Config::set(const std::string& key, const std::string& value) {
    if (!knownKeys().count(key)) throw ConfigError("unknown config key '" + key + "'");
    kv_[key] = value;
}

void Config::setOverride(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("override must be key=value: '" + kv + "'");
    set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::getS(const std::string& key, const std::string& dflt) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? dflt : it->second;
}

double Config::getD(const std::string& key, double dflt) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("config key '" + key + "': not a number: '" + it->second + "'");
    }
}

int Config::getI(const std::string& key, int dflt) const {
    const double v = getD(key, dflt);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("config key '" + key + "': expected an integer");
    return i;
}

bool Config::getB(const std::string& key, bool dflt) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key '" + key + "': expected on/off");
}

std::string Config::fingerprint() const {
    std::string out;
    for (const auto& [k, v] : kv_) {
        if (k == "out" || k == "snapshot_every") continue;  // no effect on the solution
        out += k + " = " + v + "\n";
    }
    return out;
}

}  // namespace mbgk
