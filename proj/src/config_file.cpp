#include "cfomimo/config_file.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cfomimo/errors.hpp"

namespace cfomimo {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(std::string_view s, std::string_view key) {
    const std::string str(trim(s));
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(str, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != str.size())
        throw ConfigError("bad number '" + str + "' for key '" + std::string(key) + "'");
    return v;
}

int parse_int(std::string_view s, std::string_view key) {
    const double v = parse_double(s, key);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError("key '" + std::string(key) + "' needs an integer");
    return static_cast<int>(v);
}

bool parse_bool(std::string_view s, std::string_view key) {
    const auto v = trim(s);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + std::string(key) + "' needs true/false");
}

}  // namespace

double parse_power(std::string_view text) {
    auto t = trim(text);
    const auto ends_with = [&](std::string_view suffix) {
        return t.size() >= suffix.size() &&
               t.substr(t.size() - suffix.size()) == suffix;
    };
    if (ends_with("dB") || ends_with("db")) {
        return std::pow(10.0, parse_double(t.substr(0, t.size() - 2), "power") / 10.0);
    }
    if (ends_with("lin")) return parse_double(t.substr(0, t.size() - 3), "power");
    return parse_double(t, "power");
}

void ConfigBuilder::set(std::string_view raw_key, std::string_view value) {
    const std::string key(trim(raw_key));
    value = trim(value);
    if (key == "M") base_.M = parse_int(value, key);
    else if (key == "K") base_.K = parse_int(value, key);
    else if (key == "L") base_.L = parse_int(value, key);
    else if (key == "N") base_.N = parse_int(value, key);
    else if (key == "N_u") base_.N_u = parse_int(value, key);
    else if (key == "p_u") base_.p_u = parse_power(value);
    else if (key == "sigma2") base_.sigma2 = parse_power(value);
    else if (key == "kappa_ppm") base_.kappa_ppm = parse_double(value, key);
    else if (key == "f_c_hz") base_.f_c_hz = parse_double(value, key);
    else if (key == "bw_hz") base_.bw_hz = parse_double(value, key);
    else if (key == "allow_large_cfo") base_.allow_large_cfo = parse_bool(value, key);
    else if (key == "pdp") {
        if (value == "uniform") {
            uniform_ = true;
            rows_.clear();
        } else if (value == "table") {
            uniform_ = false;
        } else {
            throw ConfigError("pdp must be 'uniform' or 'table'");
        }
    } else if (key.empty()) {
        throw ConfigError("empty key");
    } else {
        extras_[key] = std::string(value);
    }
}

void ConfigBuilder::set_assignment(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
    set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

void ConfigBuilder::load_text(std::string_view text, std::string_view origin) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    bool in_pdp = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view v(line);
        if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
        v = trim(v);
        if (v.empty()) continue;
        try {
            if (v.front() == '[') {
                if (v != "[pdp]") throw ConfigError("unknown section " + std::string(v));
                in_pdp = true;
                uniform_ = false;
                rows_.clear();
                continue;
            }
            if (in_pdp && v.find('=') == std::string_view::npos) {
                std::istringstream row{std::string(v)};
                std::vector<double> taps;
                std::string tok;
                while (row >> tok) taps.push_back(parse_power(tok));
                rows_.push_back(std::move(taps));
                continue;
            }
            in_pdp = false;
            set_assignment(v);
        } catch (const ConfigError& e) {
            std::ostringstream os;
            os << origin << ":" << lineno << ": " << e.what();
            throw ConfigError(os.str());
        }
    }
}

void ConfigBuilder::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    load_text(ss.str(), path);
}

SystemConfig ConfigBuilder::build() const {
    SystemConfig c = base_;
    if (uniform_) {
        c.pdp = uniform_pdp(std::max(c.K, 1), std::max(c.L, 1));
    } else {
        if (rows_.empty()) throw ConfigError("pdp = table but no [pdp] rows given");
        c.pdp = PowerDelayProfile(rows_);
    }
    return c;
}

std::string to_text(const SystemConfig& c) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "M = " << c.M << "\nK = " << c.K << "\nL = " << c.L << "\nN = " << c.N
       << "\nN_u = " << c.N_u << "\np_u = " << c.p_u << " lin\nsigma2 = " << c.sigma2
       << " lin\nkappa_ppm = " << c.kappa_ppm << "\nf_c_hz = " << c.f_c_hz
       << "\nbw_hz = " << c.bw_hz
       << "\nallow_large_cfo = " << (c.allow_large_cfo ? "true" : "false") << "\n";
    bool uniform = true;
    for (int k = 0; k < c.pdp.users(); ++k)
        for (int l = 0; l < c.pdp.taps(); ++l)
            if (c.pdp(k, l) != 1.0 / c.pdp.taps()) uniform = false;
    if (uniform) {
        os << "pdp = uniform\n";
    } else {
        os << "pdp = table\n[pdp]\n";
        for (int k = 0; k < c.pdp.users(); ++k) {
            for (int l = 0; l < c.pdp.taps(); ++l) os << (l ? " " : "") << c.pdp(k, l);
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace cfomimo
