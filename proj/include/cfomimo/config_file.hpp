#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cfomimo/config.hpp"

namespace cfomimo {

// Text config format:
//
//   # comment
//   M = 160
//   p_u = -14.5 dB        # powers take a "dB" or "lin" suffix; bare numbers are linear
//   sigma2 = 1 lin
//   pdp = uniform         # or "table", followed by a [pdp] section
//   [pdp]
//   0.5 0.3 0.2           # one row per user, L entries each
//
// Keys that are not SystemConfig fields are kept as extras so callers
// (the experiment drivers) can consume them.
class ConfigBuilder {
public:
    ConfigBuilder() = default;

    void load_text(std::string_view text, std::string_view origin = "<text>");
    void load_file(const std::string& path);

    /// Applies one `key=value` assignment, same syntax as a config line.
    void set(std::string_view key, std::string_view value);
    void set_assignment(std::string_view assignment);

    /// Resolves the PDP against the final K, L. Does not call validate().
    SystemConfig build() const;

    const std::map<std::string, std::string>& extras() const { return extras_; }

private:
    SystemConfig base_;
    bool uniform_ = true;
    std::vector<std::vector<double>> rows_;
    std::map<std::string, std::string> extras_;
};

/// Parses "<number> [dB|lin]" into a linear power ratio.
double parse_power(std::string_view text);

/// Serializes `config` in the format accepted by ConfigBuilder.
std::string to_text(const SystemConfig& config);

}  // namespace cfomimo
