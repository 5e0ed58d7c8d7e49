#pragma once

#include <map>
#include <string>
#include <vector>

#include "sod/engine.hpp"

namespace sod {

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Flat key=value text config; '#' starts a comment, blank lines ignored.
// Parse and apply errors carry the source location.
struct ConfigMap {
    struct Entry {
        std::string value;
        std::string where;  // "file:line" or "--set"
    };
    std::map<std::string, Entry> entries;

    void set(const std::string& key, const std::string& value, const std::string& where);
};

ConfigMap parse_config_file(const std::string& path);
ConfigMap parse_config_text(const std::string& text, const std::string& source);

// "key=value" items from --set; later settings win.
void apply_overrides(ConfigMap& config, const std::vector<std::string>& overrides);

// Overlays the entries onto defaults; unknown keys are errors.
SimConfig make_sim_config(const ConfigMap& config);

}  // namespace sod
