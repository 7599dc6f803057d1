#pragma once

#include <map>
#include <string>
#include <vector>

namespace vigil {

// Minimal structured text config: `key = value` lines, `[section]` headers
// that may repeat (order preserved), `#` comments. Scenario scripts, sleep
// schedules and bundle metadata all use this format.
struct ConfigSection {
    std::string name;
    std::map<std::string, std::string> entries;
};

struct ConfigDoc {
    std::map<std::string, std::string> top;  // keys before the first section
    std::vector<ConfigSection> sections;

    bool has(const std::string& key) const { return top.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
};

ConfigDoc parse_config(const std::string& text);
ConfigDoc load_config(const std::string& path);

double entry_double(const std::map<std::string, std::string>& entries, const std::string& key,
                    double fallback);

}  // namespace vigil
