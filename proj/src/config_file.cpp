#include "vigil/config_file.hpp"

#include <fstream>
#include <sstream>

#include "vigil/errors.hpp"
#include "vigil/strconv.hpp"

namespace vigil {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string ConfigDoc::get(const std::string& key, const std::string& fallback) const {
    auto it = top.find(key);
    return it == top.end() ? fallback : it->second;
}

double ConfigDoc::get_double(const std::string& key, double fallback) const {
    auto it = top.find(key);
    if (it == top.end()) return fallback;
    try {
        return parse_double(it->second);
    } catch (const FormatError&) {
        throw ConfigError("config key '" + key + "' is not numeric: '" + it->second + "'");
    }
}

double entry_double(const std::map<std::string, std::string>& entries, const std::string& key,
                    double fallback) {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    try {
        return parse_double(it->second);
    } catch (const FormatError&) {
        throw ConfigError("config key '" + key + "' is not numeric: '" + it->second + "'");
    }
}

ConfigDoc parse_config(const std::string& text) {
    ConfigDoc doc;
    ConfigSection* current = nullptr;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (auto hash = line.find('#'); hash != std::string::npos) line = strip(line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw ConfigError("line " + fmt_int(lineno) + ": malformed section header");
            doc.sections.push_back({strip(line.substr(1, line.size() - 2)), {}});
            current = &doc.sections.back();
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + fmt_int(lineno) + ": expected key = value");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + fmt_int(lineno) + ": empty key");
        auto& dest = current ? current->entries : doc.top;
        if (!dest.emplace(key, value).second)
            throw ConfigError("line " + fmt_int(lineno) + ": duplicate key '" + key + "'");
    }
    return doc;
}

ConfigDoc load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace vigil
