#include <set>
#include <sstream>

#include "chadkg/mapping/mapping.hpp"

namespace chadkg::mapping {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::set<std::string> seen_sections;
    bool have_configuration = false;
    DatasetSection current;
    bool in_dataset = false;
    std::set<std::string> current_keys;

    auto finish_dataset = [&]() {
        if (!in_dataset) return;
        if (!current_keys.contains("mappings"))
            throw ConfigError("section [" + current.name + "] is missing mandatory key 'mappings'");
        if (!current_keys.contains("file_path"))
            throw ConfigError("section [" + current.name + "] is missing mandatory key 'file_path'");
        cfg.datasets.push_back(current);
        current = DatasetSection{};
        current_keys.clear();
        in_dataset = false;
    };

    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            finish_dataset();
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
            if (!seen_sections.insert(section).second)
                throw ConfigError("duplicate section [" + section + "]");
            if (section == "CONFIGURATION") {
                have_configuration = true;
            } else {
                in_dataset = true;
                current.name = section;
            }
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        if (section == "CONFIGURATION") {
            if (key == "output_file") {
                cfg.output_file = value;
            } else if (key == "output_format") {
                if (value != "ntriples" && value != "turtle")
                    throw ConfigError("output_format must be ntriples or turtle, got '" + value + "'");
                cfg.output_format = value;
            } else {
                throw ConfigError("unknown key '" + key + "' in [CONFIGURATION]");
            }
        } else {
            if (key == "mappings") current.mapping_path = value;
            else if (key == "file_path") current.input_path = value;
            else throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
            current_keys.insert(key);
        }
    }
    finish_dataset();

    if (!have_configuration)
        throw ConfigError("missing [CONFIGURATION] section");
    if (cfg.output_file.empty())
        throw ConfigError("[CONFIGURATION] is missing mandatory key 'output_file'");
    if (cfg.datasets.empty())
        throw ConfigError("no dataset sections declared");
    return cfg;
}

}  // namespace chadkg::mapping
