#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "coex/scenario_io.hpp"

namespace coex::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// strips a trailing comment that is not inside a quoted string
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

TomlValue parse_value(const std::string& raw, int line_no);

TomlValue parse_array(const std::string& raw, int line_no) {
    TomlValue v;
    v.kind = TomlValue::Kind::array;
    std::string inner = trim(raw.substr(1, raw.size() - 2));
    if (inner.empty()) return v;
    std::vector<std::string> parts;
    int depth = 0;
    bool quoted = false;
    std::string cur;
    for (char c : inner) {
        if (c == '"') quoted = !quoted;
        if (!quoted) {
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == ',' && depth == 0) {
                parts.push_back(cur);
                cur.clear();
                continue;
            }
        }
        cur.push_back(c);
    }
    parts.push_back(cur);
    for (const auto& p : parts) v.array.push_back(parse_value(trim(p), line_no));
    return v;
}

TomlValue parse_value(const std::string& raw, int line_no) {
    TomlValue v;
    if (raw.empty()) throw ParameterError("toml: empty value at line " + std::to_string(line_no));
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"')
            throw ParameterError("toml: unterminated string at line " + std::to_string(line_no));
        v.kind = TomlValue::Kind::string;
        v.str = raw.substr(1, raw.size() - 2);
        return v;
    }
    if (raw.front() == '[') {
        if (raw.back() != ']')
            throw ParameterError("toml: unterminated array at line " + std::to_string(line_no));
        return parse_array(raw, line_no);
    }
    if (raw == "true" || raw == "false") {
        v.kind = TomlValue::Kind::boolean;
        v.boolean = raw == "true";
        return v;
    }
    char* end = nullptr;
    v.number = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0')
        throw ParameterError("toml: cannot parse value '" + raw + "' at line " +
                             std::to_string(line_no));
    v.kind = TomlValue::Kind::number;
    return v;
}

}  // namespace

TomlDoc parse_toml(const std::string& text) {
    TomlDoc doc;
    TomlTable* current = &doc.root;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            const bool array = line.size() > 1 && line[1] == '[';
            const std::size_t close = line.find(array ? "]]" : "]");
            if (close == std::string::npos)
                throw ParameterError("toml: bad table header at line " + std::to_string(line_no));
            const std::string name = trim(line.substr(array ? 2 : 1, close - (array ? 2 : 1)));
            if (name.empty())
                throw ParameterError("toml: empty table name at line " + std::to_string(line_no));
            if (array) {
                doc.table_arrays[name].emplace_back();
                current = &doc.table_arrays[name].back();
            } else {
                current = &doc.tables[name];
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError("toml: expected key = value at line " + std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ParameterError("toml: empty key at line " + std::to_string(line_no));
        current->values[key] = parse_value(trim(line.substr(eq + 1)), line_no);
    }
    return doc;
}

TomlDoc parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_toml(ss.str());
}

double TomlTable::number(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ParameterError("missing config key: " + key);
    if (it->second.kind != TomlValue::Kind::number)
        throw ParameterError("config key is not a number: " + key);
    return it->second.number;
}

double TomlTable::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::string TomlTable::string_or(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::string)
        throw ParameterError("config key is not a string: " + key);
    return it->second.str;
}

bool TomlTable::boolean_or(const std::string& key, bool fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::boolean)
        throw ParameterError("config key is not a boolean: " + key);
    return it->second.boolean;
}

const TomlTable& TomlDoc::table(const std::string& name) const {
    static const TomlTable empty;
    auto it = tables.find(name);
    return it == tables.end() ? empty : it->second;
}

}  // namespace coex::io
