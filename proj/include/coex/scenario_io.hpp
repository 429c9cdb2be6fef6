#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coex/game.hpp"

namespace coex::io {

// ---- minimal TOML subset -------------------------------------------------
//
// Supports exactly what the configuration schema needs: [table] headers,
// [[table]] arrays, key = value with numbers, quoted strings, booleans and
// flat arrays, and # comments.

struct TomlValue {
    enum class Kind { number, string, boolean, array } kind = Kind::number;
    double number = 0.0;
    std::string str;
    bool boolean = false;
    std::vector<TomlValue> array;
};

struct TomlTable {
    std::map<std::string, TomlValue> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::string string_or(const std::string& key, const std::string& fallback) const;
    bool boolean_or(const std::string& key, bool fallback) const;
};

struct TomlDoc {
    TomlTable root;
    std::map<std::string, TomlTable> tables;
    std::map<std::string, std::vector<TomlTable>> table_arrays;

    const TomlTable& table(const std::string& name) const;  // empty table if absent
};

TomlDoc parse_toml(const std::string& text);
TomlDoc parse_toml_file(const std::string& path);

// "section.key=value" overrides; keys are checked against the schema.
void apply_override(TomlDoc& doc, const std::string& assignment);

// ---- scenario files --------------------------------------------------------

struct McParams {
    int realizations = 2000;
    std::vector<double> gamma_grid_db;
    mc::WifiAssociation wifi_mode = mc::WifiAssociation::cluster_parent;
};

struct CaseStudyParams {
    std::string geodata_path;
    double lon_min = 0.0, lat_min = 0.0, lon_max = 0.0, lat_max = 0.0;
    int users_per_entity = 150;
    std::uint64_t owner_seed = 42;
};

struct ScenarioFile {
    std::string mode = "analytic";  // analytic | montecarlo | casestudy
    analytic::Scenario scenario;
    std::vector<game::Entity> entities;
    game::GameConfig game;
    McParams mc;
    CaseStudyParams casestudy;
    std::vector<std::string> warnings;       // out-of-range parameter notes
    nlohmann::ordered_json resolved;         // fully resolved SI configuration
};

ScenarioFile load_scenario(const std::string& path,
                           const std::vector<std::string>& overrides = {});

// "start:stop:step" in dB, inclusive of stop within half a step.
std::vector<double> parse_gamma_range(const std::string& spec);

// ---- geodata ---------------------------------------------------------------

struct BBox {
    double lon_min = 0.0, lat_min = 0.0, lon_max = 0.0, lat_max = 0.0;
};

// CSV header lon,lat,kind[,owner]; kind in {bs, ap, incumbent}.  Records are
// filtered to the box and projected to metres about its centre with the
// equirectangular map x = (lon-lon0) * 111320 cos(lat0), y = (lat-lat0) * 111320.
// Missing owners are assigned by the share vector, deterministically in seed.
geom::Deployment load_geodata(const std::string& path, const BBox& bbox,
                              std::span<const double> shares, double exclusion_radius_m,
                              std::uint64_t seed);

// ---- results ---------------------------------------------------------------

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
};

std::string cell(double v);  // 9 significant digits
std::string csv_string(const ResultTable& table);
void write_csv(const ResultTable& table, const std::string& path);
void write_json(const nlohmann::ordered_json& j, const std::string& path);

}  // namespace coex::io
