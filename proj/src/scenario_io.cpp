#include "coex/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace coex::io {

namespace {

// known keys per section, used to validate --set overrides
const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"", {"mode"}},
        {"scenario",
         {"lambda_z_per_km2", "lambda_c_per_km2", "lambda_w_per_km2", "exclusion_radius_m",
          "wifi_range_m", "power_z_w", "power_c_w", "power_w_w", "power_z_dbm", "power_c_dbm",
          "power_w_dbm", "bandwidth_unlicensed_mhz", "bandwidth_cell_licensed_mhz",
          "bandwidth_wifi_legacy_mhz", "alpha", "sinr_threshold_db", "window_radius_km",
          "noise", "noise_figure_db", "noise_c_w", "noise_w_w"}},
        {"game",
         {"grid_step", "epsilon", "max_activations", "seed", "burn_in_fraction"}},
        {"montecarlo", {"realizations", "gamma_grid_db", "wifi_association"}},
        {"casestudy",
         {"geodata", "bbox_lon_min", "bbox_lat_min", "bbox_lon_max", "bbox_lat_max",
          "users_per_entity", "owner_seed"}},
    };
    return s;
}

double power_watt(const TomlTable& t, const std::string& base, double fallback_w,
                  std::vector<std::string>* warnings, double cap_dbm) {
    double w = fallback_w;
    if (t.has(base + "_w"))
        w = t.number(base + "_w");
    else if (t.has(base + "_dbm"))
        w = units::dbm_to_watt(t.number(base + "_dbm"));
    if (warnings && units::watt_to_dbm(w) > cap_dbm + 1e-9) {
        std::ostringstream ss;
        ss << base << " = " << units::watt_to_dbm(w) << " dBm exceeds the expected cap of "
           << cap_dbm << " dBm";
        warnings->push_back(ss.str());
    }
    return w;
}

void warn_range(std::vector<std::string>& warnings, const std::string& name, double value,
                double lo, double hi) {
    if (value < lo - 1e-12 || value > hi + 1e-12) {
        std::ostringstream ss;
        ss << name << " = " << value << " outside the expected range [" << lo << ", " << hi
           << "]";
        warnings.push_back(ss.str());
    }
}

}  // namespace

std::vector<double> parse_gamma_range(const std::string& spec) {
    double start = 0, stop = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3)
        throw ParameterError("gamma range must be start:stop:step, got '" + spec + "'");
    if (!(step > 0.0)) throw ParameterError("gamma range step must be positive");
    if (stop < start) throw ParameterError("gamma range stop before start");
    std::vector<double> out;
    for (double g = start; g <= stop + 0.5 * step; g += step) out.push_back(g);
    return out;
}

void apply_override(TomlDoc& doc, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ParameterError("override must be section.key=value: " + assignment);
    const std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    const std::size_t dot = path.find('.');
    const std::string section = dot == std::string::npos ? "" : path.substr(0, dot);
    const std::string key = dot == std::string::npos ? path : path.substr(dot + 1);

    auto sect = schema().find(section);
    if (sect == schema().end() || !sect->second.count(key))
        throw ParameterError("override references unknown config key: " + path);

    TomlDoc parsed = parse_toml(key + " = " + value);
    TomlTable& target = section.empty() ? doc.root : doc.tables[section];
    target.values[key] = parsed.root.values.at(key);
}

ScenarioFile load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
    TomlDoc doc = parse_toml_file(path);
    for (const auto& o : overrides) apply_override(doc, o);

    ScenarioFile out;
    out.mode = doc.root.string_or("mode", "analytic");
    if (out.mode != "analytic" && out.mode != "montecarlo" && out.mode != "casestudy")
        throw ParameterError("mode must be analytic, montecarlo or casestudy");

    const TomlTable& sc = doc.table("scenario");
    analytic::Scenario& s = out.scenario;
    s.lambda_z = units::per_km2_to_per_m2(sc.number_or("lambda_z_per_km2", 1.0));
    s.lambda_c = units::per_km2_to_per_m2(sc.number_or("lambda_c_per_km2", 25.0));
    s.lambda_w = units::per_km2_to_per_m2(sc.number_or("lambda_w_per_km2", 100.0));
    s.rho = sc.number_or("exclusion_radius_m", 200.0);
    s.rho_w = sc.number_or("wifi_range_m", 50.0);
    s.p_z = power_watt(sc, "power_z", 1.0, &out.warnings, 30.0);
    s.p_c = power_watt(sc, "power_c", 2.0, &out.warnings, 36.0);
    s.p_w = power_watt(sc, "power_w", 1.0, &out.warnings, 36.0);
    s.b_unlicensed = units::mhz_to_hz(sc.number_or("bandwidth_unlicensed_mhz", 240.0));
    s.b_cell_licensed = units::mhz_to_hz(sc.number_or("bandwidth_cell_licensed_mhz", 80.0));
    s.b_wifi_legacy = units::mhz_to_hz(sc.number_or("bandwidth_wifi_legacy_mhz", 80.0));
    s.alpha = sc.number_or("alpha", 4.0);
    s.gamma = units::db_to_linear(sc.number_or("sinr_threshold_db", 10.0));
    s.window_radius = units::km_to_m(sc.number_or("window_radius_km", 5.0));

    const std::string noise = sc.string_or("noise", "none");
    if (noise == "none") {
        s.noise_c = s.noise_w = 0.0;
    } else if (noise == "thermal") {
        const double nf = sc.number_or("noise_figure_db", 10.0);
        s.noise_c = analytic::thermal_noise_w(s.b_unlicensed, nf);
        s.noise_w = analytic::thermal_noise_w(s.b_unlicensed, nf);
    } else if (noise == "explicit") {
        s.noise_c = sc.number_or("noise_c_w", 0.0);
        s.noise_w = sc.number_or("noise_w_w", 0.0);
    } else {
        throw ParameterError("noise must be none, thermal or explicit");
    }
    s.validate();

    warn_range(out.warnings, "lambda_c_per_km2", units::per_m2_to_per_km2(s.lambda_c), 25, 250);
    warn_range(out.warnings, "lambda_w_per_km2", units::per_m2_to_per_km2(s.lambda_w), 100, 400);
    warn_range(out.warnings, "lambda_z_per_km2", units::per_m2_to_per_km2(s.lambda_z), 0, 10);
    warn_range(out.warnings, "bandwidth_unlicensed_mhz", s.b_unlicensed / 1e6, 40, 320);
    warn_range(out.warnings, "bandwidth_cell_licensed_mhz", s.b_cell_licensed / 1e6, 20, 100);
    warn_range(out.warnings, "bandwidth_wifi_legacy_mhz", s.b_wifi_legacy / 1e6, 20, 160);

    auto ents = doc.table_arrays.find("entity");
    if (ents == doc.table_arrays.end() || ents->second.empty())
        throw ParameterError("config needs at least one [[entity]]");
    int idx = 0;
    for (const TomlTable& t : ents->second) {
        game::Entity e;
        e.name = t.string_or("name", "entity-" + std::to_string(idx));
        e.v_c = t.number_or("share_cellular", 0.0);
        e.v_w = t.number_or("share_wifi", 0.0);
        e.min_rate_c = units::mbps_to_bps(t.number_or("min_rate_cellular_mbps", 0.0));
        e.min_rate_w = units::mbps_to_bps(t.number_or("min_rate_wifi_mbps", 0.0));
        e.theta_c = t.number_or("pref_cellular", 1.0);
        e.theta_w = t.number_or("pref_wifi", 1.0);
        out.entities.push_back(std::move(e));
        ++idx;
    }
    game::validate_entities(out.entities);

    const TomlTable& g = doc.table("game");
    out.game.mu = g.number_or("grid_step", 0.1);
    out.game.epsilon = g.number_or("epsilon", 0.0);
    out.game.max_activations = static_cast<int>(g.number_or("max_activations", 0));
    out.game.seed = static_cast<std::uint64_t>(g.number_or("seed", 1));
    out.game.burn_in_fraction = g.number_or("burn_in_fraction", 0.2);
    game::ActionGrid check_grid(out.game.mu);  // validates 1/mu integral
    (void)check_grid;

    const TomlTable& m = doc.table("montecarlo");
    out.mc.realizations = static_cast<int>(m.number_or("realizations", 2000));
    if (out.mc.realizations < 1) throw ParameterError("montecarlo.realizations must be >= 1");
    if (m.has("gamma_grid_db")) {
        const TomlValue& gv = m.values.at("gamma_grid_db");
        if (gv.kind == TomlValue::Kind::string) {
            out.mc.gamma_grid_db = parse_gamma_range(gv.str);
        } else if (gv.kind == TomlValue::Kind::array) {
            for (const auto& x : gv.array) {
                if (x.kind != TomlValue::Kind::number)
                    throw ParameterError("gamma_grid_db array must contain numbers");
                out.mc.gamma_grid_db.push_back(x.number);
            }
        } else {
            throw ParameterError("gamma_grid_db must be a range string or an array");
        }
    } else {
        out.mc.gamma_grid_db = parse_gamma_range("-10:20:1");
    }
    const std::string assoc = m.string_or("wifi_association", "cluster_parent");
    if (assoc == "cluster_parent")
        out.mc.wifi_mode = mc::WifiAssociation::cluster_parent;
    else if (assoc == "conditioned")
        out.mc.wifi_mode = mc::WifiAssociation::conditioned_uniform;
    else
        throw ParameterError("wifi_association must be cluster_parent or conditioned");

    const TomlTable& cs = doc.table("casestudy");
    out.casestudy.geodata_path = cs.string_or("geodata", "");
    out.casestudy.lon_min = cs.number_or("bbox_lon_min", 0.0);
    out.casestudy.lat_min = cs.number_or("bbox_lat_min", 0.0);
    out.casestudy.lon_max = cs.number_or("bbox_lon_max", 0.0);
    out.casestudy.lat_max = cs.number_or("bbox_lat_max", 0.0);
    out.casestudy.users_per_entity = static_cast<int>(cs.number_or("users_per_entity", 150));
    out.casestudy.owner_seed = static_cast<std::uint64_t>(cs.number_or("owner_seed", 42));
    if (out.mode == "casestudy" && out.casestudy.geodata_path.empty())
        throw ParameterError("casestudy mode needs casestudy.geodata");

    // resolved configuration echo, SI-linear, defaults included
    nlohmann::ordered_json& j = out.resolved;
    j["mode"] = out.mode;
    j["scenario"] = {{"lambda_z_per_m2", s.lambda_z},
                     {"lambda_c_per_m2", s.lambda_c},
                     {"lambda_w_per_m2", s.lambda_w},
                     {"lambda_bar_c_per_m2", s.lambda_bar_c()},
                     {"lambda_bar_w_per_m2", s.lambda_bar_w()},
                     {"exclusion_radius_m", s.rho},
                     {"wifi_range_m", s.rho_w},
                     {"power_z_w", s.p_z},
                     {"power_c_w", s.p_c},
                     {"power_w_w", s.p_w},
                     {"bandwidth_unlicensed_hz", s.b_unlicensed},
                     {"bandwidth_cell_licensed_hz", s.b_cell_licensed},
                     {"bandwidth_wifi_legacy_hz", s.b_wifi_legacy},
                     {"alpha", s.alpha},
                     {"noise_c_w", s.noise_c},
                     {"noise_w_w", s.noise_w},
                     {"gamma_linear", s.gamma},
                     {"window_radius_m", s.window_radius}};
    j["entities"] = nlohmann::ordered_json::array();
    for (const auto& e : out.entities)
        j["entities"].push_back({{"name", e.name},
                                 {"share_cellular", e.v_c},
                                 {"share_wifi", e.v_w},
                                 {"min_rate_cellular_bps", e.min_rate_c},
                                 {"min_rate_wifi_bps", e.min_rate_w},
                                 {"pref_cellular", e.theta_c},
                                 {"pref_wifi", e.theta_w}});
    j["game"] = {{"grid_step", out.game.mu},
                 {"epsilon", out.game.epsilon},
                 {"max_activations", out.game.max_activations},
                 {"seed", out.game.seed},
                 {"burn_in_fraction", out.game.burn_in_fraction}};
    j["montecarlo"] = {{"realizations", out.mc.realizations},
                       {"gamma_grid_db", out.mc.gamma_grid_db},
                       {"wifi_association", assoc}};
    if (!out.casestudy.geodata_path.empty())
        j["casestudy"] = {{"geodata", out.casestudy.geodata_path},
                          {"bbox", {out.casestudy.lon_min, out.casestudy.lat_min,
                                    out.casestudy.lon_max, out.casestudy.lat_max}},
                          {"users_per_entity", out.casestudy.users_per_entity},
                          {"owner_seed", out.casestudy.owner_seed}};
    j["warnings"] = out.warnings;
    return out;
}

geom::Deployment load_geodata(const std::string& path, const BBox& bbox,
                              std::span<const double> shares, double exclusion_radius_m,
                              std::uint64_t seed) {
    if (!(bbox.lon_max > bbox.lon_min) || !(bbox.lat_max > bbox.lat_min))
        throw ParameterError("load_geodata: degenerate bounding box");
    std::ifstream in(path);
    if (!in) throw IoError("cannot open geodata file: " + path);

    const double lat0 = 0.5 * (bbox.lat_min + bbox.lat_max);
    const double lon0 = 0.5 * (bbox.lon_min + bbox.lon_max);
    const double m_per_deg_lat = 111320.0;
    const double m_per_deg_lon = 111320.0 * std::cos(lat0 * units::pi / 180.0);

    std::string line;
    if (!std::getline(in, line)) throw DataError("load_geodata: empty file");
    // header: lon,lat,kind[,owner]
    geom::Deployment out;
    std::vector<std::size_t> element_indices;
    std::size_t record = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string lon_s, lat_s, kind, owner_s;
        std::getline(ss, lon_s, ',');
        std::getline(ss, lat_s, ',');
        std::getline(ss, kind, ',');
        const bool has_owner = static_cast<bool>(std::getline(ss, owner_s, ','));
        const double lon = std::stod(lon_s);
        const double lat = std::stod(lat_s);
        ++record;
        if (lon < bbox.lon_min || lon > bbox.lon_max || lat < bbox.lat_min ||
            lat > bbox.lat_max)
            continue;
        geom::PointRecord p;
        p.x = (lon - lon0) * m_per_deg_lon;
        p.y = (lat - lat0) * m_per_deg_lat;
        if (kind == "bs")
            p.tier = geom::Tier::cellular;
        else if (kind == "ap")
            p.tier = geom::Tier::wifi;
        else if (kind == "incumbent")
            p.tier = geom::Tier::incumbent;
        else
            throw DataError("load_geodata: unknown kind '" + kind + "'");
        if (p.tier != geom::Tier::incumbent) {
            if (has_owner && !owner_s.empty()) {
                p.owner = std::stoi(owner_s);
                if (p.owner < 0 || p.owner >= static_cast<int>(shares.size()))
                    throw DataError("load_geodata: owner index out of range");
            } else {
                const double u = RngStream(seed, "geodata-owner", record).uniform();
                double acc = 0.0;
                p.owner = static_cast<int>(shares.size()) - 1;
                for (std::size_t k = 0; k < shares.size(); ++k) {
                    acc += shares[k];
                    if (u < acc) {
                        p.owner = static_cast<int>(k);
                        break;
                    }
                }
            }
            element_indices.push_back(out.points.size());
        }
        out.points.push_back(p);
    }
    if (out.points.empty()) throw DataError("load_geodata: no records inside bounding box");

    geom::ExclusionZones zones;
    zones.radius = exclusion_radius_m;
    for (const auto& p : out.points)
        if (p.tier == geom::Tier::incumbent) zones.centers.emplace_back(p.x, p.y);
    geom::tag_zones(out, zones);
    return out;
}

void ResultTable::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw ParameterError("ResultTable: row width mismatch");
    rows.push_back(std::move(row));
}

std::string cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_string(const ResultTable& table) {
    std::ostringstream ss;
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        ss << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
    ss << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            ss << row[c] << (c + 1 < row.size() ? "," : "");
        ss << "\n";
    }
    return ss.str();
}

void write_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << csv_string(table);
}

void write_json(const nlohmann::ordered_json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace coex::io
