#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "coex/rng.hpp"
#include "coex/units.hpp"

namespace coex::geom {

enum class Tier : std::uint8_t { cellular, wifi, incumbent };
enum class Band : std::uint8_t { licensed, unlicensed, none };

inline const char* to_string(Tier t) {
    switch (t) {
        case Tier::cellular: return "cellular";
        case Tier::wifi: return "wifi";
        default: return "incumbent";
    }
}
inline const char* to_string(Band b) {
    switch (b) {
        case Band::licensed: return "licensed";
        case Band::unlicensed: return "unlicensed";
        default: return "n/a";
    }
}

// Observation window: a disk centred on the typical user at the origin.
struct Window {
    double radius_m = 5000.0;

    explicit Window(double r = 5000.0) : radius_m(r) {
        if (!(r > 0.0)) throw ParameterError("Window: radius must be positive");
    }
    double area() const { return units::pi * radius_m * radius_m; }
};

struct PointRecord {
    double x = 0.0;
    double y = 0.0;
    Tier tier = Tier::cellular;
    Band band = Band::none;
    int owner = -1;       // entity index, -1 when unassigned
    bool in_zone = false; // inside some exclusion zone

    double dist2(double ux = 0.0, double uy = 0.0) const {
        const double dx = x - ux, dy = y - uy;
        return dx * dx + dy * dy;
    }
};

struct Deployment {
    std::vector<PointRecord> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    PointRecord& operator[](std::size_t i) { return points[i]; }
    const PointRecord& operator[](std::size_t i) const { return points[i]; }
    auto begin() const { return points.begin(); }
    auto end() const { return points.end(); }

    Deployment subset(Tier t, Band b) const {
        Deployment out;
        for (const auto& p : points)
            if (p.tier == t && p.band == b) out.points.push_back(p);
        return out;
    }
    std::size_t count(Tier t, Band b) const {
        std::size_t n = 0;
        for (const auto& p : points) n += (p.tier == t && p.band == b);
        return n;
    }
};

struct ExclusionZones {
    std::vector<std::pair<double, double>> centers;
    double radius = 0.0;

    bool covers(double x, double y) const {
        const double r2 = radius * radius;
        for (const auto& [cx, cy] : centers) {
            const double dx = x - cx, dy = y - cy;
            if (dx * dx + dy * dy <= r2) return true;
        }
        return false;
    }
};

// Minimum separation between the typical user and any sampled transmitter.
// The unbounded path-loss law diverges at zero distance.
inline constexpr double min_separation_m = 0.1;

// Homogeneous PPP on the window: Poisson count, uniform positions.
Deployment sample_ppp(double intensity, const Window& window, Tier tier, RngStream& rng);

// Points lying strictly outside every exclusion zone (the hole process).
Deployment carve_php(const Deployment& points, const ExclusionZones& zones);

// Sets the in_zone flag without removing anything.
void tag_zones(Deployment& points, const ExclusionZones& zones);

// lambda * exp(-pi * lambda_z * rho^2)
double thinned_intensity(double lambda, double lambda_z, double rho);

// Tags each out-of-zone point unlicensed with probability delta; everything
// else stays licensed.  Count and positions are preserved.
void tag_band(Deployment& points, double delta, RngStream& rng);

// Same split, returned as (licensed, unlicensed) partitions.
std::pair<Deployment, Deployment> split_band(const Deployment& points, double delta,
                                             RngStream& rng);

// Independent owner assignment with the given share vector (must sum to 1).
void partition_entities(Deployment& points, std::span<const double> shares, RngStream& rng);

// Distance between a WiFi user and its access point, density 2r/rho_w^2 on (0, rho_w).
double sample_wifi_serving_distance(double rho_w, RngStream& rng);

}  // namespace coex::geom
