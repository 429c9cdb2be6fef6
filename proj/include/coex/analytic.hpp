#pragma once

#include "coex/geometry.hpp"
#include "coex/units.hpp"

namespace coex::analytic {

// Physical-layer parameter set, SI-linear throughout: intensities per m^2,
// powers in W, bandwidths in Hz, distances in m, gamma as a linear ratio.
struct Scenario {
    double lambda_z = 1e-6;
    double lambda_c = 25e-6;
    double lambda_w = 100e-6;
    double rho = 200.0;    // exclusion-zone radius
    double rho_w = 50.0;   // WiFi cell range
    double p_z = 1.0;
    double p_c = 2.0;
    double p_w = 1.0;
    double b_unlicensed = 240e6;
    double b_cell_licensed = 80e6;
    double b_wifi_legacy = 80e6;
    double alpha = 4.0;
    double noise_c = 0.0;  // receiver noise power, W
    double noise_w = 0.0;
    double gamma = 10.0;   // SINR threshold, linear
    double window_radius = 5000.0;

    void validate() const;

    double lambda_bar_c() const { return geom::thinned_intensity(lambda_c, lambda_z, rho); }
    double lambda_bar_w() const { return geom::thinned_intensity(lambda_w, lambda_z, rho); }
};

// Self-interference constant of nearest-transmitter coverage:
// zeta(gamma, alpha) = (gamma^{2/alpha}/2) int_{gamma^{-2/alpha}}^inf dx/(1+x^{alpha/2}).
// For alpha = 4 this reduces to (sqrt(gamma)/2) atan(sqrt(gamma)).
double zeta(double gamma, double alpha);

// Laplace transform of the interference from one transmitter population, at
// argument s, seen by a victim of the given tier in the given band.
//
// Cross-population terms have the closed sinc form
//   exp(-pi lambda (s p)^{2/alpha} / sinc(2/alpha));
// the own-population term for a cellular victim is truncated at the serving
// distance r (no interferer closer than the serving node):
//   exp(-int_r^inf 2 pi lambda x / (1 + (s p)^{-1} x^alpha) dx).
double laplace_interference(double s, geom::Tier source, geom::Tier victim, geom::Band band,
                            double delta_c, double delta_w, const Scenario& sc,
                            double serving_distance = 0.0);

// Coverage probabilities P(SINR > gamma) for the typical user of each
// tier/band.  Derived by averaging the fading CCDF against the serving
// distance distribution and the interference Laplace transforms above.
double coverage_cellular_licensed(double gamma, double delta_c, const Scenario& sc);
double coverage_cellular_unlicensed(double gamma, double delta_c, double delta_w,
                                    const Scenario& sc);
double coverage_wifi_legacy(double gamma, double delta_w, const Scenario& sc);
double coverage_wifi_unlicensed(double gamma, double delta_c, double delta_w,
                                const Scenario& sc);

// Average user rate of an entity's network: bandwidth-weighted mix of the
// unlicensed and licensed coverage terms, weights given by the entity's own
// unlicensed fraction.
double avg_datarate_cellular(double gamma, double delta_c, double delta_w, double delta_ci,
                             const Scenario& sc);
double avg_datarate_wifi(double gamma, double delta_c, double delta_w, double delta_wi,
                         const Scenario& sc);

struct RatePoint {
    double delta_c = 0.0;
    double delta_w = 0.0;
    double delta_entity = 0.0;
    double value = 0.0;  // bit/s
};

// Thermal noise floor: -174 dBm/Hz plus noise figure over the bandwidth.
double thermal_noise_w(double bandwidth_hz, double noise_figure_db);

}  // namespace coex::analytic
