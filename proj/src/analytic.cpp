#include "coex/analytic.hpp"

#include <cmath>

#include "coex/quadrature.hpp"

namespace coex::analytic {

using units::pi;
using units::sinc;

void Scenario::validate() const {
    if (lambda_z < 0 || lambda_c < 0 || lambda_w < 0)
        throw ParameterError("Scenario: intensities must be >= 0");
    if (p_z < 0 || p_c <= 0 || p_w <= 0)
        throw ParameterError("Scenario: transmit powers must be positive");
    if (b_unlicensed < 0 || b_cell_licensed < 0 || b_wifi_legacy < 0)
        throw ParameterError("Scenario: bandwidths must be >= 0");
    if (!(alpha > 2.0))
        throw DomainError("Scenario: alpha must exceed 2 for finite interference");
    if (!(rho_w > 0.0)) throw ParameterError("Scenario: rho_w must be > 0");
    if (rho < 0.0) throw ParameterError("Scenario: rho must be >= 0");
    if (noise_c < 0 || noise_w < 0) throw ParameterError("Scenario: negative noise");
    if (!(gamma > 0.0)) throw ParameterError("Scenario: gamma must be > 0");
    if (!(window_radius > 0.0)) throw ParameterError("Scenario: window radius must be > 0");
}

double zeta(double gamma, double alpha) {
    if (alpha <= 2.0) throw DomainError("zeta: diverges for alpha <= 2");
    if (!(gamma > 0.0)) {
        if (gamma == 0.0) return 0.0;
        throw ParameterError("zeta: gamma must be >= 0");
    }
    const double g = std::pow(gamma, 2.0 / alpha);
    return 0.5 * g * quad::tail_integral(1.0 / g, alpha);
}

namespace {

// exponent coefficient of r^2 in the whole-plane (sinc-form) Laplace term
double sinc_coef(double s, double lambda, double p, double alpha) {
    return pi * lambda * std::pow(s * p, 2.0 / alpha) / sinc(2.0 / alpha);
}

// intensity of population (source, band) given the utilization pair
double population_intensity(geom::Tier source, geom::Band band, double delta_c,
                            double delta_w, const Scenario& sc) {
    switch (source) {
        case geom::Tier::cellular:
            return band == geom::Band::unlicensed ? delta_c * sc.lambda_bar_c()
                                                  : sc.lambda_c - delta_c * sc.lambda_bar_c();
        case geom::Tier::wifi:
            return band == geom::Band::unlicensed ? delta_w * sc.lambda_bar_w()
                                                  : sc.lambda_w - delta_w * sc.lambda_bar_w();
        default:
            return sc.lambda_z;  // incumbents hold the band everywhere
    }
}

double source_power(geom::Tier source, const Scenario& sc) {
    switch (source) {
        case geom::Tier::cellular: return sc.p_c;
        case geom::Tier::wifi: return sc.p_w;
        default: return sc.p_z;
    }
}

// P = 2 pi L int_0^inf r exp(-a r^alpha - c2 r^2) dr, via u = r^2.
double nearest_coverage_integral(double lambda_serving, double a, double c2, double alpha) {
    if (a == 0.0) return pi * lambda_serving / c2;
    const double cutoff = quad::decay_cutoff(c2, a, 0.5 * alpha, 45.0);
    const double v = quad::integrate_adaptive(
        [a, c2, alpha](double u) { return std::exp(-a * std::pow(u, 0.5 * alpha) - c2 * u); },
        0.0, cutoff, 1e-9);
    return pi * lambda_serving * v;
}

// P = (2/rho_w^2) int_0^rho_w r exp(-a r^alpha - c2 r^2) dr.
double in_range_coverage_integral(double rho_w, double a, double c2, double alpha) {
    if (a == 0.0) {
        const double x = c2 * rho_w * rho_w;
        if (x == 0.0) return 1.0;
        return -std::expm1(-x) / x;
    }
    const double v = quad::integrate_adaptive(
        [a, c2, alpha](double r) {
            return r * std::exp(-a * std::pow(r, alpha) - c2 * r * r);
        },
        0.0, rho_w, 1e-9);
    return 2.0 / (rho_w * rho_w) * v;
}

}  // namespace

double laplace_interference(double s, geom::Tier source, geom::Tier victim, geom::Band band,
                            double delta_c, double delta_w, const Scenario& sc,
                            double serving_distance) {
    if (s < 0.0) throw ParameterError("laplace_interference: s must be >= 0");
    if (s == 0.0) return 1.0;
    // licensed/legacy carriers are per-tier; only the victim's own network
    // transmits there
    if (band == geom::Band::licensed && source != victim) return 1.0;
    const double lambda = population_intensity(source, band, delta_c, delta_w, sc);
    if (lambda <= 0.0) return 1.0;
    const double p = source_power(source, sc);

    if (victim == geom::Tier::cellular && source == geom::Tier::cellular) {
        // own-population interferers lie beyond the serving distance
        if (serving_distance < 0.0)
            throw ParameterError("laplace_interference: serving distance must be >= 0");
        const double sp = std::pow(s * p, 2.0 / sc.alpha);
        const double x0 = serving_distance * serving_distance / sp;
        return std::exp(-pi * lambda * sp * quad::tail_integral(x0, sc.alpha));
    }
    return std::exp(-sinc_coef(s, lambda, p, sc.alpha));
}

double coverage_cellular_licensed(double gamma, double delta_c, const Scenario& sc) {
    sc.validate();
    if (delta_c < 0.0 || delta_c > 1.0)
        throw ParameterError("coverage_cellular_licensed: delta_c outside [0, 1]");
    const double lambda_s = sc.lambda_c - delta_c * sc.lambda_bar_c();
    if (lambda_s <= 0.0)
        throw DegenerateTierError("coverage_cellular_licensed: empty licensed tier");
    const double a = sc.noise_c * gamma / sc.p_c;
    // serving-distance density plus the truncated own-tier Laplace transform:
    // exponent pi L (1 + gamma^{2/a} T(gamma^{-2/a})) r^2
    const double rho2 = std::pow(gamma, 2.0 / sc.alpha) *
                        quad::tail_integral(std::pow(gamma, -2.0 / sc.alpha), sc.alpha);
    const double c2 = pi * lambda_s * (1.0 + rho2);
    return nearest_coverage_integral(lambda_s, a, c2, sc.alpha);
}

double coverage_cellular_unlicensed(double gamma, double delta_c, double delta_w,
                                    const Scenario& sc) {
    sc.validate();
    if (delta_c < 0.0 || delta_c > 1.0 || delta_w < 0.0 || delta_w > 1.0)
        throw ParameterError("coverage_cellular_unlicensed: utilization outside [0, 1]");
    const double lambda_s = delta_c * sc.lambda_bar_c();
    if (lambda_s <= 0.0)
        throw DegenerateTierError("coverage_cellular_unlicensed: empty unlicensed tier");
    const double a = sc.noise_c * gamma / sc.p_c;
    const double g2a = std::pow(gamma, 2.0 / sc.alpha);
    const double rho2 = g2a * quad::tail_integral(1.0 / g2a, sc.alpha);
    const double cross = pi * g2a / (std::pow(sc.p_c, 2.0 / sc.alpha) * sinc(2.0 / sc.alpha)) *
                         (delta_w * sc.lambda_bar_w() * std::pow(sc.p_w, 2.0 / sc.alpha) +
                          sc.lambda_z * std::pow(sc.p_z, 2.0 / sc.alpha));
    const double c2 = cross + pi * lambda_s * (1.0 + rho2);
    return nearest_coverage_integral(lambda_s, a, c2, sc.alpha);
}

double coverage_wifi_legacy(double gamma, double delta_w, const Scenario& sc) {
    sc.validate();
    if (delta_w < 0.0 || delta_w > 1.0)
        throw ParameterError("coverage_wifi_legacy: delta_w outside [0, 1]");
    const double lambda_i = sc.lambda_w - delta_w * sc.lambda_bar_w();
    const double a = sc.noise_w * gamma / sc.p_w;
    const double c2 =
        pi * std::pow(gamma, 2.0 / sc.alpha) * lambda_i / sinc(2.0 / sc.alpha);
    return in_range_coverage_integral(sc.rho_w, a, c2, sc.alpha);
}

double coverage_wifi_unlicensed(double gamma, double delta_c, double delta_w,
                                const Scenario& sc) {
    sc.validate();
    if (delta_c < 0.0 || delta_c > 1.0 || delta_w < 0.0 || delta_w > 1.0)
        throw ParameterError("coverage_wifi_unlicensed: utilization outside [0, 1]");
    const double a = sc.noise_w * gamma / sc.p_w;
    const double two_a = 2.0 / sc.alpha;
    const double c2 = pi * std::pow(gamma, two_a) /
                      (std::pow(sc.p_w, two_a) * sinc(two_a)) *
                      (delta_w * sc.lambda_bar_w() * std::pow(sc.p_w, two_a) +
                       delta_c * sc.lambda_bar_c() * std::pow(sc.p_c, two_a) +
                       sc.lambda_z * std::pow(sc.p_z, two_a));
    return in_range_coverage_integral(sc.rho_w, a, c2, sc.alpha);
}

double avg_datarate_cellular(double gamma, double delta_c, double delta_w, double delta_ci,
                             const Scenario& sc) {
    if (delta_ci < 0.0 || delta_ci > 1.0)
        throw ParameterError("avg_datarate_cellular: delta_c^i outside [0, 1]");
    if (!(sc.lambda_c > 0.0)) throw ParameterError("avg_datarate_cellular: lambda_c = 0");
    const double w_u = delta_ci * sc.lambda_bar_c() / sc.lambda_c;
    const double spectral = std::log2(1.0 + gamma);
    // a zero weight short-circuits its coverage term: 0 * undefined = 0
    double rate = 0.0;
    if (w_u > 0.0)
        rate += sc.b_unlicensed * spectral * coverage_cellular_unlicensed(gamma, delta_c, delta_w, sc) * w_u;
    if (w_u < 1.0)
        rate += sc.b_cell_licensed * spectral * coverage_cellular_licensed(gamma, delta_c, sc) * (1.0 - w_u);
    return rate;
}

double avg_datarate_wifi(double gamma, double delta_c, double delta_w, double delta_wi,
                         const Scenario& sc) {
    if (delta_wi < 0.0 || delta_wi > 1.0)
        throw ParameterError("avg_datarate_wifi: delta_w^i outside [0, 1]");
    if (!(sc.lambda_w > 0.0)) throw ParameterError("avg_datarate_wifi: lambda_w = 0");
    const double w_u = delta_wi * sc.lambda_bar_w() / sc.lambda_w;
    const double spectral = std::log2(1.0 + gamma);
    double rate = 0.0;
    if (w_u > 0.0)
        rate += sc.b_unlicensed * spectral * coverage_wifi_unlicensed(gamma, delta_c, delta_w, sc) * w_u;
    if (w_u < 1.0)
        rate += sc.b_wifi_legacy * spectral * coverage_wifi_legacy(gamma, delta_w, sc) * (1.0 - w_u);
    return rate;
}

double thermal_noise_w(double bandwidth_hz, double noise_figure_db) {
    return units::dbm_to_watt(-174.0 + noise_figure_db) * bandwidth_hz;
}

}  // namespace coex::analytic
