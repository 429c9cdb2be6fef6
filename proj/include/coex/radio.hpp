#pragma once

#include "coex/geometry.hpp"

namespace coex::radio {

struct TxPowers {
    double cellular = 2.0;
    double wifi = 1.0;
    double incumbent = 1.0;

    double of(geom::Tier t) const {
        switch (t) {
            case geom::Tier::cellular: return cellular;
            case geom::Tier::wifi: return wifi;
            default: return incumbent;
        }
    }
};

// p_tx * H * d^{-alpha}.  Rejects d = 0: the law is singular there.
double signal_power(double p_tx, double distance, double alpha, double fading);

// Sum of faded received powers from every point, i.i.d. unit-mean exponential
// fading per link.  The caller removes the serving node beforehand.
double aggregate_interference(const geom::Deployment& interferers, const TxPowers& powers,
                              double alpha, RngStream& rng, double ux = 0.0, double uy = 0.0);

// signal / (noise + interference); +inf when the denominator vanishes and a
// signal is present, 0 for a vanished signal.
double sinr(double signal, double interference, double noise);

// Index of the nearest point of the (tier, band) subset, or -1 if none.
int nearest_index(const geom::Deployment& d, geom::Tier tier, geom::Band band,
                  double ux = 0.0, double uy = 0.0);

// Uniformly random point of the subset within `range` of the user, or -1.
int uniform_in_range_index(const geom::Deployment& d, geom::Tier tier, geom::Band band,
                           double range, RngStream& rng, double ux = 0.0, double uy = 0.0);

}  // namespace coex::radio
