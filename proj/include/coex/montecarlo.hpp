#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coex/analytic.hpp"
#include "coex/radio.hpp"

namespace coex::mc {

// How the typical WiFi user finds its access point in a simulated realization.
//
// cluster_parent places the serving AP at a distance drawn from the in-cell
// density 2r/rho_w^2, with the whole sampled AP field interfering -- the
// typical member of a cluster process sees exactly this.  conditioned_uniform
// instead drops the user independently of the APs, picks uniformly among
// in-range ones and redraws unassociated realizations; conditioning on
// association inflates coverage measurably, so it is not the default.
enum class WifiAssociation { cluster_parent, conditioned_uniform };

struct McConfig {
    int n_realizations = 2000;
    geom::Window window{5000.0};
    std::uint64_t seed = 1;
    std::vector<double> gamma_grid_db;
    int threads = 1;
    WifiAssociation wifi_mode = WifiAssociation::cluster_parent;
    int redraw_budget_per_realization = 100;
};

struct CoverageEstimate {
    double gamma_db = 0.0;
    double p_hat = 0.0;
    double ci99 = 0.0;  // Wilson 99% half-width
    int n = 0;
};

// One coverage curve, estimated from independent network realizations.  Each
// realization consumes an index-derived substream and yields one SINR sample
// evaluated against the whole gamma grid (common random numbers).
std::vector<CoverageEstimate> simulate_coverage(const analytic::Scenario& sc, geom::Tier tier,
                                                geom::Band band, double delta_c, double delta_w,
                                                const McConfig& cfg);

struct EntityAction {
    double delta_c = 0.0;
    double delta_w = 0.0;
};

struct EntityRates {
    double cellular_bps = 0.0;
    double wifi_bps = 0.0;
};

struct Rect {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};

// A fixed real-world deployment prepared for repeated rate evaluation.  Each
// element carries a persistent uniform score; under an action profile an
// element operates unlicensed iff it lies outside every exclusion zone and
// its score falls below its owner's utilization -- so band assignments are
// nested as utilizations move.
class EmpiricalNetwork {
  public:
    EmpiricalNetwork(const geom::Deployment& deployment, analytic::Scenario scenario,
                     int n_entities, Rect user_region, std::uint64_t seed);

    // Average per-user rates of one entity's networks under the profile.
    // Fresh test users are drawn from substreams keyed by (entity, nonce);
    // per-user success probability is the exact Rayleigh conditional
    //   exp(-gamma k^2 / xi_s) * prod_j 1 / (1 + gamma xi_j / xi_s).
    EntityRates entity_rates(int entity, std::span<const EntityAction> profile, int n_users,
                             std::uint64_t nonce) const;

    int entity_element_count(int entity, geom::Tier tier) const;
    std::size_t size() const { return x_.size(); }

  private:
    void assign_bands(std::span<const EntityAction> profile,
                      std::vector<geom::Band>& bands) const;
    double user_success(double ux, double uy, std::size_t serving,
                        const std::vector<geom::Band>& bands, double noise) const;

    analytic::Scenario sc_;
    Rect region_;
    std::uint64_t seed_;
    int n_entities_;
    std::vector<double> x_, y_, score_;
    std::vector<geom::Tier> tier_;
    std::vector<int> owner_;
    std::vector<bool> in_zone_;
    std::vector<std::vector<int>> entity_bs_;   // cellular elements per entity
    std::vector<std::vector<int>> entity_ap_;   // wifi elements per entity
};

// Convenience wrapper over EmpiricalNetwork for a one-off evaluation.
std::vector<EntityRates> simulate_datarate_empirical(const geom::Deployment& deployment,
                                                     const analytic::Scenario& sc,
                                                     std::span<const EntityAction> profile,
                                                     int n_users, std::uint64_t seed);

double wilson_halfwidth(double p_hat, int n, double z = 2.5758293035489004);

}  // namespace coex::mc
