#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coex/analytic.hpp"
#include "coex/montecarlo.hpp"

namespace coex::game {

struct ActionVector {
    double delta_c = 0.0;
    double delta_w = 0.0;

    bool operator==(const ActionVector&) const = default;
    double distance(const ActionVector& o) const {
        const double dc = delta_c - o.delta_c, dw = delta_w - o.delta_w;
        return std::sqrt(dc * dc + dw * dw);
    }
};

// Discretized utilization axis {0, mu, 2mu, ..., 1}; 1/mu must be integral.
class ActionGrid {
  public:
    explicit ActionGrid(double mu);
    double mu() const { return 1.0 / steps_; }
    int steps() const { return steps_; }
    int axis_size() const { return steps_ + 1; }
    int size() const { return axis_size() * axis_size(); }
    double level(int i) const { return double(i) / steps_; }
    ActionVector action(int flat) const {
        return {level(flat / axis_size()), level(flat % axis_size())};
    }
    ActionVector random_action(RngStream& rng) const {
        return {level(static_cast<int>(rng.uniform_int(axis_size()))),
                level(static_cast<int>(rng.uniform_int(axis_size())))};
    }

  private:
    int steps_;
};

struct Entity {
    std::string name;
    double v_c = 0.0;          // cellular network share
    double v_w = 0.0;          // wifi network share
    double min_rate_c = 0.0;   // bit/s
    double min_rate_w = 0.0;
    double theta_c = 1.0;      // preference weights
    double theta_w = 1.0;
    ActionVector action;
};

void validate_entities(std::span<const Entity> entities);

struct GameConfig {
    double mu = 0.1;
    double epsilon = 0.0;
    int max_activations = 0;  // 0 -> 500 per entity
    std::uint64_t seed = 1;
    int threads = 1;
    double burn_in_fraction = 0.2;
};

struct AggregateUtilization {
    double delta_c = 0.0;
    double delta_w = 0.0;
};

AggregateUtilization aggregate_utilization(std::span<const Entity> entities);

// 1 iff every network the entity owns meets its datarate threshold.
bool qos_indicator(const Entity& e, double rate_c, double rate_w);

struct PayoffBreakdown {
    double value = 0.0;
    double rate_c = 0.0;
    double rate_w = 0.0;
};

// Datarates an entity would see for a candidate action.  The analytic model
// feeds on the network-wide utilizations only; entities never observe each
// other's individual actions.
class RateModel {
  public:
    virtual ~RateModel() = default;
    virtual mc::EntityRates entity_rates(int entity, const ActionVector& candidate,
                                         std::span<const Entity> entities) = 0;
    // called once per activation; measurement-based models refresh here
    virtual void on_activation(int) {}
};

class AnalyticRateModel final : public RateModel {
  public:
    explicit AnalyticRateModel(analytic::Scenario sc) : sc_(std::move(sc)) {}
    mc::EntityRates entity_rates(int entity, const ActionVector& candidate,
                                 std::span<const Entity> entities) override;

  private:
    analytic::Scenario sc_;
};

// Case-study model: rates measured on a real deployment.  The nonce feeds the
// test-user substreams; it advances once per activation so every candidate in
// one best response sees the same users.
class EmpiricalRateModel final : public RateModel {
  public:
    EmpiricalRateModel(const mc::EmpiricalNetwork& net, int n_users)
        : net_(net), n_users_(n_users) {}
    mc::EntityRates entity_rates(int entity, const ActionVector& candidate,
                                 std::span<const Entity> entities) override;
    void on_activation(int activation) override {
        nonce_ = static_cast<std::uint64_t>(activation);
    }

  private:
    const mc::EmpiricalNetwork& net_;
    int n_users_;
    std::uint64_t nonce_ = 0;
};

PayoffBreakdown evaluate_payoff(int entity, const ActionVector& candidate,
                                std::span<const Entity> entities, RateModel& model);

// Exhaustive argmax over the grid.  Ties keep the entity's current action if
// it attains the maximum, otherwise the lexicographically smallest candidate.
ActionVector best_response(int entity, std::span<const Entity> entities, RateModel& model,
                           const ActionGrid& grid, int threads = 1);

int next_actor(int n_entities, RngStream& rng);

struct TraceRecord {
    int activation = 0;
    int actor = 0;
    ActionVector action;
    double payoff = 0.0;
    double rate_c = 0.0;
    double rate_w = 0.0;
    double agg_delta_c = 0.0;
    double agg_delta_w = 0.0;
};

struct GameTrace {
    std::vector<ActionVector> initial_profile;
    std::vector<TraceRecord> records;
    int n_entities = 0;
};

enum class Outcome { converged, non_terminated };

struct GameResult {
    GameTrace trace;
    Outcome outcome = Outcome::non_terminated;
    std::vector<Entity> entities;  // final state
    int activations = 0;
};

// Asynchronous best-response dynamics: a uniformly random entity is activated
// each step (the Poisson-clock order statistics) and plays its exhaustive
// best response.  Stops when the summed action movement of the latest
// iterations is <= epsilon and every entity has acted since the last change.
GameResult run_dbra(std::vector<Entity> entities, RateModel& model, const GameConfig& cfg);

// Baseline: every utilization drawn once from the continuous range [0.1, 1].
std::vector<ActionVector> random_strategy(int n_entities, RngStream& rng);

struct ActionMass {
    ActionVector action;
    double probability = 0.0;
};

// Post-burn-in empirical distribution of each entity's current action across
// activations; the long-run proxy for mixed play when dynamics cycle.
std::vector<std::vector<ActionMass>> empirical_mixed_strategy(const GameTrace& trace,
                                                              int burn_in);

}  // namespace coex::game
