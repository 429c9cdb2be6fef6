#include "coex/game.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "coex/parallel.hpp"

namespace coex::game {

ActionGrid::ActionGrid(double mu) {
    if (!(mu > 0.0) || mu > 1.0) throw ParameterError("ActionGrid: mu must lie in (0, 1]");
    const double steps = 1.0 / mu;
    steps_ = static_cast<int>(std::llround(steps));
    if (std::fabs(steps - steps_) > 1e-9)
        throw ParameterError("ActionGrid: 1/mu must be an integer");
}

void validate_entities(std::span<const Entity> entities) {
    if (entities.empty()) throw ParameterError("need at least one entity");
    double sum_c = 0.0, sum_w = 0.0;
    for (const auto& e : entities) {
        if (e.v_c < 0.0 || e.v_w < 0.0) throw ParameterError("entity share < 0");
        if (e.v_c > 0.0 && !(e.theta_c > 0.0))
            throw ParameterError("entity with cellular share needs theta_c > 0");
        if (e.v_w > 0.0 && !(e.theta_w > 0.0))
            throw ParameterError("entity with wifi share needs theta_w > 0");
        if (e.min_rate_c < 0.0 || e.min_rate_w < 0.0)
            throw ParameterError("negative rate threshold");
        sum_c += e.v_c;
        sum_w += e.v_w;
    }
    if (std::fabs(sum_c - 1.0) > 1e-9) throw ParameterError("cellular shares must sum to 1");
    if (std::fabs(sum_w - 1.0) > 1e-9) throw ParameterError("wifi shares must sum to 1");
}

AggregateUtilization aggregate_utilization(std::span<const Entity> entities) {
    AggregateUtilization agg;
    for (const auto& e : entities) {
        agg.delta_c += e.v_c * e.action.delta_c;
        agg.delta_w += e.v_w * e.action.delta_w;
    }
    agg.delta_c = std::clamp(agg.delta_c, 0.0, 1.0);
    agg.delta_w = std::clamp(agg.delta_w, 0.0, 1.0);
    return agg;
}

bool qos_indicator(const Entity& e, double rate_c, double rate_w) {
    if (rate_c < 0.0 || rate_w < 0.0) throw ParameterError("qos_indicator: negative rate");
    if (e.v_c > 0.0 && rate_c < e.min_rate_c) return false;
    if (e.v_w > 0.0 && rate_w < e.min_rate_w) return false;
    return true;
}

mc::EntityRates AnalyticRateModel::entity_rates(int entity, const ActionVector& candidate,
                                                std::span<const Entity> entities) {
    const Entity& e = entities[entity];
    // aggregates of everyone else plus the hypothetical own contribution
    AggregateUtilization agg;
    for (std::size_t j = 0; j < entities.size(); ++j) {
        if (static_cast<int>(j) == entity) continue;
        agg.delta_c += entities[j].v_c * entities[j].action.delta_c;
        agg.delta_w += entities[j].v_w * entities[j].action.delta_w;
    }
    const double dc = std::clamp(agg.delta_c + e.v_c * candidate.delta_c, 0.0, 1.0);
    const double dw = std::clamp(agg.delta_w + e.v_w * candidate.delta_w, 0.0, 1.0);
    mc::EntityRates r;
    if (e.v_c > 0.0)
        r.cellular_bps = analytic::avg_datarate_cellular(sc_.gamma, dc, dw,
                                                         candidate.delta_c, sc_);
    if (e.v_w > 0.0)
        r.wifi_bps = analytic::avg_datarate_wifi(sc_.gamma, dc, dw, candidate.delta_w, sc_);
    return r;
}

mc::EntityRates EmpiricalRateModel::entity_rates(int entity, const ActionVector& candidate,
                                                 std::span<const Entity> entities) {
    std::vector<mc::EntityAction> profile(entities.size());
    for (std::size_t j = 0; j < entities.size(); ++j)
        profile[j] = {entities[j].action.delta_c, entities[j].action.delta_w};
    profile[entity] = {candidate.delta_c, candidate.delta_w};
    return net_.entity_rates(entity, profile, n_users_, nonce_);
}

PayoffBreakdown evaluate_payoff(int entity, const ActionVector& candidate,
                                std::span<const Entity> entities, RateModel& model) {
    const Entity& e = entities[entity];
    const mc::EntityRates r = model.entity_rates(entity, candidate, entities);
    PayoffBreakdown out;
    out.rate_c = r.cellular_bps;
    out.rate_w = r.wifi_bps;
    if (!qos_indicator(e, r.cellular_bps, r.wifi_bps)) return out;  // gate shut, payoff 0
    if (e.v_c > 0.0) out.value += e.theta_c * r.cellular_bps;
    if (e.v_w > 0.0) out.value += e.theta_w * r.wifi_bps;
    return out;
}

ActionVector best_response(int entity, std::span<const Entity> entities, RateModel& model,
                           const ActionGrid& grid, int threads) {
    const int n = grid.size();
    std::vector<double> value(n);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t flat) {
        value[flat] = evaluate_payoff(entity, grid.action(static_cast<int>(flat)),
                                      entities, model)
                          .value;
    });
    const ActionVector current = entities[entity].action;
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (value[i] > value[best]) best = i;
    // keep the incumbent when it ties the maximum
    for (int i = 0; i < n; ++i)
        if (grid.action(i) == current && value[i] >= value[best]) return current;
    return grid.action(best);
}

int next_actor(int n_entities, RngStream& rng) {
    if (n_entities < 1) throw ParameterError("next_actor: need at least one entity");
    return static_cast<int>(rng.uniform_int(n_entities));
}

GameResult run_dbra(std::vector<Entity> entities, RateModel& model, const GameConfig& cfg) {
    validate_entities(entities);
    const ActionGrid grid(cfg.mu);
    if (cfg.epsilon < 0.0) throw ParameterError("run_dbra: epsilon must be >= 0");
    const int budget = cfg.max_activations > 0 ? cfg.max_activations
                                               : 500 * static_cast<int>(entities.size());
    if (budget < static_cast<int>(entities.size()))
        throw ParameterError("run_dbra: activation budget below entity count");

    RngStream init_rng(cfg.seed, "dbra-init");
    for (auto& e : entities) e.action = grid.random_action(init_rng);
    RngStream clock(cfg.seed, "dbra-clock");

    GameResult result;
    result.trace.n_entities = static_cast<int>(entities.size());
    for (const auto& e : entities) result.trace.initial_profile.push_back(e.action);

    const std::size_t n = entities.size();
    std::vector<double> last_move(n, -1.0);  // ||a^[n_j]| - a^[n_j - 1]||, -1 until acted
    int last_change = 0;                     // activation of the latest action change
    std::vector<int> last_acted(n, 0);

    for (int act = 1; act <= budget; ++act) {
        model.on_activation(act);
        const int i = next_actor(static_cast<int>(n), clock);
        const ActionVector prev = entities[i].action;
        const ActionVector next = best_response(i, entities, model, grid, cfg.threads);
        const double moved = next.distance(prev);
        entities[i].action = next;
        // moves within epsilon do not demand another confirmation round
        if (moved > cfg.epsilon) last_change = act;
        last_move[i] = moved;
        last_acted[i] = act;

        const PayoffBreakdown pb = evaluate_payoff(i, next, entities, model);
        const AggregateUtilization agg = aggregate_utilization(entities);
        result.trace.records.push_back(
            {act, i, next, pb.value, pb.rate_c, pb.rate_w, agg.delta_c, agg.delta_w});
        result.activations = act;

        bool all_acted = true;
        double total_move = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (last_move[j] < 0.0 || last_acted[j] <= last_change) all_acted = false;
            total_move += std::max(last_move[j], 0.0);
        }
        // every entity has re-confirmed its action since the last change
        if (all_acted && total_move <= cfg.epsilon) {
            result.outcome = Outcome::converged;
            break;
        }
    }
    result.entities = std::move(entities);
    return result;
}

std::vector<ActionVector> random_strategy(int n_entities, RngStream& rng) {
    std::vector<ActionVector> out(static_cast<std::size_t>(n_entities));
    for (auto& a : out) {
        a.delta_c = rng.uniform(0.1, 1.0);
        a.delta_w = rng.uniform(0.1, 1.0);
    }
    return out;
}

std::vector<std::vector<ActionMass>> empirical_mixed_strategy(const GameTrace& trace,
                                                              int burn_in) {
    const int total = static_cast<int>(trace.records.size());
    if (burn_in < 0 || burn_in >= total)
        throw ParameterError("empirical_mixed_strategy: burn-in leaves no records");
    std::vector<ActionVector> profile = trace.initial_profile;
    std::vector<std::map<std::pair<double, double>, int>> counts(trace.n_entities);
    int kept = 0;
    for (int k = 0; k < total; ++k) {
        const TraceRecord& rec = trace.records[k];
        profile[rec.actor] = rec.action;
        if (k < burn_in) continue;
        ++kept;
        for (int j = 0; j < trace.n_entities; ++j)
            counts[j][{profile[j].delta_c, profile[j].delta_w}] += 1;
    }
    std::vector<std::vector<ActionMass>> out(trace.n_entities);
    for (int j = 0; j < trace.n_entities; ++j)
        for (const auto& [key, c] : counts[j])
            out[j].push_back({{key.first, key.second}, double(c) / kept});
    return out;
}

}  // namespace coex::game
