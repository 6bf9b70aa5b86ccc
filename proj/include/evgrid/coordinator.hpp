#pragma once

// Fair-sharing controller: each minute, every charging-eligible EV on a
// transformer gets an equal share of the transformer's remaining headroom.

#include "evgrid/evse.hpp"

#include <map>
#include <span>
#include <vector>

namespace evgrid {

/// One transformer as seen by the controller at a tick. `ev_rates_kw` and
/// `statuses` are parallel and cover the charging-eligible EVs only.
struct TransformerSnapshot {
    int transformer_id = 0;
    double rating_kw = 0.0;
    double output_kw = 0.0;
    std::vector<double> ev_rates_kw;
    std::vector<EvseStatus> statuses;
};

struct AmpCommand {
    int evse_id = 0;
    int amps = 0;
    bool operator==(const AmpCommand&) const = default;
};

/// Controller trace for one transformer at one tick.
struct ControlDecision {
    int transformer_id = 0;
    double rating_kw = 0.0;
    double output_kw = 0.0;
    int n = 0;
    double share_kw = 0.0;
    int amps = 0;
};

struct AmpCommandSet {
    std::map<int, std::vector<AmpCommand>> by_transformer;
    std::vector<ControlDecision> decisions;
};

/// (rating - (output - sum(ev_rates))) / n, unclamped. Throws
/// std::invalid_argument when n == 0 or n != ev_rates.size().
double fair_share_rate(double rating_kw, double output_kw, std::span<const double> ev_rates_kw, int n);

/// 0 for rate <= 0, 30 A at or above the 30 A power, otherwise
/// floor(rate * 1000 / voltage).
int rate_to_amps(double rate_kw, double voltage = kEvseVoltage);

/// Transformers without eligible EVs get no commands. Throws
/// std::invalid_argument on a repeated transformer id.
AmpCommandSet control_step(std::span<const TransformerSnapshot> snapshots);

}  // namespace evgrid
