#include "evgrid/coordinator.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace evgrid {

double fair_share_rate(double rating_kw, double output_kw, std::span<const double> ev_rates_kw, int n) {
    if (n <= 0) throw std::invalid_argument("fair_share_rate: no EVs to share among");
    if (static_cast<std::size_t>(n) != ev_rates_kw.size()) {
        throw std::invalid_argument("fair_share_rate: n does not match the EV rate count");
    }
    const double ev_total = std::accumulate(ev_rates_kw.begin(), ev_rates_kw.end(), 0.0);
    return (rating_kw - (output_kw - ev_total)) / n;
}

int rate_to_amps(double rate_kw, double voltage) {
    if (!(rate_kw > 0.0)) return 0;
    if (rate_kw >= kMaxEvseAmps * voltage / 1000.0) return kMaxEvseAmps;
    const auto amps = static_cast<int>(std::floor(rate_kw * 1000.0 / voltage));
    return amps > kMaxEvseAmps ? kMaxEvseAmps : amps;
}

AmpCommandSet control_step(std::span<const TransformerSnapshot> snapshots) {
    AmpCommandSet out;
    std::set<int> seen;
    for (const auto& snap : snapshots) {
        if (!seen.insert(snap.transformer_id).second) {
            throw std::invalid_argument("control_step: duplicate transformer " +
                                        std::to_string(snap.transformer_id));
        }
        const int n = static_cast<int>(snap.ev_rates_kw.size());
        if (n == 0) continue;
        const double share = fair_share_rate(snap.rating_kw, snap.output_kw, snap.ev_rates_kw, n);
        const int amps = rate_to_amps(share);
        auto& cmds = out.by_transformer[snap.transformer_id];
        cmds.reserve(snap.statuses.size());
        for (const auto& status : snap.statuses) cmds.push_back({status.evse_id, amps});
        out.decisions.push_back({snap.transformer_id, snap.rating_kw, snap.output_kw, n, share, amps});
    }
    return out;
}

}  // namespace evgrid
