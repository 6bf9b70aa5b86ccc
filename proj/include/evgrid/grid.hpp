#pragma once

#include "evgrid/load_model.hpp"
#include "evgrid/random_stream.hpp"
#include "evgrid/scenario_config.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace evgrid {

struct Transformer {
    int id = 0;
    int node_id = 0;
    double rating_kva = 0.0;
    std::vector<int> house_ids;

    bool operator==(const Transformer&) const = default;
};

struct House {
    int id = 0;
    HouseProfile profile = HouseProfile::Type1;
    int transformer_id = 0;
    bool has_ev = false;

    bool operator==(const House&) const = default;
};

/// Static feeder structure. Houses are indexed by id, transformers by id.
struct Grid {
    std::vector<Transformer> transformers;
    std::vector<House> houses;
    double substation_rating_kva = 0.0;
    int node_count = 0;

    int ev_count() const;
    bool operator==(const Grid&) const = default;
};

/// house_count * kva_per_house; throws std::invalid_argument for
/// house_count < 1.
double transformer_rating(int house_count, double kva_per_house);

/// Partitions houses into transformer groups of size drawn uniformly from
/// [houses_min, houses_max]. A draw larger than the houses left is cut to
/// what remains; once fewer than houses_min remain they join the last
/// group. Groups are placed on nodes in rounds of node_count, each round a
/// fresh random permutation of the nodes. Throws ConfigError when
/// total_houses < houses_min.
Grid build_grid(const TopologySpec& topo, double type2_fraction, RandomStream& rng);

/// Number of EV houses for a penetration rate: round(rate * houses).
int ev_count_for(double penetration_rate, int total_houses);

/// Seeded permutation of house ids; EV houses for any rate are a prefix of
/// it, so higher penetration always contains lower.
std::vector<int> ev_placement_order(int total_houses, RandomStream& rng);

Grid assign_evs(Grid grid, double penetration_rate, RandomStream& rng);

/// Grid for a scenario: build_grid on the (GridPartition, 0, 0) substream,
/// then assign_evs on the (EvPlacement, 0, 0) substream.
Grid build_scenario_grid(const ScenarioBundle& bundle);

/// `transformer_id,node_id,rating_kva,house_count,ev_count`
void write_grid_dump(std::ostream& os, const Grid& grid);

/// FNV-1a over the grid's structural fields.
std::uint64_t grid_digest(const Grid& grid);

}  // namespace evgrid
