#include "evgrid/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace evgrid {

int Grid::ev_count() const {
    return static_cast<int>(std::count_if(houses.begin(), houses.end(),
                                          [](const House& h) { return h.has_ev; }));
}

double transformer_rating(int house_count, double kva_per_house) {
    if (house_count < 1) {
        throw std::invalid_argument("transformer_rating: house_count must be >= 1, got " +
                                    std::to_string(house_count));
    }
    return house_count * kva_per_house;
}

Grid build_grid(const TopologySpec& topo, double type2_fraction, RandomStream& rng) {
    const auto [min_size, max_size] = topo.houses_per_transformer;
    if (topo.total_houses < min_size) {
        throw ConfigError("cannot form a transformer group: total_houses " +
                              std::to_string(topo.total_houses) + " < houses_min " +
                              std::to_string(min_size),
                          "total_houses", 0);
    }

    std::vector<int> sizes;
    int remaining = topo.total_houses;
    while (remaining >= min_size) {
        const int size = std::min(rng.uniform_int(min_size, max_size), remaining);
        sizes.push_back(size);
        remaining -= size;
    }
    sizes.back() += remaining;

    Grid grid;
    grid.node_count = topo.node_count;
    grid.substation_rating_kva = topo.substation_rating;
    grid.transformers.reserve(sizes.size());
    grid.houses.reserve(static_cast<std::size_t>(topo.total_houses));

    std::vector<int> node_round(static_cast<std::size_t>(topo.node_count));
    int next_house = 0;
    for (std::size_t t = 0; t < sizes.size(); ++t) {
        const auto slot = t % node_round.size();
        if (slot == 0) {
            std::iota(node_round.begin(), node_round.end(), 0);
            rng.shuffle(std::span<int>(node_round));
        }
        Transformer tr;
        tr.id = static_cast<int>(t);
        tr.node_id = node_round[slot];
        tr.rating_kva = transformer_rating(sizes[t], topo.kva_per_house);
        for (int k = 0; k < sizes[t]; ++k) {
            const bool type2 = rng.bernoulli(type2_fraction);
            grid.houses.push_back(
                {next_house, type2 ? HouseProfile::Type2 : HouseProfile::Type1, tr.id, false});
            tr.house_ids.push_back(next_house++);
        }
        grid.transformers.push_back(std::move(tr));
    }
    return grid;
}

int ev_count_for(double penetration_rate, int total_houses) {
    return static_cast<int>(std::llround(penetration_rate * total_houses));
}

std::vector<int> ev_placement_order(int total_houses, RandomStream& rng) {
    std::vector<int> order(static_cast<std::size_t>(total_houses));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<int>(order));
    return order;
}

Grid assign_evs(Grid grid, double penetration_rate, RandomStream& rng) {
    const int n = static_cast<int>(grid.houses.size());
    const auto order = ev_placement_order(n, rng);
    for (auto& h : grid.houses) h.has_ev = false;
    const int count = std::clamp(ev_count_for(penetration_rate, n), 0, n);
    for (int i = 0; i < count; ++i) grid.houses[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])].has_ev = true;
    return grid;
}

Grid build_scenario_grid(const ScenarioBundle& bundle) {
    const auto& sc = bundle.scenario();
    auto grid_rng = derive_stream(sc.seed, StreamPurpose::GridPartition, 0, 0);
    auto grid = build_grid(bundle.topology(), bundle.topology().type2_fraction, grid_rng);
    auto ev_rng = derive_stream(sc.seed, StreamPurpose::EvPlacement, 0, 0);
    return assign_evs(std::move(grid), sc.penetration_rate, ev_rng);
}

void write_grid_dump(std::ostream& os, const Grid& grid) {
    os << "transformer_id,node_id,rating_kva,house_count,ev_count\n";
    for (const auto& t : grid.transformers) {
        int evs = 0;
        for (int h : t.house_ids) evs += grid.houses[static_cast<std::size_t>(h)].has_ev ? 1 : 0;
        os << t.id << ',' << t.node_id << ',' << t.rating_kva << ',' << t.house_ids.size() << ','
           << evs << '\n';
    }
}

std::uint64_t grid_digest(const Grid& grid) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(static_cast<std::uint64_t>(grid.node_count));
    for (const auto& t : grid.transformers) {
        mix(static_cast<std::uint64_t>(t.id));
        mix(static_cast<std::uint64_t>(t.node_id));
        mix(static_cast<std::uint64_t>(std::llround(t.rating_kva * 1000.0)));
        for (int id : t.house_ids) mix(static_cast<std::uint64_t>(id));
    }
    for (const auto& house : grid.houses) {
        mix(static_cast<std::uint64_t>(house.profile == HouseProfile::Type2));
        mix(static_cast<std::uint64_t>(house.has_ev));
    }
    return h;
}

}  // namespace evgrid
