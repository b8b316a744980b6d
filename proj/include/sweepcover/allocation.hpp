#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "sweepcover/swaths.hpp"
#include "sweepcover/visibility.hpp"

namespace sweepcover {

/// Single-depot mTSP instance over swaths: symmetric transition-cost matrix
/// built from minimum feasible endpoint-to-endpoint distances.
struct AllocationInstance {
    Point2 depot{};
    int n_swaths = 0;
    int n_robots = 1;
    int min_tour_size = 0;  // floor(n_swaths / n_robots)
    std::vector<std::array<Point2, 2>> endpoints;
    std::vector<double> swath_lengths;
    std::vector<std::vector<double>> cost;  // n x n, symmetric, zero diagonal
    std::vector<double> depot_cost;         // n
    std::vector<std::string> warnings;
};

struct Allocation {
    std::vector<std::vector<int>> tours;  // one ordered swath-id list per robot
    double objective = 0.0;               // sum of tour costs incl. swath lengths + depot legs
    std::vector<std::string> warnings;
};

/// Transition cost between swaths m and m': minimum feasible distance over
/// the four endpoint combinations. Depot costs take the nearer endpoint.
inline AllocationInstance build_cost_matrix(const SwathSet& swaths, const VisGraph& g,
                                            const Point2& depot, int n_robots) {
    if (n_robots < 1) throw PlannerError(ErrorKind::invalid_argument, "need at least one robot");
    int n = static_cast<int>(swaths.swaths.size());
    AllocationInstance inst;
    inst.depot = depot;
    inst.n_swaths = n;
    inst.n_robots = n_robots;
    inst.min_tour_size = n / n_robots;
    if (n < n_robots) {
        inst.warnings.push_back("fewer swaths than robots: minimum tour size relaxed to 0");
    }
    inst.endpoints.reserve(n);
    inst.swath_lengths.reserve(n);
    std::vector<int> node_ids;  // 2 per swath, then depot
    for (const Swath& s : swaths.swaths) {
        inst.endpoints.push_back({s.a, s.b});
        inst.swath_lengths.push_back(s.length);
        int ia = g.find_node(s.a), ib = g.find_node(s.b);
        if (ia < 0 || ib < 0) {
            throw PlannerError(ErrorKind::invalid_argument,
                               "swath endpoints are not registered in the visibility graph");
        }
        node_ids.push_back(ia);
        node_ids.push_back(ib);
    }
    int depot_node = g.find_node(depot);
    if (depot_node < 0) {
        throw PlannerError(ErrorKind::invalid_argument,
                           "depot is not registered in the visibility graph");
    }
    node_ids.push_back(depot_node);

    std::vector<std::vector<double>> dist(node_ids.size());
    for (size_t i = 0; i < node_ids.size(); ++i) {
        dist[i] = shortest_distances_from(g, node_ids[i]);
    }
    auto endpoint_dist = [&](int ei, int ej) { return dist[ei][node_ids[ej]]; };

    inst.depot_cost.resize(n);
    std::vector<int> stranded;
    for (int m = 0; m < n; ++m) {
        inst.depot_cost[m] =
            std::min(endpoint_dist(2 * n, 2 * m), endpoint_dist(2 * n, 2 * m + 1));
        if (!std::isfinite(inst.depot_cost[m])) stranded.push_back(m);
    }
    if (!stranded.empty()) {
        std::string ids;
        for (int m : stranded) ids += (ids.empty() ? "" : ", ") + std::to_string(m);
        throw PlannerError(ErrorKind::infeasible_instance,
                           "swaths unreachable from the depot: [" + ids + "]");
    }
    inst.cost.assign(n, std::vector<double>(n, 0.0));
    for (int m = 0; m < n; ++m) {
        for (int k = m + 1; k < n; ++k) {
            double c = std::min(std::min(endpoint_dist(2 * m, 2 * k), endpoint_dist(2 * m, 2 * k + 1)),
                                std::min(endpoint_dist(2 * m + 1, 2 * k),
                                         endpoint_dist(2 * m + 1, 2 * k + 1)));
            if (!std::isfinite(c)) {
                throw PlannerError(ErrorKind::infeasible_instance,
                                   "swaths " + std::to_string(m) + " and " + std::to_string(k) +
                                       " are in disconnected feasible components");
            }
            inst.cost[m][k] = inst.cost[k][m] = c;
        }
    }
    return inst;
}

/// Tour cost: depot leg in, transitions, depot leg out, plus swath lengths.
inline double tour_cost(const AllocationInstance& inst, const std::vector<int>& tour) {
    if (tour.empty()) return 0.0;
    double c = inst.depot_cost[tour.front()] + inst.depot_cost[tour.back()];
    for (size_t i = 0; i + 1 < tour.size(); ++i) c += inst.cost[tour[i]][tour[i + 1]];
    for (int m : tour) c += inst.swath_lengths[m];
    return c;
}

inline double allocation_objective(const AllocationInstance& inst,
                                   const std::vector<std::vector<int>>& tours) {
    double total = 0.0;
    for (const auto& t : tours) total += tour_cost(inst, t);
    return total;
}

namespace detail {

inline double edge_cost(const AllocationInstance& inst, const std::vector<int>& tour, int pos_a,
                        int pos_b) {
    // pos == -1 or == size() denotes the depot.
    int n = static_cast<int>(tour.size());
    bool a_depot = pos_a < 0 || pos_a >= n;
    bool b_depot = pos_b < 0 || pos_b >= n;
    if (a_depot && b_depot) return 0.0;
    if (a_depot) return inst.depot_cost[tour[pos_b]];
    if (b_depot) return inst.depot_cost[tour[pos_a]];
    return inst.cost[tour[pos_a]][tour[pos_b]];
}

/// Nearest-neighbor order over a subset of swaths, starting from the depot.
inline std::vector<int> nearest_neighbor_tour(const AllocationInstance& inst,
                                              const std::vector<int>& members) {
    std::vector<int> tour;
    std::vector<bool> used(members.size(), false);
    tour.reserve(members.size());
    for (size_t step = 0; step < members.size(); ++step) {
        int best = -1;
        double best_cost = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < members.size(); ++i) {
            if (used[i]) continue;
            double c = tour.empty() ? inst.depot_cost[members[i]]
                                    : inst.cost[tour.back()][members[i]];
            if (c < best_cost) {
                best_cost = c;
                best = static_cast<int>(i);
            }
        }
        used[best] = true;
        tour.push_back(members[best]);
    }
    return tour;
}

struct Move {
    enum class Kind { two_opt, relocate, swap } kind;
    int r1, i, r2, j;
};

}  // namespace detail

namespace detail {

/// First-improvement descent over 2-opt (within tours) and relocate/swap
/// (across tours), rejecting moves that violate the minimum tour size.
/// Monotone: every applied move strictly decreases the objective.
inline void improve_tours(const AllocationInstance& inst, std::vector<std::vector<int>>& tours,
                          std::mt19937_64& rng, long& moves_left) {
    int r = static_cast<int>(tours.size());
    auto cost = [&](int robot, int i, int j) { return edge_cost(inst, tours[robot], i, j); };
    bool improved = true;
    while (improved && moves_left > 0) {
        improved = false;
        std::vector<Move> candidates;
        for (int r1 = 0; r1 < r; ++r1) {
            int k1 = static_cast<int>(tours[r1].size());
            for (int i = 0; i < k1; ++i) {
                for (int j = i + 1; j < k1; ++j) {
                    candidates.push_back({Move::Kind::two_opt, r1, i, r1, j});
                }
                for (int r2 = 0; r2 < r; ++r2) {
                    int k2 = static_cast<int>(tours[r2].size());
                    for (int j = 0; j <= k2; ++j) {
                        if (r1 == r2 && (j == i || j == i + 1)) continue;
                        candidates.push_back({Move::Kind::relocate, r1, i, r2, j});
                    }
                    if (r2 > r1) {
                        for (int j = 0; j < k2; ++j) {
                            candidates.push_back({Move::Kind::swap, r1, i, r2, j});
                        }
                    }
                }
            }
        }
        std::shuffle(candidates.begin(), candidates.end(), rng);
        for (const Move& m : candidates) {
            if (moves_left <= 0) break;
            double delta = 0.0;
            switch (m.kind) {
                case Move::Kind::two_opt: {
                    auto& t = tours[m.r1];
                    delta = cost(m.r1, m.i - 1, m.j) + cost(m.r1, m.i, m.j + 1) -
                            cost(m.r1, m.i - 1, m.i) - cost(m.r1, m.j, m.j + 1);
                    if (delta < -1e-9) {
                        std::reverse(t.begin() + m.i, t.begin() + m.j + 1);
                    }
                    break;
                }
                case Move::Kind::relocate: {
                    if (m.r1 != m.r2 &&
                        static_cast<int>(tours[m.r1].size()) - 1 < inst.min_tour_size) {
                        continue;
                    }
                    int swath = tours[m.r1][m.i];
                    double remove = cost(m.r1, m.i - 1, m.i + 1) - cost(m.r1, m.i - 1, m.i) -
                                    cost(m.r1, m.i, m.i + 1);
                    auto& dst = tours[m.r2];
                    // Evaluate insertion against the destination as it would
                    // look after removal when both tours are the same.
                    std::vector<int> tmp;
                    const std::vector<int>* ins = &dst;
                    int j = m.j;
                    if (m.r1 == m.r2) {
                        tmp = dst;
                        tmp.erase(tmp.begin() + m.i);
                        if (j > m.i) --j;
                        ins = &tmp;
                    }
                    int kd = static_cast<int>(ins->size());
                    double before = (j - 1 < 0 ? inst.depot_cost[swath]
                                               : inst.cost[(*ins)[j - 1]][swath]);
                    double after =
                        (j >= kd ? inst.depot_cost[swath] : inst.cost[swath][(*ins)[j]]);
                    double gap = 0.0;
                    if (j - 1 < 0 && j >= kd) {
                        gap = 0.0;
                    } else if (j - 1 < 0) {
                        gap = inst.depot_cost[(*ins)[j]];
                    } else if (j >= kd) {
                        gap = inst.depot_cost[(*ins)[j - 1]];
                    } else {
                        gap = inst.cost[(*ins)[j - 1]][(*ins)[j]];
                    }
                    delta = remove + before + after - gap;
                    if (delta < -1e-9) {
                        if (m.r1 == m.r2) {
                            tmp.insert(tmp.begin() + j, swath);
                            tours[m.r1] = std::move(tmp);
                        } else {
                            tours[m.r1].erase(tours[m.r1].begin() + m.i);
                            dst.insert(dst.begin() + j, swath);
                        }
                    }
                    break;
                }
                case Move::Kind::swap: {
                    auto& t1 = tours[m.r1];
                    auto& t2 = tours[m.r2];
                    int a = t1[m.i], b = t2[m.j];
                    auto around = [&](const std::vector<int>& t, int pos, int value) {
                        int k = static_cast<int>(t.size());
                        double prev = pos - 1 < 0 ? inst.depot_cost[value]
                                                  : inst.cost[t[pos - 1]][value];
                        double next =
                            pos + 1 >= k ? inst.depot_cost[value] : inst.cost[value][t[pos + 1]];
                        return prev + next;
                    };
                    delta = around(t1, m.i, b) + around(t2, m.j, a) - around(t1, m.i, a) -
                            around(t2, m.j, b);
                    if (delta < -1e-9) {
                        std::swap(t1[m.i], t2[m.j]);
                    }
                    break;
                }
            }
            if (delta < -1e-9) {
                improved = true;
                --moves_left;
                break;  // tours changed; re-enumerate candidates
            }
        }
    }
}

}  // namespace detail

/// Heuristic mTSP solver: balanced contiguous seeding along the sweep-normal
/// order, nearest-neighbor construction, then first-improvement 2-opt within
/// tours and relocate/swap across tours to a local optimum (or until the move
/// budget runs out). A few extra deterministic starts from seeded random
/// partitions guard against poor local optima; the best result wins. Fully
/// deterministic for a fixed seed.
inline Allocation solve_mtsp(const AllocationInstance& inst, uint64_t seed = 0,
                             long move_budget = -1) {
    int n = inst.n_swaths, r = inst.n_robots;
    if (n < 1) throw PlannerError(ErrorKind::invalid_argument, "no swaths to allocate");
    if (move_budget < 0) move_budget = 200L * n;
    std::mt19937_64 rng(seed);
    int base = n / r, extra = n % r;

    auto blocks_of = [&](const std::vector<int>& order) {
        std::vector<std::vector<int>> tours;
        int begin = 0;
        for (int robot = 0; robot < r; ++robot) {
            int size = base + (robot < extra ? 1 : 0);
            std::vector<int> block(order.begin() + begin, order.begin() + begin + size);
            std::vector<int> nn = detail::nearest_neighbor_tour(inst, block);
            tours.push_back(tour_cost(inst, nn) < tour_cost(inst, block) ? nn : block);
            begin += size;
        }
        return tours;
    };

    std::vector<int> z_order(n);
    std::iota(z_order.begin(), z_order.end(), 0);
    int n_starts = n <= 12 ? 8 : 3;

    Allocation best;
    best.warnings = inst.warnings;
    best.objective = std::numeric_limits<double>::infinity();
    for (int start = 0; start < n_starts; ++start) {
        std::vector<int> order = z_order;
        if (start > 0) std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::vector<int>> tours = blocks_of(order);
        long moves_left = move_budget;
        detail::improve_tours(inst, tours, rng, moves_left);
        double objective = allocation_objective(inst, tours);
        if (objective < best.objective - 1e-12) {
            best.objective = objective;
            best.tours = std::move(tours);
        }
    }
    return best;
}

/// Exhaustive optimum for small instances: every permutation of the swath set
/// split into every feasible composition of tour sizes. Test oracle.
inline Allocation brute_force_mtsp(const AllocationInstance& inst) {
    int n = inst.n_swaths, r = inst.n_robots;
    if (n > 9) {
        throw PlannerError(ErrorKind::size_limit,
                           "brute-force mTSP limited to 9 swaths, got " + std::to_string(n));
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    // All compositions of n into r parts, each >= min_tour_size.
    std::vector<std::vector<int>> compositions;
    std::vector<int> parts(r, 0);
    auto recurse = [&](auto&& self, int index, int remaining) -> void {
        if (index == r - 1) {
            if (remaining >= inst.min_tour_size) {
                parts[index] = remaining;
                compositions.push_back(parts);
            }
            return;
        }
        for (int take = inst.min_tour_size; take <= remaining; ++take) {
            parts[index] = take;
            self(self, index + 1, remaining - take);
        }
    };
    recurse(recurse, 0, n);

    Allocation best;
    best.objective = std::numeric_limits<double>::infinity();
    best.warnings = inst.warnings;
    do {
        for (const std::vector<int>& sizes : compositions) {
            double total = 0.0;
            int at = 0;
            for (int size : sizes) {
                if (size == 0) continue;
                total += inst.depot_cost[perm[at]] + inst.depot_cost[perm[at + size - 1]];
                for (int i = 0; i + 1 < size; ++i) total += inst.cost[perm[at + i]][perm[at + i + 1]];
                at += size;
            }
            for (int m : perm) total += inst.swath_lengths[m];
            if (total < best.objective) {
                best.objective = total;
                best.tours.clear();
                at = 0;
                for (int size : sizes) {
                    best.tours.emplace_back(perm.begin() + at, perm.begin() + at + size);
                    at += size;
                }
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace sweepcover
