#include "placekit/scoring.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace placekit {

namespace {

// Monotone 64-bit image of a double: x < y iff key(x) < key(y) for all finite
// inputs (the usual sign-flip transform of the IEEE bit pattern).
std::uint64_t ordered_bits(double v) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    return bits ^ ((bits >> 63) ? ~std::uint64_t{0} : (std::uint64_t{1} << 63));
}

struct KeyedRow {
    std::uint64_t key;
    std::uint64_t payload;
};

// Stable ascending sort of rows by key. The pair matrices this module ranks
// run to hundreds of thousands of entries per call, where a comparison sort
// alone would eat the whole latency budget. A plain LSD radix scatter over
// the full array is DRAM-bound, so the rows are first partitioned by their
// most significant varying byte; the byte-wise passes below it then scatter
// within one partition at a time, which stays cache-resident. Stable
// counting passes throughout, so equal keys keep their input order.
void radix_sort_rows(std::vector<KeyedRow>& rows) {
    const std::size_t n = rows.size();
    if (n < 64) {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const KeyedRow& a, const KeyedRow& b) { return a.key < b.key; });
        return;
    }

    // One read pass gathers the digit histograms of every byte.
    std::array<std::array<std::uint32_t, 256>, 8> hist{};
    for (const auto& row : rows) {
        for (int b = 0; b < 8; ++b) ++hist[b][(row.key >> (8 * b)) & 0xffu];
    }
    const auto is_constant = [&](int b) {
        return hist[b][(rows[0].key >> (8 * b)) & 0xffu] == n;
    };
    int top = 7;
    while (top >= 0 && is_constant(top)) --top;
    if (top < 0) return;  // all keys equal

    std::vector<KeyedRow> scratch(n);
    std::array<std::size_t, 257> start{};
    for (int d = 0; d < 256; ++d) start[d + 1] = start[d] + hist[top][d];
    {
        std::array<std::size_t, 256> cursor;
        std::copy(start.begin(), start.begin() + 256, cursor.begin());
        for (std::size_t i = 0; i < n; ++i) {
            scratch[cursor[(rows[i].key >> (8 * top)) & 0xffu]++] = rows[i];
        }
        rows.swap(scratch);
    }
    if (top == 0) return;

    std::array<std::array<std::uint32_t, 256>, 8> part_hist;
    std::array<std::uint32_t, 256> cursor;
    for (int d = 0; d < 256; ++d) {
        const std::size_t lo = start[d], hi = start[d + 1];
        if (hi - lo < 2) continue;
        for (int b = 0; b < top; ++b) part_hist[b].fill(0);
        for (std::size_t i = lo; i < hi; ++i) {
            for (int b = 0; b < top; ++b) ++part_hist[b][(rows[i].key >> (8 * b)) & 0xffu];
        }
        for (int b = 0; b < top; ++b) {
            const auto& h = part_hist[b];
            if (h[(rows[lo].key >> (8 * b)) & 0xffu] == hi - lo) continue;
            std::uint32_t sum = 0;
            for (int v = 0; v < 256; ++v) {
                cursor[v] = sum;
                sum += h[v];
            }
            for (std::size_t i = lo; i < hi; ++i) {
                scratch[lo + cursor[(rows[i].key >> (8 * b)) & 0xffu]++] = rows[i];
            }
            std::copy(scratch.begin() + lo, scratch.begin() + hi, rows.begin() + lo);
        }
    }
}

// Indices of `values` in stable descending value order (ties keep the lower
// index first, matching a stable comparison sort).
std::vector<std::size_t> descending_order(const std::vector<double>& values) {
    std::vector<KeyedRow> rows(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) rows[i] = {~ordered_bits(values[i]), i};
    radix_sort_rows(rows);
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) order[i] = rows[i].payload;
    return order;
}

}  // namespace

void AltitudeParams::validate() const {
    if (!(z_start < z_end)) throw std::invalid_argument("altitude window requires z_start < z_end");
    if (!(steepness > 0.0)) throw std::invalid_argument("altitude steepness must be > 0");
    if (!(0.0 <= w_min && w_min <= w_max && w_max <= 1.0)) {
        throw std::invalid_argument("altitude weights require 0 <= w_min <= w_max <= 1");
    }
}

void UnifiedWeights::validate() const {
    if (!(grasp > 0.0) || !(place > 0.0)) {
        throw std::invalid_argument("unified weights must be strictly positive");
    }
}

double pcg_score(double quality, int reachable, int collision_free) {
    if (!(quality >= 0.0 && quality <= 1.0)) {
        throw std::invalid_argument("grasp quality must lie in [0, 1]");
    }
    return quality * (reachable ? 1.0 : 0.0) * (collision_free ? 1.0 : 0.0);
}

double grasp_clearance(const GraspCandidate& grasp_at_placement,
                       const PointCloud& object_at_placement) {
    if (object_at_placement.points.empty()) throw EmptyGeometry("object cloud is empty");
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& p : object_at_placement.points) lowest = std::min(lowest, p.z());
    return grasp_at_placement.pose.translation.z() - lowest;
}

double altitude_weight(double clearance, const AltitudeParams& params) {
    params.validate();
    const double t = params.steepness * (clearance - params.z_mid());
    return params.w_min + (params.w_max - params.w_min) / (1.0 + std::exp(-t));
}

double placeability_score(double pcg, double stability, double altitude, double heuristic) {
    return pcg * stability * altitude * heuristic;
}

NormalizedScores normalize_scores(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("cannot normalize an empty score sequence");
    NormalizedScores out;
    const double peak = *std::max_element(values.begin(), values.end());
    if (peak > 0.0) {
        out.values.reserve(values.size());
        for (double v : values) out.values.push_back(v / peak);
    } else {
        out.values.assign(values.size(), 0.0);
        out.all_zero = true;
    }
    out.order = descending_order(out.values);
    return out;
}

CollisionMatrix collision_matrix(const std::vector<GraspCandidate>& grasps,
                                 const std::vector<PlacementCandidate>& placements,
                                 const RigidPose& observed_pose, const TriMesh& environment,
                                 const GripperModel& gripper, double margin) {
    if (grasps.empty() || placements.empty()) {
        throw std::invalid_argument("collision matrix requires non-empty candidate sets");
    }
    CollisionMatrix m;
    m.grasp_count = grasps.size();
    m.placement_count = placements.size();
    m.entries.assign(m.grasp_count * m.placement_count, 1);
    if (environment.empty()) return m;

    const MeshBvh env_tree(environment);
    for (std::size_t k = 0; k < grasps.size(); ++k) {
        for (std::size_t p = 0; p < placements.size(); ++p) {
            const GraspCandidate moved =
                transform_grasp(grasps[k], observed_pose, placements[p].pose);
            if (gripper_collides(moved, gripper, env_tree, margin)) {
                m.entries[k * m.placement_count + p] = 0;
            }
        }
    }
    return m;
}

UnifiedScoreMatrix unified_scores(const std::vector<double>& grasp_values,
                                  const std::vector<double>& placement_values,
                                  const CollisionMatrix& collisions,
                                  const UnifiedWeights& weights) {
    weights.validate();
    if (grasp_values.size() != collisions.grasp_count) {
        throw ShapeError("grasp score count does not match the collision matrix rows");
    }
    if (placement_values.size() != collisions.grasp_count * collisions.placement_count) {
        throw ShapeError("placement score count does not match the collision matrix size");
    }

    UnifiedScoreMatrix out;
    out.grasp_count = collisions.grasp_count;
    out.placement_count = collisions.placement_count;
    out.grasp_scores = normalize_scores(grasp_values);
    out.placement_scores = normalize_scores(placement_values);

    out.entries.resize(out.grasp_count * out.placement_count);
    for (std::size_t k = 0; k < out.grasp_count; ++k) {
        const double g = weights.grasp * out.grasp_scores.values[k];
        for (std::size_t p = 0; p < out.placement_count; ++p) {
            const std::size_t i = k * out.placement_count + p;
            out.entries[i] = g * (weights.place * out.placement_scores.values[i]) *
                             static_cast<double>(collisions.entries[i]);
        }
    }
    return out;
}

std::vector<ScoredPair> select_best_pair(const UnifiedScoreMatrix& m) {
    if (m.entries.empty()) throw std::invalid_argument("cannot select from an empty matrix");
    // Rows are collected in (grasp, placement) order, so a stable sort on
    // the score alone realizes the documented tie-break for free.
    std::vector<KeyedRow> rows;
    rows.reserve(m.entries.size());
    for (std::size_t k = 0; k < m.grasp_count; ++k) {
        const std::size_t base = k * m.placement_count;
        for (std::size_t p = 0; p < m.placement_count; ++p) {
            const double s = m.entries[base + p];
            if (s > 0.0) rows.push_back({~ordered_bits(s), (std::uint64_t(k) << 32) | p});
        }
    }
    if (rows.empty()) {
        throw NoFeasiblePair({{"pairs_considered", m.entries.size()}});
    }
    radix_sort_rows(rows);
    std::vector<ScoredPair> pairs(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t k = rows[i].payload >> 32;
        const std::size_t p = rows[i].payload & 0xffffffffu;
        pairs[i] = {k, p, m.entries[k * m.placement_count + p]};
    }
    return pairs;
}

}  // namespace placekit
