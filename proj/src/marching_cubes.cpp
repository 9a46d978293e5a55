#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hullbench/parallel.hpp"
#include "hullbench/reconstruct.hpp"
#include "mc_tables.hpp"

namespace hullbench {

namespace {

// Cube topology shared by the tables and the consistency checker.
constexpr int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
constexpr int kEdgeCorner[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                                    {4, 5}, {5, 6}, {6, 7}, {7, 4},
                                    {0, 4}, {1, 5}, {2, 6}, {3, 7}};
// Each face as a corner cycle; edge i of a face joins cycle[i] and cycle[i+1].
constexpr int kFaceCycle[6][4] = {{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 5, 4},
                                  {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
constexpr int kFaceEdge[6][4] = {{0, 1, 2, 3},  {4, 5, 6, 7},  {0, 9, 4, 8},
                                 {1, 10, 5, 9}, {2, 11, 6, 10}, {3, 8, 7, 11}};

using Segment = std::pair<int, int>;  // unordered pair of edge ids

Segment make_segment(int a, int b) { return a < b ? Segment{a, b} : Segment{b, a}; }

// Boundary segments a cell's surface must place on its faces, derived from
// the corner occupancy alone. Ambiguous faces (diagonal occupancy) always
// separate the occupied corners, so both cells sharing a face agree.
std::vector<Segment> rule_segments(int config) {
    auto empty = [&](int corner) { return (config >> corner) & 1; };
    std::vector<Segment> segments;
    for (int f = 0; f < 6; ++f) {
        int crossings[4];
        int n_cross = 0;
        for (int i = 0; i < 4; ++i) {
            const int a = kFaceCycle[f][i], b = kFaceCycle[f][(i + 1) % 4];
            if (empty(a) != empty(b)) crossings[n_cross++] = i;
        }
        if (n_cross == 2) {
            segments.push_back(
                make_segment(kFaceEdge[f][crossings[0]], kFaceEdge[f][crossings[1]]));
        } else if (n_cross == 4) {
            for (int i = 0; i < 4; ++i) {
                if (!empty(kFaceCycle[f][i])) {
                    segments.push_back(make_segment(kFaceEdge[f][(i + 3) % 4],
                                                    kFaceEdge[f][i]));
                }
            }
        }
    }
    return segments;
}

std::array<double, 3> edge_midpoint(int edge) {
    const int a = kEdgeCorner[edge][0], b = kEdgeCorner[edge][1];
    return {(kCorner[a][0] + kCorner[b][0]) * 0.5, (kCorner[a][1] + kCorner[b][1]) * 0.5,
            (kCorner[a][2] + kCorner[b][2]) * 0.5};
}

// Per-configuration triangulation. Vertex ids 0..11 are cube-edge crossings;
// ids 12+k are interior centroid vertices of repaired loops (loop k).
struct CellTriangulation {
    std::vector<int> triangles;           // flat triples
    std::vector<std::vector<int>> loops;  // edge-id cycles, for centroid placement
};

// Boundary (odd-count) undirected edges of a triangulated patch.
std::vector<Segment> patch_boundary(const int* entry) {
    std::map<Segment, int> counts;
    for (int i = 0; entry[i] != -1; i += 3) {
        for (int k = 0; k < 3; ++k)
            ++counts[make_segment(entry[i + k], entry[i + (k + 1) % 3])];
    }
    std::vector<Segment> boundary;
    for (const auto& [segment, count] : counts)
        if (count % 2 == 1) boundary.push_back(segment);
    return boundary;
}

// Assembles the closed loops the rule segments form and triangulates each
// from an interior centroid. Centroid spokes lie strictly inside the cell,
// so repaired cells can never share an interior edge across a face (a plain
// fan can, which shows up as a 4-valent edge between two repaired cells).
CellTriangulation triangulate_from_rule(int config,
                                        const std::vector<Segment>& segments) {
    std::unordered_map<int, std::vector<int>> adjacency;
    for (const auto& [a, b] : segments) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }

    auto empty = [&](int corner) { return (config >> corner) & 1; };
    CellTriangulation cell;

    std::vector<bool> used(12, false);
    for (int start = 0; start < 12; ++start) {
        if (!adjacency.count(start) || used[start]) continue;
        std::vector<int> loop{start};
        used[start] = true;
        int prev = -1, current = start;
        for (;;) {
            const auto& next_candidates = adjacency[current];
            int next = next_candidates[0] == prev ? next_candidates[1] : next_candidates[0];
            if (next == start) break;
            loop.push_back(next);
            used[next] = true;
            prev = current;
            current = next;
        }

        // Orient the loop so its area vector points toward the empty side,
        // matching the classic table's winding.
        std::array<double, 3> area{0, 0, 0}, toward_empty{0, 0, 0};
        const auto p0 = edge_midpoint(loop[0]);
        for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
            const auto p1 = edge_midpoint(loop[i]);
            const auto p2 = edge_midpoint(loop[i + 1]);
            const double ax = p1[0] - p0[0], ay = p1[1] - p0[1], az = p1[2] - p0[2];
            const double bx = p2[0] - p0[0], by = p2[1] - p0[1], bz = p2[2] - p0[2];
            area[0] += ay * bz - az * by;
            area[1] += az * bx - ax * bz;
            area[2] += ax * by - ay * bx;
        }
        for (int e : loop) {
            const int a = kEdgeCorner[e][0], b = kEdgeCorner[e][1];
            const int from = empty(a) ? b : a;  // occupied endpoint
            const int to = empty(a) ? a : b;    // empty endpoint
            for (int c = 0; c < 3; ++c) toward_empty[c] += kCorner[to][c] - kCorner[from][c];
        }
        const double align = area[0] * toward_empty[0] + area[1] * toward_empty[1] +
                             area[2] * toward_empty[2];
        if (align < 0.0) std::reverse(loop.begin(), loop.end());

        const int centroid_id = 12 + static_cast<int>(cell.loops.size());
        const std::size_t m = loop.size();
        for (std::size_t i = 0; i < m; ++i) {
            cell.triangles.push_back(centroid_id);
            cell.triangles.push_back(loop[i]);
            cell.triangles.push_back(loop[(i + 1) % m]);
        }
        cell.loops.push_back(std::move(loop));
    }
    return cell;
}

// The classic table, with any entry whose face boundaries disagree with the
// canonical pairing replaced by a rule-derived triangulation. Adjacent cells
// then always stitch, which keeps extracted surfaces watertight.
const std::array<CellTriangulation, 256>& resolved_table() {
    static const std::array<CellTriangulation, 256> table = [] {
        std::array<CellTriangulation, 256> resolved;
        for (int config = 0; config < 256; ++config) {
            auto rule = rule_segments(config);
            auto boundary = patch_boundary(mc::kTriTable[config]);
            std::sort(rule.begin(), rule.end());
            std::sort(boundary.begin(), boundary.end());
            if (rule == boundary) {
                for (int i = 0; mc::kTriTable[config][i] != -1; ++i)
                    resolved[config].triangles.push_back(mc::kTriTable[config][i]);
            } else {
                resolved[config] = triangulate_from_rule(config, rule);
            }
        }
        return resolved;
    }();
    return table;
}

}  // namespace

TriangleMesh extract_mesh(const VoxelGrid& grid, double iso) {
    if (grid.cell_count() == 0) throw std::invalid_argument("extract_mesh: empty grid");
    if (!(iso > 0.0 && iso < 1.0))
        throw std::invalid_argument("extract_mesh: iso must lie in (0, 1)");
    if (grid.count_occupied() == 0)
        throw std::invalid_argument("extract_mesh: nothing to extract");

    const auto& table = resolved_table();

    // Sample lattice padded with one empty layer on every side; sample
    // (i, j, k) corresponds to voxel (i-1, j-1, k-1).
    const int sx = grid.nx + 2, sy = grid.ny + 2, sz = grid.nz + 2;
    auto sample = [&](int i, int j, int k) -> int {
        if (i < 1 || j < 1 || k < 1 || i > grid.nx || j > grid.ny || k > grid.nz)
            return 0;
        return grid.occupied(i - 1, j - 1, k - 1) ? 1 : 0;
    };
    auto sample_pos = [&](int i, int j, int k) {
        return grid.origin + Vec3{(i - 0.5) * grid.cell_size, (j - 0.5) * grid.cell_size,
                                  (k - 0.5) * grid.cell_size};
    };

    const int cx = sx - 1, cy = sy - 1, cz = sz - 1;  // cells per axis

    auto cell_config = [&](int ci, int cj, int ck) {
        int config = 0;
        for (int corner = 0; corner < 8; ++corner) {
            const int value = sample(ci + kCorner[corner][0], cj + kCorner[corner][1],
                                     ck + kCorner[corner][2]);
            if (value < iso) config |= 1 << corner;
        }
        return config;
    };

    // Vertex keys: edge keys are even (base sample + axis), centroid keys odd
    // (cell linear index + loop ordinal). Both decode back to positions.
    auto edge_key = [&](int i, int j, int k, int corner_a, int corner_b) -> std::uint64_t {
        int ax = i + kCorner[corner_a][0], ay = j + kCorner[corner_a][1],
            az = k + kCorner[corner_a][2];
        int bx = i + kCorner[corner_b][0], by = j + kCorner[corner_b][1],
            bz = k + kCorner[corner_b][2];
        if (bx < ax || by < ay || bz < az) {
            std::swap(ax, bx);
            std::swap(ay, by);
            std::swap(az, bz);
        }
        const int axis = bx > ax ? 0 : (by > ay ? 1 : 2);
        const std::uint64_t linear =
            ((static_cast<std::uint64_t>(ax) * sy + ay) * sz + az) * 3 + axis;
        return linear << 1;
    };
    auto centroid_key = [&](int ci, int cj, int ck, int loop) -> std::uint64_t {
        const std::uint64_t linear =
            ((static_cast<std::uint64_t>(ck) * cy + cj) * cx + ci) * 4 + loop;
        return (linear << 1) | 1;
    };

    // Phase 1: per-layer triangle emission as vertex keys (parallel).
    std::vector<std::vector<std::uint64_t>> layer_keys(cz);
    parallel_for(static_cast<std::size_t>(cz), 1, [&](std::size_t k0, std::size_t k1) {
        for (std::size_t ck = k0; ck < k1; ++ck) {
            auto& keys = layer_keys[ck];
            for (int cj = 0; cj < cy; ++cj) {
                for (int ci = 0; ci < cx; ++ci) {
                    const int config = cell_config(ci, cj, static_cast<int>(ck));
                    if (config == 0 || config == 255) continue;
                    const CellTriangulation& entry = table[config];
                    for (int vid : entry.triangles) {
                        if (vid < 12) {
                            keys.push_back(edge_key(ci, cj, static_cast<int>(ck),
                                                    kEdgeCorner[vid][0],
                                                    kEdgeCorner[vid][1]));
                        } else {
                            keys.push_back(
                                centroid_key(ci, cj, static_cast<int>(ck), vid - 12));
                        }
                    }
                }
            }
        }
    });

    auto decode_edge_vertex = [&](std::uint64_t key) -> Vec3 {
        std::uint64_t linear = key >> 1;
        const int axis = static_cast<int>(linear % 3);
        linear /= 3;
        const int az = static_cast<int>(linear % sz);
        linear /= sz;
        const int ay = static_cast<int>(linear % sy);
        const int ax = static_cast<int>(linear / sy);
        int bx = ax, by = ay, bz = az;
        (axis == 0 ? bx : axis == 1 ? by : bz) += 1;
        const int va = sample(ax, ay, az);
        const int vb = sample(bx, by, bz);
        const Vec3 pa = sample_pos(ax, ay, az), pb = sample_pos(bx, by, bz);
        const double t = (iso - va) / (static_cast<double>(vb) - va);
        return pa + (pb - pa) * t;
    };
    auto decode_centroid_vertex = [&](std::uint64_t key) -> Vec3 {
        std::uint64_t linear = key >> 1;
        const int loop = static_cast<int>(linear % 4);
        linear /= 4;
        const int ci = static_cast<int>(linear % cx);
        linear /= cx;
        const int cj = static_cast<int>(linear % cy);
        const int ck = static_cast<int>(linear / cy);
        const int config = cell_config(ci, cj, ck);
        const auto& cycle = table[config].loops.at(loop);
        Vec3 sum{0, 0, 0};
        for (int edge : cycle)
            sum += decode_edge_vertex(
                edge_key(ci, cj, ck, kEdgeCorner[edge][0], kEdgeCorner[edge][1]));
        return sum / static_cast<double>(cycle.size());
    };

    // Phase 2: serial weld in layer order; vertex indices are assigned on
    // first use, so output is identical for any worker count.
    TriangleMesh mesh;
    std::unordered_map<std::uint64_t, int> vertex_of;
    for (const auto& keys : layer_keys) {
        for (std::size_t i = 0; i < keys.size(); i += 3) {
            int idx[3];
            for (int k = 0; k < 3; ++k) {
                const std::uint64_t key = keys[i + k];
                const auto [it, inserted] =
                    vertex_of.try_emplace(key, static_cast<int>(mesh.vertices.size()));
                if (inserted)
                    mesh.vertices.push_back(key & 1 ? decode_centroid_vertex(key)
                                                    : decode_edge_vertex(key));
                idx[k] = it->second;
            }
            mesh.faces.push_back({idx[0], idx[1], idx[2]});
        }
    }
    return mesh;
}

namespace detail {
std::vector<int> mc_table_entry(int config) { return resolved_table()[config].triangles; }
}  // namespace detail

}  // namespace hullbench
