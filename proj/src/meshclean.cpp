#include "hullbench/meshclean.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hullbench {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

std::vector<std::vector<int>> connected_components(const TriangleMesh& mesh) {
    const int n_faces = static_cast<int>(mesh.faces.size());
    UnionFind uf(n_faces);
    std::vector<int> first_face_of_vertex(mesh.vertices.size(), -1);
    for (int f = 0; f < n_faces; ++f) {
        for (int idx : mesh.faces[f]) {
            int& first = first_face_of_vertex[idx];
            if (first < 0) first = f;
            else uf.unite(first, f);
        }
    }

    std::vector<std::vector<int>> components;
    std::vector<int> component_of_root(n_faces, -1);
    for (int f = 0; f < n_faces; ++f) {
        const int root = uf.find(f);
        if (component_of_root[root] < 0) {
            component_of_root[root] = static_cast<int>(components.size());
            components.emplace_back();
        }
        components[component_of_root[root]].push_back(f);
    }
    // Roots are component minima, so iteration order already sorts
    // components by smallest contained face index.
    return components;
}

CleanResult clean(const TriangleMesh& mesh, double min_face_fraction,
                  bool keep_largest_only) {
    if (!(min_face_fraction > 0.0 && min_face_fraction < 1.0))
        throw std::invalid_argument("clean: min_face_fraction must lie in (0, 1)");
    if (mesh.faces.empty()) throw std::invalid_argument("clean: mesh has no faces");

    const auto components = connected_components(mesh);
    const long total_faces = static_cast<long>(mesh.faces.size());

    std::vector<bool> keep(components.size(), false);
    if (keep_largest_only) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < components.size(); ++c)
            if (components[c].size() > components[best].size()) best = c;
        keep[best] = true;
    } else {
        const double threshold = min_face_fraction * total_faces;
        for (std::size_t c = 0; c < components.size(); ++c)
            keep[c] = static_cast<double>(components[c].size()) >= threshold;
        if (std::none_of(keep.begin(), keep.end(), [](bool k) { return k; }))
            throw std::runtime_error("clean: cleaning would remove everything");
    }

    std::vector<bool> face_kept(mesh.faces.size(), false);
    long faces_removed = 0;
    int components_removed = 0;
    for (std::size_t c = 0; c < components.size(); ++c) {
        if (keep[c]) {
            for (int f : components[c]) face_kept[f] = true;
        } else {
            ++components_removed;
            faces_removed += static_cast<long>(components[c].size());
        }
    }

    CleanResult result;
    // Prune unreferenced vertices, keeping the original vertex order so a
    // no-op clean reproduces its input bit for bit.
    std::vector<bool> referenced(mesh.vertices.size(), false);
    for (std::size_t f = 0; f < mesh.faces.size(); ++f)
        if (face_kept[f])
            for (int idx : mesh.faces[f]) referenced[idx] = true;
    std::vector<int> vertex_map(mesh.vertices.size(), -1);
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        if (!referenced[v]) continue;
        vertex_map[v] = static_cast<int>(result.mesh.vertices.size());
        result.mesh.vertices.push_back(mesh.vertices[v]);
        if (mesh.has_colors())
            result.mesh.vertex_colors.push_back(mesh.vertex_colors[v]);
    }
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        if (!face_kept[f]) continue;
        result.mesh.faces.push_back({vertex_map[mesh.faces[f][0]],
                                     vertex_map[mesh.faces[f][1]],
                                     vertex_map[mesh.faces[f][2]]});
    }

    result.report.components_found = static_cast<int>(components.size());
    result.report.components_removed = components_removed;
    result.report.faces_removed = faces_removed;
    result.report.kept_face_fraction =
        static_cast<double>(total_faces - faces_removed) / static_cast<double>(total_faces);
    return result;
}

}  // namespace hullbench
