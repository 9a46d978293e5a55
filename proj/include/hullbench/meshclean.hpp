#pragma once

#include <vector>

#include "hullbench/mesh.hpp"

namespace hullbench {

struct CleanReport {
    int components_found = 0;
    int components_removed = 0;
    long faces_removed = 0;
    double kept_face_fraction = 1.0;
};

struct CleanResult {
    TriangleMesh mesh;
    CleanReport report;
};

/// Partition of face indices by shared-vertex connectivity, ordered by each
/// component's smallest face index; faces within a component are ascending.
std::vector<std::vector<int>> connected_components(const TriangleMesh& mesh);

/// Drops every component with fewer than min_face_fraction * total faces
/// (or all but the largest when keep_largest_only; size ties keep the
/// component with the smallest face index). Unreferenced vertices are
/// pruned; surviving faces keep their order, winding, and geometry.
/// Throws when the threshold would remove every component.
CleanResult clean(const TriangleMesh& mesh, double min_face_fraction = 0.01,
                  bool keep_largest_only = false);

}  // namespace hullbench
