#pragma once

#include <array>
#include <optional>
#include <string>

#include "hullbench/mesh.hpp"
#include "hullbench/render.hpp"

namespace hullbench {

using Rgb = std::array<double, 3>;

/// Closed lat-long sphere.
TriangleMesh make_sphere(double radius, const Vec3& center, int stacks = 48,
                         int slices = 96, std::optional<Rgb> color = std::nullopt);

/// Closed axis-aligned box between min and max corners.
TriangleMesh make_box(const Vec3& mn, const Vec3& mx,
                      std::optional<Rgb> color = std::nullopt);

/// Closed cylinder along +x between x0 and x1 with flat caps.
TriangleMesh make_cylinder_x(double x0, double x1, double radius, double y, double z,
                             int segments = 32, std::optional<Rgb> color = std::nullopt);

/// Closed cylinder along +y between y0 and y1 with flat caps.
TriangleMesh make_cylinder_y(double y0, double y1, double radius, double x, double z,
                             int segments = 32, std::optional<Rgb> color = std::nullopt);

/// Closed square frustum along z: half-widths hw0 at z0 and hw1 at z1.
TriangleMesh make_frustum_z(double z0, double hw0, double z1, double hw1,
                            std::optional<Rgb> color = std::nullopt);

/// Closed square slab with a vertical cylindrical through-hole.
TriangleMesh make_slab_with_hole(double half_width, double z0, double z1,
                                 double hole_x, double hole_y, double hole_radius,
                                 int segments = 32,
                                 std::optional<Rgb> color = std::nullopt);

/// Asymmetric two-tone test figurine: a flat-topped slab body with an offset
/// vertical through-hole, a box head on one edge, and a cylinder tail out of
/// one side. The hole is the load-bearing feature: elevated rings see through
/// it while grazing rings cannot, so mid-elevation viewpoints reconstruct
/// this object strictly better. Parts touch at coplanar caps without
/// interpenetrating, so parity voxelization stays exact.
TriangleMesh make_figurine();

/// Built-in meshes by name: "sphere", "cube", "figurine", "two_tone_sphere".
TriangleMesh builtin_mesh(const std::string& name);

/// Resolves "builtin:<name>" to a built-in mesh, anything else to a file path.
TriangleMesh resolve_mesh_source(const std::string& source);

/// Single-object scene around a built-in mesh, black background.
Scene builtin_scene(const std::string& name);

}  // namespace hullbench
