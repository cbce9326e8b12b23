#pragma once

#include <span>
#include <vector>

#include "circinv/curve.hpp"

namespace circinv {

/// Exact area of disk(center, r) ∩ polygon. Each edge contributes the signed
/// area of disk ∩ triangle(center, v_k, v_{k+1}): straight pieces inside the
/// disk give triangle areas, pieces outside give circular sectors. The
/// absolute value is returned, so either orientation works.
/// Throws GeometryError for fewer than three vertices or zero area.
double disk_polygon_area(std::span<const Vec2> polygon, const Vec2& center, double r);

/// Polygon with precomputed per-block bounding boxes. Blocks entirely inside
/// or entirely outside the disk are handled in closed form (telescoped
/// triangle sums, resp. one sector), which gives the same area as
/// disk_polygon_area at a fraction of the cost.
class BlockedPolygon {
 public:
  explicit BlockedPolygon(std::vector<Vec2> vertices, int block_size = 64);
  double disk_area(const Vec2& center, double r) const;
  std::span<const Vec2> vertices() const { return vertices_; }

 private:
  struct Block {
    int begin;
    int end;  // exclusive, edge indices
    double x0, x1, y0, y1;
    double cross_sum;  // Σ cross(v_k, v_{k+1}) over the block's edges
  };
  std::vector<Vec2> vertices_;
  std::vector<Block> blocks_;
};

/// I_r(φ) by polygonizing γ with 16·M vertices.
double invariant_oracle(const Curve& curve, double r, double phi);
/// Oracle values at all grid points φ_i, sharing one polygonization.
std::vector<double> oracle_profile(const Curve& curve, double r);

}  // namespace circinv
