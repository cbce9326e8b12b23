#include "circinv/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "circinv/error.hpp"
#include "circinv/parallel.hpp"

namespace circinv {

namespace {

constexpr int kOracleFactor = 16;

// Signed area of disk(0, r) ∩ triangle(0, a, b).
double edge_area(const Vec2& a, const Vec2& b, double r) {
  const double r2 = r * r;
  const Vec2 d = b - a;
  const double qa = d.squaredNorm();
  if (qa == 0.0) return 0.0;
  const double qb = a.dot(d);
  const double qc = a.squaredNorm() - r2;
  double ts[4] = {0.0, 0.0, 0.0, 1.0};
  int nt = 1;
  const double disc = qb * qb - qa * qc;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double t1 = (-qb - s) / qa;
    const double t2 = (-qb + s) / qa;
    if (t1 > 0.0 && t1 < 1.0) ts[nt++] = t1;
    if (t2 > 0.0 && t2 < 1.0) ts[nt++] = t2;
  }
  ts[nt++] = 1.0;
  double area = 0.0;
  for (int k = 0; k + 1 < nt; ++k) {
    const Vec2 p = a + ts[k] * d;
    const Vec2 q = a + ts[k + 1] * d;
    const Vec2 mid = 0.5 * (p + q);
    // strict: a segment tangent to the circle touches it only at its midpoint
    if (mid.squaredNorm() < r2) {
      area += 0.5 * cross(p, q);
    } else {
      area += 0.5 * r2 * std::atan2(cross(p, q), p.dot(q));
    }
  }
  return area;
}

double polygon_signed_area(std::span<const Vec2> poly) {
  double sum = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) sum += cross(poly[k], poly[(k + 1) % poly.size()]);
  return 0.5 * sum;
}

void check_polygon(std::span<const Vec2> poly) {
  if (poly.size() < 3) throw Error(ErrorKind::Geometry, "invariant::invariant_oracle", "polygon needs 3 vertices");
  if (polygon_signed_area(poly) == 0.0) {
    throw Error(ErrorKind::Geometry, "invariant::invariant_oracle", "polygon has zero area");
  }
}

}  // namespace

double disk_polygon_area(std::span<const Vec2> polygon, const Vec2& center, double r) {
  check_polygon(polygon);
  double sum = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t k = 0; k < n; ++k) sum += edge_area(polygon[k] - center, polygon[(k + 1) % n] - center, r);
  return std::abs(sum);
}

BlockedPolygon::BlockedPolygon(std::vector<Vec2> vertices, int block_size) : vertices_(std::move(vertices)) {
  check_polygon(vertices_);
  const int n = static_cast<int>(vertices_.size());
  for (int begin = 0; begin < n; begin += block_size) {
    Block b{begin, std::min(n, begin + block_size), 1e300, -1e300, 1e300, -1e300, 0.0};
    for (int k = b.begin; k <= b.end; ++k) {
      const Vec2& v = vertices_[static_cast<std::size_t>(k % n)];
      b.x0 = std::min(b.x0, v.x());
      b.x1 = std::max(b.x1, v.x());
      b.y0 = std::min(b.y0, v.y());
      b.y1 = std::max(b.y1, v.y());
    }
    for (int k = b.begin; k < b.end; ++k) {
      b.cross_sum += cross(vertices_[static_cast<std::size_t>(k)], vertices_[static_cast<std::size_t>((k + 1) % n)]);
    }
    blocks_.push_back(b);
  }
}

double BlockedPolygon::disk_area(const Vec2& center, double r) const {
  const int n = static_cast<int>(vertices_.size());
  const double r2 = r * r;
  double sum = 0.0;
  for (const Block& b : blocks_) {
    const Vec2& first = vertices_[static_cast<std::size_t>(b.begin)];
    const Vec2& last = vertices_[static_cast<std::size_t>(b.end % n)];
    // nearest and farthest box points from the centre
    const double nx = std::clamp(center.x(), b.x0, b.x1) - center.x();
    const double ny = std::clamp(center.y(), b.y0, b.y1) - center.y();
    const double fx = std::max(std::abs(b.x0 - center.x()), std::abs(b.x1 - center.x()));
    const double fy = std::max(std::abs(b.y0 - center.y()), std::abs(b.y1 - center.y()));
    if (nx * nx + ny * ny > r2) {
      // Outside: the box avoids the centre, so the swept angle is single-valued.
      const Vec2 p = first - center;
      const Vec2 q = last - center;
      sum += 0.5 * r2 * std::atan2(cross(p, q), p.dot(q));
    } else if (fx * fx + fy * fy < r2) {
      // Inside: Σ cross(v_k − c, v_{k+1} − c) telescopes.
      sum += 0.5 * (b.cross_sum - cross(center, last - first));
    } else {
      for (int k = b.begin; k < b.end; ++k) {
        sum += edge_area(vertices_[static_cast<std::size_t>(k)] - center,
                         vertices_[static_cast<std::size_t>((k + 1) % n)] - center, r);
      }
    }
  }
  return std::abs(sum);
}

double invariant_oracle(const Curve& curve, double r, double phi) {
  const auto poly = curve.sample(kOracleFactor * curve.grid_size());
  return disk_polygon_area(poly, curve.evaluate(phi), r);
}

std::vector<double> oracle_profile(const Curve& curve, double r) {
  const int m = curve.grid_size();
  const BlockedPolygon poly(curve.sample(kOracleFactor * m));
  std::vector<double> out(static_cast<std::size_t>(m));
  parallel_for(out.size(), [&](std::size_t i) {
    out[i] = poly.disk_area(poly.vertices()[kOracleFactor * i], r);
  });
  return out;
}

}  // namespace circinv
