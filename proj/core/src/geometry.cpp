#include "framerec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "framerec/error.hpp"

namespace framerec {

namespace {

constexpr double kCoincidentTol = 1e-12;
constexpr double kParallelTol = 1e-14;
constexpr double kConcurrencyTol = 1e-6;
constexpr double kThroughApexTol = 1e-9;
constexpr double kCollinearRelTol = 1e-6;

constexpr double rad_to_deg(double r) { return r * 180.0 / std::numbers::pi; }

// Homogeneous coordinate (s : u) of a line's crossing with a parametrized
// transversal origin + t * dir, i.e. t = s / u.
struct PencilParam {
  double s;
  double u;
};

double param_det(const PencilParam& i, const PencilParam& j) { return i.s * j.u - j.s * i.u; }

bool param_det_zero(const PencilParam& i, const PencilParam& j) {
  const double d = param_det(i, j);
  const double scale = std::abs(i.s * j.u) + std::abs(j.s * i.u);
  return std::abs(d) <= 1e-12 * scale || scale == 0.0;
}

}  // namespace

double norm(Point2 a) { return std::hypot(a.x, a.y); }
double distance(Point2 a, Point2 b) { return norm(a - b); }

Line2::Line2(double a, double b, double c) {
  const double n = std::hypot(a, b);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::InvalidConfig, "line with zero normal");
  }
  a_ = a / n;
  b_ = b / n;
  c_ = c / n;
}

Line2 Line2::through(Point2 p, Point2 q) {
  return through(HPoint::finite(p), HPoint::finite(q));
}

Line2 Line2::through(const HPoint& p, const HPoint& q) {
  return Line2(p.y * q.w - p.w * q.y, p.w * q.x - p.x * q.w, p.x * q.y - p.y * q.x);
}

Point2 Line2::foot_of(Point2 p) const {
  const double d = signed_distance(p);
  return {p.x - d * a_, p.y - d * b_};
}

double Line2::incidence(const HPoint& p) const {
  const double n = std::sqrt(p.x * p.x + p.y * p.y + p.w * p.w);
  if (n == 0.0) return 0.0;
  return (a_ * p.x + b_ * p.y + c_ * p.w) / n;
}

HPoint intersect(const Line2& l, const Line2& m) {
  const bool same = std::abs(l.a() - m.a()) <= kCoincidentTol &&
                    std::abs(l.b() - m.b()) <= kCoincidentTol &&
                    std::abs(l.c() - m.c()) <= kCoincidentTol;
  const bool opposite = std::abs(l.a() + m.a()) <= kCoincidentTol &&
                        std::abs(l.b() + m.b()) <= kCoincidentTol &&
                        std::abs(l.c() + m.c()) <= kCoincidentTol;
  if (same || opposite) {
    throw Error(ErrorCode::CoincidentLines, "intersection of a line with itself");
  }
  HPoint h{l.b() * m.c() - l.c() * m.b(), l.c() * m.a() - l.a() * m.c(),
           l.a() * m.b() - l.b() * m.a()};
  if (std::abs(h.w) <= kParallelTol) {
    h.w = 0.0;
  }
  return h;
}

double cross_ratio(double t1, double t2, double t3, double t4) {
  const double scale = std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4)});
  const double d23 = t2 - t3;
  const double d14 = t1 - t4;
  if (std::abs(d23) <= 1e-12 * scale || std::abs(d14) <= 1e-12 * scale) {
    throw Error(ErrorCode::DegeneratePencil, "cross ratio denominator vanishes");
  }
  return ((t1 - t3) * (t2 - t4)) / (d23 * d14);
}

double cross_ratio_points(Point2 p1, Point2 p2, Point2 p3, Point2 p4) {
  const std::array<Point2, 4> pts{p1, p2, p3, p4};
  std::size_t bi = 0;
  std::size_t bj = 1;
  double span = -1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double d = distance(pts[i], pts[j]);
      if (d > span) {
        span = d;
        bi = i;
        bj = j;
      }
    }
  }
  if (!(span > 0.0)) {
    throw Error(ErrorCode::DegeneratePencil, "all four points coincide");
  }
  const Point2 origin = pts[bi];
  const Point2 dir = (1.0 / span) * (pts[bj] - origin);
  std::array<double, 4> t{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2 v = pts[i] - origin;
    if (std::abs(cross(dir, v)) > kCollinearRelTol * span) {
      throw Error(ErrorCode::NotCollinear, "cross ratio points are not collinear");
    }
    t[i] = dot(dir, v);
  }
  return cross_ratio(t[0], t[1], t[2], t[3]);
}

double pencil_cross_ratio(const std::array<Line2, 4>& lines, const Line2& transversal) {
  // Apex from the most transverse pair, so near-parallel pairs do not
  // dominate its position.
  std::size_t bi = 0;
  std::size_t bj = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double s = std::abs(lines[i].a() * lines[j].b() - lines[i].b() * lines[j].a());
      if (s > best) {
        best = s;
        bi = i;
        bj = j;
      }
    }
  }
  HPoint apex;
  if (best <= kParallelTol) {
    const Point2 d = lines[0].direction();
    apex = HPoint::direction(d.x, d.y);
  } else {
    apex = intersect(lines[bi], lines[bj]);
  }
  for (const Line2& l : lines) {
    if (std::abs(l.incidence(apex)) > kConcurrencyTol) {
      throw Error(ErrorCode::NonConcurrentPencil, "pencil lines do not share an apex");
    }
  }
  if (std::abs(transversal.incidence(apex)) <= kThroughApexTol) {
    throw Error(ErrorCode::TransversalThroughApex, "transversal passes through the pencil apex");
  }

  const Point2 origin = transversal.foot_of({0.0, 0.0});
  const Point2 dir = transversal.direction();
  std::array<PencilParam, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) {
    p[i] = {-lines[i].signed_distance(origin), lines[i].a() * dir.x + lines[i].b() * dir.y};
  }
  if (param_det_zero(p[1], p[2]) || param_det_zero(p[0], p[3])) {
    throw Error(ErrorCode::DegeneratePencil, "pencil cross ratio denominator vanishes");
  }
  return (param_det(p[0], p[2]) * param_det(p[1], p[3])) /
         (param_det(p[1], p[2]) * param_det(p[0], p[3]));
}

std::vector<double> psi_normalize(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptyInput, "psi normalization of an empty list");
  }
  double sum = 0.0;
  for (double v : values) {
    if (v < 0.0) {
      throw Error(ErrorCode::InvalidConfig, "psi normalization requires nonnegative values");
    }
    sum += v;
  }
  std::vector<double> out(values.size(), 1.0 / static_cast<double>(values.size()));
  if (sum > 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] / sum;
  }
  return out;
}

std::vector<double> eta_normalize(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptyInput, "eta normalization of an empty list");
  }
  const double mx = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += mx - v;
  std::vector<double> out(values.size(), 1.0 / static_cast<double>(values.size()));
  if (sum > 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (mx - values[i]) / sum;
  }
  return out;
}

double acute_angle_deg(Point2 u, Point2 v) {
  return rad_to_deg(std::atan2(std::abs(cross(u, v)), std::abs(dot(u, v))));
}

double angle_to_vp(const Segment& s, const HPoint& vp) {
  Point2 ray;
  if (vp.at_infinity()) {
    ray = {vp.x, vp.y};
  } else {
    ray = vp.point() - s.midpoint();
  }
  if (!(norm(ray) > 1e-12)) {
    throw Error(ErrorCode::VpAtMidpoint, "vanishing point coincides with the segment midpoint");
  }
  return acute_angle_deg(s.q - s.p, ray);
}

double point_segment_distance(Point2 p, const Segment& s) {
  const Point2 d = s.q - s.p;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s.p);
  const double t = std::clamp(dot(p - s.p, d) / len2, 0.0, 1.0);
  return distance(p, s.p + t * d);
}

double segment_segment_distance(const Segment& a, const Segment& b) {
  const Point2 da = a.q - a.p;
  const Point2 db = b.q - b.p;
  // Orientations within rounding of zero count as zero: nearly collinear
  // pairs are measured by their endpoints, never as crossing.
  const double tol = 1e-9 * (norm(da) + norm(db));
  auto side = [&](Point2 d, Point2 v) {
    const double o = cross(d, v) / norm(d);
    return o > tol ? 1 : (o < -tol ? -1 : 0);
  };
  if (norm(da) > 0.0 && norm(db) > 0.0 && side(da, b.p - a.p) * side(da, b.q - a.p) < 0 &&
      side(db, a.p - b.p) * side(db, a.q - b.p) < 0) {
    return 0.0;
  }
  return std::min({point_segment_distance(a.p, b), point_segment_distance(a.q, b),
                   point_segment_distance(b.p, a), point_segment_distance(b.q, a)});
}

double ImageSize::diagonal() const {
  return std::hypot(static_cast<double>(width), static_cast<double>(height));
}

namespace {

// Liang-Barsky parameter clipping of origin + t * dir to the image box.
bool clip_param(Point2 origin, Point2 dir, ImageSize bounds, double& t0, double& t1) {
  const double p[4] = {-dir.x, dir.x, -dir.y, dir.y};
  const double q[4] = {origin.x, bounds.width - origin.x, origin.y, bounds.height - origin.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace

bool clip_line(const Line2& line, ImageSize bounds, Segment& out) {
  if (bounds.width <= 0 || bounds.height <= 0) {
    throw Error(ErrorCode::EmptyImageBounds, "image bounds are empty");
  }
  const Point2 origin = line.foot_of(bounds.center());
  const Point2 dir = line.direction();
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  if (!clip_param(origin, dir, bounds, t0, t1) || t1 - t0 <= 1e-9) return false;
  out = {origin + t0 * dir, origin + t1 * dir, out.id};
  return true;
}

bool clip_segment(const Segment& s, ImageSize bounds, Segment& out) {
  if (bounds.width <= 0 || bounds.height <= 0) {
    throw Error(ErrorCode::EmptyImageBounds, "image bounds are empty");
  }
  const Point2 dir = s.q - s.p;
  double t0 = 0.0;
  double t1 = 1.0;
  if (!clip_param(s.p, dir, bounds, t0, t1) || (t1 - t0) * norm(dir) <= 1e-9) return false;
  out = {s.p + t0 * dir, s.p + t1 * dir, s.id};
  return true;
}

}  // namespace framerec
