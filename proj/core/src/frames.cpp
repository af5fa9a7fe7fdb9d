#include "framerec/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "framerec/error.hpp"

namespace framerec {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const GroupId kXc{Axis::X, Tag::C}, kXf{Axis::X, Tag::F}, kX{Axis::X, Tag::None};
const GroupId kYl{Axis::Y, Tag::L}, kYr{Axis::Y, Tag::R}, kY{Axis::Y, Tag::None};
const GroupId kZcl{Axis::Z, Tag::CL}, kZcr{Axis::Z, Tag::CR};
const GroupId kZfl{Axis::Z, Tag::FL}, kZfr{Axis::Z, Tag::FR};
const GroupId kZc{Axis::Z, Tag::C}, kZf{Axis::Z, Tag::F};
const GroupId kZl{Axis::Z, Tag::L}, kZr{Axis::Z, Tag::R}, kZ{Axis::Z, Tag::None};

double safe_pencil(const Line2& ga, const Line2& l1, const Line2& gb, const Line2& l2,
                   const HPoint& apex, ImageSize image) {
  try {
    return pencil_value(ga, l1, gb, l2, apex, image);
  } catch (const Error&) {
    return kNaN;
  }
}

// Corner of two defining lines and the third line that must pass through it.
struct CornerRule {
  GroupId first;
  GroupId second;
  GroupId check;
};

std::vector<CornerRule> corner_rules(FrameCategory category) {
  switch (category) {
    case FrameCategory::FourC:
      return {{kXc, kYl, kZcl}, {kXc, kYr, kZcr}, {kXf, kYr, kZfr}, {kXf, kYl, kZfl}};
    case FrameCategory::TwoVC:
      return {{kY, kXc, kZc}, {kY, kXf, kZf}};
    case FrameCategory::TwoHC:
      return {{kX, kYl, kZl}, {kX, kYr, kZr}};
    case FrameCategory::OneC:
      return {{kX, kY, kZ}};
  }
  return {};
}

std::optional<Point2> corner_of(const Line2& a, const Line2& b, const Line2& check,
                                double tol) {
  HPoint h;
  try {
    h = intersect(a, b);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (h.at_infinity()) return std::nullopt;
  const Point2 p = h.point();
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::nullopt;
  if (std::abs(check.signed_distance(p)) > tol) return std::nullopt;
  return p;
}

double corner_tolerance(const ConstraintConfig& cfg, ImageSize image) {
  return cfg.corner_consistency * image.diagonal() / 800.0;
}

// Enumeration state shared by the per-category loops.
class Enumerator {
 public:
  Enumerator(const SegmentGroups& groups, const VanishingTriplet& triplet,
             FrameCategory category, const ConstraintConfig& cfg, ImageSize image)
      : groups_(groups), triplet_(triplet), category_(category), cfg_(cfg), image_(image) {
    for (GroupId g : groups_of(category)) {
      const auto it = groups.find(g);
      if (it == groups.end() || it->second.empty()) {
        throw Error(ErrorCode::EmptyGroup, "group " + to_string(g) + " has no candidates");
      }
      auto& lines = lines_[g];
      for (const Segment& s : it->second) lines.push_back(box_line(s, triplet.vp(g.axis)));
    }
  }

  const Segment& seg(GroupId g, std::size_t i) const { return groups_.at(g)[i]; }
  const Line2& line(GroupId g, std::size_t i) const { return lines_.at(g)[i]; }
  std::size_t size(GroupId g) const { return groups_.at(g).size(); }

  // Pairwise pencil cross ratios c(g, a, b) over all candidate pairs.
  std::vector<std::vector<double>> table(GroupId ga, const Line2& l1, GroupId gb,
                                         const Line2& l2) const {
    const HPoint& apex = triplet_.vp(ga.axis);
    std::vector<std::vector<double>> t(size(ga), std::vector<double>(size(gb)));
    for (std::size_t i = 0; i < size(ga); ++i) {
      for (std::size_t j = 0; j < size(gb); ++j) {
        t[i][j] = safe_pencil(line(ga, i), l1, line(gb, j), l2, apex, image_);
      }
    }
    return t;
  }

  bool corner_ok(GroupId a, std::size_t i, GroupId b, std::size_t j, GroupId c,
                 std::size_t k) const {
    return corner_of(line(a, i), line(b, j), line(c, k), corner_tolerance(cfg_, image_))
        .has_value();
  }

  void emit(const std::map<GroupId, std::size_t>& pick, std::vector<double> residuals) {
    std::map<GroupId, Segment> selection;
    for (const auto& [g, i] : pick) selection.emplace(g, seg(g, i));
    Frame frame;
    try {
      frame = assemble_frame(selection, triplet_, category_, cfg_, image_);
    } catch (const Error&) {
      return;
    }
    if (out_.size() >= cfg_.max_candidates) {
      throw Error(ErrorCode::CandidateExplosion, "candidate count exceeds max_candidates");
    }
    CandidateFrame c;
    c.frame = std::move(frame);
    c.residuals = std::move(residuals);
    c.index = out_.size();
    out_.push_back(std::move(c));
  }

  bool below(double r) const { return std::isfinite(r) && r < cfg_.epsilon; }

  std::vector<CandidateFrame> take() { return std::move(out_); }

 private:
  const SegmentGroups& groups_;
  const VanishingTriplet& triplet_;
  FrameCategory category_;
  const ConstraintConfig& cfg_;
  ImageSize image_;
  std::map<GroupId, std::vector<Line2>> lines_;
  std::vector<CandidateFrame> out_;
};

void enumerate_four(Enumerator& e, const VanishingTriplet& t) {
  const Line2& lxz = t.l_xz();
  const Line2& lyz = t.l_yz();
  const Line2& lxy = t.l_xy();
  const auto cx = e.table(kXc, lxz, kXf, lxy);
  const auto cy = e.table(kYl, lyz, kYr, lxy);
  const auto c_left = e.table(kZcl, lxz, kZfl, lyz);
  const auto c_right = e.table(kZcr, lxz, kZfr, lyz);
  const auto c_floor = e.table(kZfl, lyz, kZfr, lxz);
  const auto c_ceil = e.table(kZcl, lyz, kZcr, lxz);

  for (std::size_t cl = 0; cl < e.size(kZcl); ++cl)
    for (std::size_t fl = 0; fl < e.size(kZfl); ++fl)
      for (std::size_t cr = 0; cr < e.size(kZcr); ++cr)
        for (std::size_t fr = 0; fr < e.size(kZfr); ++fr) {
          const double z1 = c_left[cl][fl] + c_right[cr][fr];
          const double z2 = c_floor[fl][fr] + c_ceil[cl][cr];
          for (std::size_t xc = 0; xc < e.size(kXc); ++xc)
            for (std::size_t xf = 0; xf < e.size(kXf); ++xf) {
              const double r1 = std::abs(2.0 * cx[xc][xf] - z1);
              if (!e.below(r1)) continue;
              for (std::size_t yl = 0; yl < e.size(kYl); ++yl) {
                if (!e.corner_ok(kXc, xc, kYl, yl, kZcl, cl) ||
                    !e.corner_ok(kXf, xf, kYl, yl, kZfl, fl)) {
                  continue;
                }
                for (std::size_t yr = 0; yr < e.size(kYr); ++yr) {
                  const double r2 = std::abs(2.0 * cy[yl][yr] - z2);
                  if (!e.below(r2)) continue;
                  e.emit({{kZcl, cl}, {kZfl, fl}, {kZcr, cr}, {kZfr, fr}, {kXc, xc}, {kXf, xf},
                          {kYl, yl}, {kYr, yr}},
                         {r1, r2});
                }
              }
            }
        }
}

void enumerate_two_vertical(Enumerator& e, const VanishingTriplet& t) {
  const auto cx = e.table(kXc, t.l_xz(), kXf, t.l_xy());
  const auto cz = e.table(kZc, t.l_xz(), kZf, t.l_yz());
  for (std::size_t zc = 0; zc < e.size(kZc); ++zc)
    for (std::size_t zf = 0; zf < e.size(kZf); ++zf)
      for (std::size_t xc = 0; xc < e.size(kXc); ++xc)
        for (std::size_t xf = 0; xf < e.size(kXf); ++xf) {
          const double r = std::abs(cx[xc][xf] - cz[zc][zf]);
          if (!e.below(r)) continue;
          for (std::size_t y = 0; y < e.size(kY); ++y) {
            e.emit({{kZc, zc}, {kZf, zf}, {kXc, xc}, {kXf, xf}, {kY, y}}, {r});
          }
        }
}

void enumerate_two_horizontal(Enumerator& e, const VanishingTriplet& t) {
  const auto cy = e.table(kYl, t.l_yz(), kYr, t.l_xy());
  const auto cz = e.table(kZl, t.l_yz(), kZr, t.l_xz());
  for (std::size_t zl = 0; zl < e.size(kZl); ++zl)
    for (std::size_t zr = 0; zr < e.size(kZr); ++zr)
      for (std::size_t yl = 0; yl < e.size(kYl); ++yl)
        for (std::size_t yr = 0; yr < e.size(kYr); ++yr) {
          const double r = std::abs(cy[yl][yr] - cz[zl][zr]);
          if (!e.below(r)) continue;
          for (std::size_t x = 0; x < e.size(kX); ++x) {
            e.emit({{kZl, zl}, {kZr, zr}, {kYl, yl}, {kYr, yr}, {kX, x}}, {r});
          }
        }
}

void enumerate_one(Enumerator& e) {
  for (std::size_t z = 0; z < e.size(kZ); ++z)
    for (std::size_t x = 0; x < e.size(kX); ++x)
      for (std::size_t y = 0; y < e.size(kY); ++y) {
        e.emit({{kZ, z}, {kX, x}, {kY, y}}, {});
      }
}

template <class F>
auto in_stage(Stage stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& err) {
    throw StageError(stage, err.code(), err.detail());
  }
}

}  // namespace

void ConstraintConfig::validate() const {
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::InvalidConfig, "epsilon must be non-negative");
  if (!(corner_consistency > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "corner_consistency must be positive");
  }
  if (max_candidates == 0) throw Error(ErrorCode::InvalidConfig, "max_candidates must be positive");
}

void PipelineConfig::validate() const {
  refine.validate();
  constraints.validate();
  if (image.width <= 0 || image.height <= 0) {
    throw Error(ErrorCode::EmptyImageBounds, "image size must be positive");
  }
}

Line2 box_line(const Segment& s, const HPoint& vp) {
  const Point2 m = s.midpoint();
  if (vp.at_infinity()) return Line2::through(m, m + Point2{vp.x, vp.y});
  if (distance(vp.point(), m) <= 1e-9) return s.line();
  return Line2::through(vp, HPoint::finite(m));
}

Line2 standard_transversal(const std::array<Line2, 4>& lines, const HPoint& apex,
                           ImageSize image) {
  std::array<double, 4> theta{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2 d = lines[i].direction();
    double a = std::atan2(d.y, d.x);
    if (a < 0.0) a += kPi;
    if (a >= kPi) a -= kPi;
    theta[i] = a;
  }
  std::sort(theta.begin(), theta.end());
  std::size_t gap_at = 3;
  double gap = theta[0] + kPi - theta[3];
  for (std::size_t i = 0; i + 1 < 4; ++i) {
    if (theta[i + 1] - theta[i] > gap) {
      gap = theta[i + 1] - theta[i];
      gap_at = i;
    }
  }
  const double start = theta[(gap_at + 1) % 4];
  const double bisector = start + 0.5 * (kPi - gap);
  const Point2 n{std::cos(bisector), std::sin(bisector)};
  const Point2 c = image.center();

  const Line2 primary(n.x, n.y, -dot(n, c));
  if (apex.at_infinity() || std::abs(primary.signed_distance(apex.point())) > 1.0) {
    return primary;
  }
  const Line2 vertical(1.0, 0.0, -c.x);
  if (std::abs(vertical.signed_distance(apex.point())) > 1.0) return vertical;
  const Point2 shifted = apex.point() + 0.25 * image.diagonal() * n;
  return Line2(n.x, n.y, -dot(n, shifted));
}

double pencil_value(const Line2& ga, const Line2& l1, const Line2& gb, const Line2& l2,
                    const HPoint& apex, ImageSize image) {
  const std::array<Line2, 4> lines{ga, l1, gb, l2};
  return pencil_cross_ratio(lines, standard_transversal(lines, apex, image));
}

std::vector<double> cross_ratio_residuals(const std::map<GroupId, Segment>& selection,
                                          const VanishingTriplet& t, FrameCategory category,
                                          ImageSize image) {
  if (category == FrameCategory::OneC) {
    throw Error(ErrorCode::NotApplicable, "the one-corner model has no cross-ratio constraint");
  }
  for (GroupId g : groups_of(category)) {
    if (!selection.contains(g)) {
      throw Error(ErrorCode::EmptyGroup, "selection lacks group " + to_string(g));
    }
  }
  auto l = [&](GroupId g) { return box_line(selection.at(g), t.vp(g.axis)); };
  auto c = [&](GroupId a, const Line2& l1, GroupId b, const Line2& l2) {
    return pencil_value(l(a), l1, l(b), l2, t.vp(a.axis), image);
  };
  switch (category) {
    case FrameCategory::FourC: {
      const double cx = c(kXc, t.l_xz(), kXf, t.l_xy());
      const double cy = c(kYl, t.l_yz(), kYr, t.l_xy());
      const double r1 =
          2.0 * cx - c(kZcl, t.l_xz(), kZfl, t.l_yz()) - c(kZcr, t.l_xz(), kZfr, t.l_yz());
      const double r2 =
          2.0 * cy - c(kZfl, t.l_yz(), kZfr, t.l_xz()) - c(kZcl, t.l_yz(), kZcr, t.l_xz());
      return {std::abs(r1), std::abs(r2)};
    }
    case FrameCategory::TwoVC:
      return {std::abs(c(kXc, t.l_xz(), kXf, t.l_xy()) - c(kZc, t.l_xz(), kZf, t.l_yz()))};
    case FrameCategory::TwoHC:
      return {std::abs(c(kYl, t.l_yz(), kYr, t.l_xy()) - c(kZl, t.l_yz(), kZr, t.l_xz()))};
    case FrameCategory::OneC:
      break;
  }
  return {};
}

Frame assemble_frame(const std::map<GroupId, Segment>& selection, const VanishingTriplet& t,
                     FrameCategory category, const ConstraintConfig& cfg, ImageSize image) {
  Frame frame;
  frame.category = category;
  for (GroupId g : groups_of(category)) {
    const auto it = selection.find(g);
    if (it == selection.end()) {
      throw Error(ErrorCode::EmptyGroup, "selection lacks group " + to_string(g));
    }
    frame.box_lines.emplace(g, it->second);
  }
  auto l = [&](GroupId g) { return box_line(selection.at(g), t.vp(g.axis)); };
  const double tol = corner_tolerance(cfg, image);
  for (const CornerRule& rule : corner_rules(category)) {
    HPoint h;
    try {
      h = intersect(l(rule.first), l(rule.second));
    } catch (const Error&) {
      throw Error(ErrorCode::ParallelDefiningLines,
                  to_string(rule.first) + " and " + to_string(rule.second) + " coincide");
    }
    if (h.at_infinity()) {
      throw Error(ErrorCode::ParallelDefiningLines,
                  to_string(rule.first) + " and " + to_string(rule.second) + " are parallel");
    }
    const Point2 p = h.point();
    const double d = std::abs(l(rule.check).signed_distance(p));
    if (!(d <= tol)) {
      throw Error(ErrorCode::CornerInconsistent,
                  to_string(rule.check) + " misses its corner by " + std::to_string(d) + " px");
    }
    frame.corners.push_back(p);
  }
  return frame;
}

std::vector<CandidateFrame> enumerate_candidates(const SegmentGroups& groups,
                                                 const VanishingTriplet& triplet,
                                                 FrameCategory category,
                                                 const ConstraintConfig& cfg, ImageSize image) {
  Enumerator e(groups, triplet, category, cfg, image);
  switch (category) {
    case FrameCategory::FourC: enumerate_four(e, triplet); break;
    case FrameCategory::TwoVC: enumerate_two_vertical(e, triplet); break;
    case FrameCategory::TwoHC: enumerate_two_horizontal(e, triplet); break;
    case FrameCategory::OneC: enumerate_one(e); break;
  }
  std::vector<CandidateFrame> out = e.take();
  if (out.empty()) throw Error(ErrorCode::EmptyCandidateSet, "no combination satisfies the constraints");
  return out;
}

Selection select_final(std::vector<CandidateFrame>& candidates, const Camera& camera) {
  std::optional<std::size_t> best;
  double best_total = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    CandidateFrame& c = candidates[i];
    try {
      c.depth = depth_score(c.frame, camera);
    } catch (const Error&) {
      c.depth.reset();
      continue;
    }
    double total = 0.0;
    for (double r : c.residuals) total += r;
    if (!best) {
      best = i;
      best_total = total;
      continue;
    }
    const double s = *c.depth;
    const double b = *candidates[*best].depth;
    const double tie = 1e-9 * std::max(std::abs(s), std::abs(b));
    if (s > b + tie || (std::abs(s - b) <= tie && total < best_total)) {
      best = i;
      best_total = total;
    }
  }
  if (!best) {
    throw Error(ErrorCode::AllCandidatesFailedDepth, "no candidate has a valid depth");
  }
  return {*best, *candidates[*best].depth};
}

Recovery recover(std::span<const Segment> segments, const VanishingTriplet& triplet,
                 FrameCategory category, const PipelineConfig& cfg) {
  Recovery out;
  Diagnostics& d = out.diagnostics;
  in_stage(Stage::Input, [&] {
    cfg.validate();
    if (segments.empty()) throw Error(ErrorCode::EmptyInput, "no line segments");
  });
  d.input.assign(segments.begin(), segments.end());
  d.camera = in_stage(Stage::Calibrate, [&] { return intrinsics_from_vps(triplet, cfg.image); });

  d.classified = in_stage(Stage::Classify, [&] {
    return classify_segments(segments, triplet, cfg.refine.tau_class_deg);
  });
  d.reclassified =
      in_stage(Stage::Reclassify, [&] { return reclassify(d.classified, triplet, cfg.refine); });

  IdAllocator ids = IdAllocator::after(segments);
  d.connected = in_stage(Stage::Connect, [&] {
    AxisSets c;
    c.outliers = d.reclassified.outliers;
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
      c.of(a) = connect_collinear(d.reclassified.of(a), cfg.refine, ids);
    }
    return c;
  });
  d.partitioned = in_stage(Stage::Partition,
                           [&] { return partition_subsets(d.connected, triplet, category); });

  const Correspondence corr = correspondence_table(category);
  d.fitted = in_stage(Stage::Fit, [&] {
    return fit_missing(d.partitioned, triplet, corr, cfg.image, ids);
  });
  d.votes = in_stage(Stage::Vote, [&] {
    return vote_select(merge_candidates(d.partitioned, d.fitted), corr, triplet, cfg.refine);
  });

  SegmentGroups chosen;
  for (const auto& [g, cands] : d.votes.selected) {
    for (const WeightedCandidate& c : cands) chosen[g].push_back(c.segment);
  }
  d.candidates = in_stage(Stage::Enumerate, [&] {
    return enumerate_candidates(chosen, triplet, category, cfg.constraints, cfg.image);
  });
  const Selection sel = in_stage(Stage::Select, [&] { return select_final(d.candidates, d.camera); });
  d.selected = sel.index;
  out.frame = d.candidates[sel.index].frame;
  out.residuals = d.candidates[sel.index].residuals;
  out.depth = sel.depth;
  return out;
}

}  // namespace framerec
