#pragma once

// Candidate frame enumeration under cross-ratio and corner constraints,
// depth-based final selection, and the end-to-end recovery pipeline.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "framerec/camera.hpp"
#include "framerec/classify.hpp"
#include "framerec/frame_model.hpp"
#include "framerec/geometry.hpp"
#include "framerec/refine.hpp"

namespace framerec {

struct ConstraintConfig {
  double epsilon = 0.05;              // cross-ratio residual threshold
  double corner_consistency = 5.0;    // pixels at an 800 px diagonal
  std::size_t max_candidates = 100000;

  void validate() const;
};

struct PipelineConfig {
  RefineConfig refine;
  ConstraintConfig constraints;
  ImageSize image;

  void validate() const;
};

// Line through the group's vanishing point and the segment midpoint.
Line2 box_line(const Segment& s, const HPoint& vp);

// Transversal used for pencil cross ratios: through the image center,
// perpendicular to the bisector of the pencil's angular extent.
Line2 standard_transversal(const std::array<Line2, 4>& lines, const HPoint& apex,
                           ImageSize image);

// Cross ratio (g_a, L1 : g_b, L2) of two box lines with the two vanishing
// lines through their vanishing point.
double pencil_value(const Line2& ga, const Line2& l1, const Line2& gb, const Line2& l2,
                    const HPoint& apex, ImageSize image);

// Residuals of the category's cross-ratio invariances for one selection of
// box lines (one segment per group). Throws NotApplicable for the one-corner
// model.
std::vector<double> cross_ratio_residuals(const std::map<GroupId, Segment>& selection,
                                          const VanishingTriplet& triplet,
                                          FrameCategory category, ImageSize image);

// Intersects the defining box lines and checks each corner against the
// third line through it. Throws ParallelDefiningLines or CornerInconsistent.
Frame assemble_frame(const std::map<GroupId, Segment>& selection,
                     const VanishingTriplet& triplet, FrameCategory category,
                     const ConstraintConfig& cfg, ImageSize image);

struct CandidateFrame {
  Frame frame;
  std::vector<double> residuals;
  std::optional<double> depth;
  std::size_t index = 0;  // enumeration order
};

// All combinations (one segment per group) that satisfy every residual
// threshold and assemble into a consistent frame.
std::vector<CandidateFrame> enumerate_candidates(const SegmentGroups& groups,
                                                 const VanishingTriplet& triplet,
                                                 FrameCategory category,
                                                 const ConstraintConfig& cfg, ImageSize image);

struct Selection {
  std::size_t index = 0;  // into the candidate list
  double depth = 0.0;
};

// Candidate with the largest depth score; ties prefer the smaller total
// residual, then the earlier candidate. Fills in each candidate's depth.
Selection select_final(std::vector<CandidateFrame>& candidates, const Camera& camera);

struct Diagnostics {
  std::vector<Segment> input;
  AxisSets classified;
  AxisSets reclassified;
  AxisSets connected;
  PartitionedSegments partitioned;
  SegmentGroups fitted;
  VoteResult votes;
  std::vector<CandidateFrame> candidates;
  std::size_t selected = 0;
  Camera camera;
};

struct Recovery {
  Frame frame;
  std::vector<double> residuals;
  double depth = 0.0;
  Diagnostics diagnostics;
};

// Full pipeline. Failures are reported as StageError.
Recovery recover(std::span<const Segment> segments, const VanishingTriplet& triplet,
                 FrameCategory category, const PipelineConfig& cfg = {});

}  // namespace framerec
