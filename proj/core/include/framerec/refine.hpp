#pragma once

// Line-segment refinement: reclassifying, connecting, fitting and iterative
// weighted voting over the candidate box-line groups.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "framerec/camera.hpp"
#include "framerec/classify.hpp"
#include "framerec/frame_model.hpp"
#include "framerec/geometry.hpp"

namespace framerec {

struct RefineConfig {
  double tau_theta_deg = 20.0;  // reclassify angle gate against l_xz / l_yz
  int n_min = 3;                // neighbours needed to reclassify
  double tau_e = 0.3;           // collinearity error threshold, pixels
  double xi_len = 0.5;
  double xi_ang = 0.5;
  int top_n = 5;
  int max_iter = 50;
  double tau_class_deg = 8.0;

  // Throws Error(InvalidConfig).
  void validate() const;
};

// Hands out fresh ids for merged and fitted segments.
class IdAllocator {
 public:
  explicit IdAllocator(std::int64_t next = 0) : next_(next) {}
  static IdAllocator after(std::span<const Segment> segments);

  SegmentId next() { return SegmentId{next_++}; }
  std::int64_t peek() const { return next_; }

 private:
  std::int64_t next_;
};

AxisSets reclassify(const AxisSets& sets, const VanishingTriplet& triplet,
                    const RefineConfig& cfg);

struct CollinearityReport {
  double long_distance = 0.0;   // longest endpoint-pair distance
  double short_distance = 0.0;  // closest approach of the two segments
  double length = 0.0;          // len(a) + len(b)
  double error = 0.0;           // |long - short - length|
};

CollinearityReport collinearity_error(const Segment& a, const Segment& b);

// Merges pairs with collinearity error below tau_e until none remain.
std::vector<Segment> connect_collinear(std::vector<Segment> set, const RefineConfig& cfg,
                                       IdAllocator& ids);

enum class Origin { Detected, Fitted };

struct WeightedCandidate {
  Segment segment;
  Origin origin = Origin::Detected;
  double weight = 0.0;
  double vote = 0.0;
};

using CandidateGroups = std::map<GroupId, std::vector<WeightedCandidate>>;
using SegmentGroups = std::map<GroupId, std::vector<Segment>>;

// Segments through each group's vanishing point and the supporting points
// named by the correspondence table, clipped to the image. Lines within
// `dedup_deg` of an earlier one (angle about the vanishing point) are dropped.
SegmentGroups fit_missing(const PartitionedSegments& parts, const VanishingTriplet& triplet,
                          const Correspondence& corr, ImageSize bounds, IdAllocator& ids,
                          double dedup_deg = 0.2);

// Union of detected and fitted segments per group, weights unset.
CandidateGroups merge_candidates(const PartitionedSegments& parts, const SegmentGroups& fitted);

// Sets weight = xi_len * psi(len) + xi_ang * eta(angle) within the group.
// Fitted candidates are left out of the length pool and use the angle term
// alone.
void initial_weight(std::span<WeightedCandidate> group, const HPoint& vp,
                    const RefineConfig& cfg);

struct VoteGeometry {
  bool votes = false;   // the supporter's line meets the candidate segment
  int label = 0;        // 1 when the supporter crosses the candidate
  double raw = 0.0;     // unnormalized lambda
  Point2 meeting;       // E
};

// E is where the supporter's line meets the candidate; it must lie within
// `slack` pixels of the candidate segment. Crossing (E strictly inside the
// supporter, label 1): min(|EC|, |ED|) / |CD|. Otherwise (label 0):
// |CD| / |ED| with D the supporter endpoint farther from E.
VoteGeometry vote_geometry(const Segment& candidate, const Segment& supporter,
                           double slack = 0.5);

// (-1)^label * (raw / pool_sum) * supporter_weight; zero when there is no vote.
double vote_increment(const VoteGeometry& g, double supporter_weight, double pool_sum);

struct VoteResult {
  CandidateGroups all;       // every candidate with its final weight
  CandidateGroups selected;  // top_n per group, best first
  int iterations = 0;
  bool converged = false;
};

VoteResult vote_select(CandidateGroups groups, const Correspondence& corr,
                       const VanishingTriplet& triplet, const RefineConfig& cfg);

// Ranking used by vote_select: weight, then length, then endpoints, then id.
bool ranks_before(const WeightedCandidate& a, const WeightedCandidate& b);

}  // namespace framerec
