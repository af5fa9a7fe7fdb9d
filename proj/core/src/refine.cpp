#include "framerec/refine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

#include "framerec/error.hpp"

namespace framerec {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool near_parallel_to(const Segment& s, const Line2& line, double tau_deg) {
  return acute_angle_deg(s.q - s.p, line.direction()) < tau_deg;
}

int neighbours(const Segment& s, const std::vector<Segment>& others) {
  const Point2 c = s.midpoint();
  const double r = 0.5 * s.length();
  int n = 0;
  for (const Segment& o : others) {
    if (o.id == s.id) continue;
    if (point_segment_distance(c, o) <= r) ++n;
  }
  return n;
}

Segment span_of(const Segment& a, const Segment& b, SegmentId id) {
  const std::array<Point2, 4> pts{a.p, a.q, b.p, b.q};
  double best = -1.0;
  Segment out{a.p, a.q, id};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = distance(pts[i], pts[j]);
      if (d > best) {
        best = d;
        out.p = pts[i];
        out.q = pts[j];
      }
    }
  }
  return out;
}

// Fitted line through the vanishing point and p, restricted to the half-line
// on p's side of a finite vanishing point.
bool fitted_segment(const HPoint& vp, Point2 p, ImageSize bounds, Segment& out) {
  if (vp.at_infinity()) {
    const Point2 d{vp.x, vp.y};
    return clip_line(Line2::through(p, p + d), bounds, out);
  }
  const Point2 v = vp.point();
  const Point2 d = p - v;
  const double len = norm(d);
  if (len < 1e-9) return false;
  const double far = 4.0 * (bounds.diagonal() + distance(v, bounds.center()));
  const Segment ray{v, v + (far / len) * d, {}};
  return clip_segment(ray, bounds, out) && out.length() > 1e-9;
}

bool duplicate_line(const HPoint& vp, const Segment& a, const Segment& b, double tol_deg,
                    double diag) {
  if (vp.at_infinity()) {
    const Line2 la = a.line();
    return std::abs(la.signed_distance(b.midpoint())) <= diag * std::tan(tol_deg * kPi / 180.0);
  }
  const Point2 v = vp.point();
  const Point2 da = a.midpoint() - v;
  const Point2 db = b.midpoint() - v;
  if (dot(da, db) <= 0.0) return false;
  return acute_angle_deg(da, db) <= tol_deg;
}

bool lex_less(const Segment& a, const Segment& b) {
  return std::tie(a.p.x, a.p.y, a.q.x, a.q.y) < std::tie(b.p.x, b.p.y, b.q.x, b.q.y);
}

std::vector<SegmentId> top_ids(std::vector<WeightedCandidate> group, int n) {
  std::sort(group.begin(), group.end(), ranks_before);
  std::vector<SegmentId> out;
  for (int i = 0; i < n && i < static_cast<int>(group.size()); ++i) {
    out.push_back(group[static_cast<std::size_t>(i)].segment.id);
  }
  // Membership, not order, decides convergence.
  std::sort(out.begin(), out.end());
  return out;
}

struct VoteTerm {
  GroupId votee_group;
  std::size_t votee;
  GroupId supporter_group;
  std::size_t supporter;
  double coeff;
};

}  // namespace

void RefineConfig::validate() const {
  auto bad = [](const char* what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (!(tau_theta_deg > 0.0 && tau_theta_deg <= 90.0)) bad("tau_theta must be in (0, 90]");
  if (n_min < 1) bad("n_min must be positive");
  if (!(tau_e >= 0.0)) bad("tau_e must be non-negative");
  if (!(xi_len >= 0.0) || !(xi_ang >= 0.0) || std::abs(xi_len + xi_ang - 1.0) > 1e-9) {
    bad("xi_len and xi_ang must be non-negative and sum to 1");
  }
  if (top_n < 5 || top_n > 10) bad("top_n must be in [5, 10]");
  if (max_iter < 1) bad("max_iter must be positive");
  if (!(tau_class_deg > 0.0 && tau_class_deg <= 90.0)) bad("tau_class must be in (0, 90]");
}

IdAllocator IdAllocator::after(std::span<const Segment> segments) {
  std::int64_t next = 0;
  for (const Segment& s : segments) next = std::max(next, s.id.value + 1);
  return IdAllocator(next);
}

AxisSets reclassify(const AxisSets& sets, const VanishingTriplet& triplet,
                    const RefineConfig& cfg) {
  const Line2& lxz = triplet.l_xz();
  const Line2& lyz = triplet.l_yz();
  const double tau = cfg.tau_theta_deg;

  AxisSets out;
  out.outliers = sets.outliers;
  std::vector<Segment> to_x, to_y, to_z;

  for (const Segment& s : sets.x) {
    if (near_parallel_to(s, lxz, tau) && neighbours(s, sets.z) >= cfg.n_min) {
      to_z.push_back(s);
    } else {
      out.x.push_back(s);
    }
  }
  for (const Segment& s : sets.y) {
    if (near_parallel_to(s, lyz, tau) && neighbours(s, sets.z) >= cfg.n_min) {
      to_z.push_back(s);
    } else {
      out.y.push_back(s);
    }
  }
  for (const Segment& s : sets.z) {
    if (near_parallel_to(s, lxz, tau) && neighbours(s, sets.x) >= cfg.n_min) {
      to_x.push_back(s);
    } else if (near_parallel_to(s, lyz, tau) && neighbours(s, sets.y) >= cfg.n_min) {
      to_y.push_back(s);
    } else {
      out.z.push_back(s);
    }
  }
  out.x.insert(out.x.end(), to_x.begin(), to_x.end());
  out.y.insert(out.y.end(), to_y.begin(), to_y.end());
  out.z.insert(out.z.end(), to_z.begin(), to_z.end());
  return out;
}

CollinearityReport collinearity_error(const Segment& a, const Segment& b) {
  CollinearityReport r;
  r.long_distance = std::max({distance(a.p, b.p), distance(a.p, b.q), distance(a.q, b.p),
                              distance(a.q, b.q)});
  r.short_distance = segment_segment_distance(a, b);
  r.length = a.length() + b.length();
  r.error = std::abs(r.long_distance - r.short_distance - r.length);
  // Rounding residue of the three distances, not a geometric gap.
  if (r.error <= 64.0 * std::numeric_limits<double>::epsilon() * r.long_distance) r.error = 0.0;
  return r;
}

std::vector<Segment> connect_collinear(std::vector<Segment> set, const RefineConfig& cfg,
                                       IdAllocator& ids) {
  using Entry = std::tuple<double, SegmentId, SegmentId, std::size_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<bool> alive(set.size(), true);

  auto push_pair = [&](std::size_t i, std::size_t j) {
    const double e = collinearity_error(set[i], set[j]).error;
    if (e < cfg.tau_e) {
      if (set[j].id < set[i].id) std::swap(i, j);
      heap.emplace(e, set[i].id, set[j].id, i, j);
    }
  };

  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) push_pair(i, j);
  }
  while (!heap.empty()) {
    const auto [e, ia, ib, i, j] = heap.top();
    heap.pop();
    if (!alive[i] || !alive[j]) continue;
    alive[i] = false;
    alive[j] = false;
    set.push_back(span_of(set[i], set[j], ids.next()));
    alive.push_back(true);
    const std::size_t k = set.size() - 1;
    for (std::size_t m = 0; m < k; ++m) {
      if (alive[m]) push_pair(m, k);
    }
  }

  std::vector<Segment> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (alive[i]) out.push_back(set[i]);
  }
  return out;
}

SegmentGroups fit_missing(const PartitionedSegments& parts, const VanishingTriplet& triplet,
                          const Correspondence& corr, ImageSize bounds, IdAllocator& ids,
                          double dedup_deg) {
  SegmentGroups out;
  const double diag = bounds.diagonal();
  for (GroupId g : groups_of(parts.category)) {
    std::vector<Segment>& fitted = out[g];
    const auto it = corr.find(g);
    if (it == corr.end()) continue;
    const HPoint& vp = triplet.vp(g.axis);
    for (const Supporter& sup : it->second) {
      const auto src = parts.groups.find(sup.group);
      if (src == parts.groups.end()) continue;
      for (const Segment& s : src->second) {
        Segment seg;
        if (!fitted_segment(vp, endpoint(s, sup.side), bounds, seg)) continue;
        const bool dup = std::any_of(fitted.begin(), fitted.end(), [&](const Segment& f) {
          return duplicate_line(vp, f, seg, dedup_deg, diag);
        });
        if (dup) continue;
        seg.id = ids.next();
        fitted.push_back(seg);
      }
    }
  }
  return out;
}

CandidateGroups merge_candidates(const PartitionedSegments& parts, const SegmentGroups& fitted) {
  CandidateGroups out;
  for (GroupId g : groups_of(parts.category)) {
    std::vector<WeightedCandidate>& group = out[g];
    if (const auto it = parts.groups.find(g); it != parts.groups.end()) {
      for (const Segment& s : it->second) group.push_back({s, Origin::Detected, 0.0, 0.0});
    }
    if (const auto it = fitted.find(g); it != fitted.end()) {
      for (const Segment& s : it->second) group.push_back({s, Origin::Fitted, 0.0, 0.0});
    }
  }
  return out;
}

void initial_weight(std::span<WeightedCandidate> group, const HPoint& vp,
                    const RefineConfig& cfg) {
  if (group.empty()) return;
  std::vector<double> angles;
  std::vector<double> lengths;
  angles.reserve(group.size());
  for (const WeightedCandidate& c : group) {
    double a = 90.0;
    try {
      a = angle_to_vp(c.segment, vp);
    } catch (const Error&) {
    }
    angles.push_back(a);
    if (c.origin == Origin::Detected) lengths.push_back(c.segment.length());
  }
  const std::vector<double> w_ang = eta_normalize(angles);
  std::vector<double> w_len;
  if (!lengths.empty()) w_len = psi_normalize(lengths);

  std::size_t li = 0;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (group[i].origin == Origin::Detected) {
      group[i].weight = cfg.xi_len * w_len[li++] + cfg.xi_ang * w_ang[i];
    } else {
      group[i].weight = w_ang[i];
    }
  }
}

VoteGeometry vote_geometry(const Segment& candidate, const Segment& supporter, double slack) {
  VoteGeometry g;
  const double cd = supporter.length();
  if (cd <= 1e-12 || candidate.length() <= 1e-12) return g;
  const HPoint x = intersect(candidate.line(), supporter.line());
  if (x.at_infinity()) return g;
  const Point2 e = x.point();
  if (point_segment_distance(e, candidate) > slack) return g;

  g.votes = true;
  g.meeting = e;
  const double ec = distance(e, supporter.p);
  const double ed = distance(e, supporter.q);
  // Projection of E onto the supporter, measured from p.
  const double t = dot(e - supporter.p, supporter.q - supporter.p) / cd;
  const double inside = 1e-9 * std::max(1.0, cd);
  if (t > inside && t < cd - inside) {
    g.label = 1;
    g.raw = std::min(ec, ed) / cd;
  } else {
    g.label = 0;
    g.raw = cd / std::max(ec, ed);
  }
  return g;
}

double vote_increment(const VoteGeometry& g, double supporter_weight, double pool_sum) {
  if (!g.votes || !(pool_sum > 0.0)) return 0.0;
  const double sign = g.label == 1 ? -1.0 : 1.0;
  return sign * (g.raw / pool_sum) * supporter_weight;
}

bool ranks_before(const WeightedCandidate& a, const WeightedCandidate& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  const double la = a.segment.length();
  const double lb = b.segment.length();
  if (la != lb) return la > lb;
  if (lex_less(a.segment, b.segment)) return true;
  if (lex_less(b.segment, a.segment)) return false;
  return a.segment.id < b.segment.id;
}

VoteResult vote_select(CandidateGroups groups, const Correspondence& corr,
                       const VanishingTriplet& triplet, const RefineConfig& cfg) {
  for (auto& [g, cands] : groups) {
    if (cands.empty()) {
      throw Error(ErrorCode::EmptyGroup, "group " + to_string(g) + " has no candidates");
    }
    initial_weight(cands, triplet.vp(g.axis), cfg);
  }

  std::vector<VoteTerm> terms;
  for (const auto& [g, cands] : groups) {
    const auto it = corr.find(g);
    if (it == corr.end()) continue;
    for (const Supporter& sup : it->second) {
      const auto src = groups.find(sup.group);
      if (src == groups.end()) continue;
      const std::vector<WeightedCandidate>& supporters = src->second;
      std::vector<VoteTerm> pool;
      std::vector<double> raws;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        for (std::size_t j = 0; j < supporters.size(); ++j) {
          if (supporters[j].origin != Origin::Detected) continue;
          const VoteGeometry vg = vote_geometry(cands[i].segment, supporters[j].segment);
          if (!vg.votes) continue;
          pool.push_back({g, i, sup.group, j, vg.label == 1 ? -vg.raw : vg.raw});
          raws.push_back(vg.raw);
        }
      }
      if (pool.empty()) continue;
      const std::vector<double> lambda = psi_normalize(raws);
      for (std::size_t k = 0; k < pool.size(); ++k) {
        pool[k].coeff = (pool[k].coeff < 0.0 ? -1.0 : 1.0) * lambda[k];
        terms.push_back(pool[k]);
      }
    }
  }

  std::map<GroupId, std::vector<SegmentId>> selection;
  for (const auto& [g, cands] : groups) selection[g] = top_ids(cands, cfg.top_n);

  VoteResult result;
  for (int k = 1; k <= cfg.max_iter; ++k) {
    std::map<GroupId, std::vector<double>> votes;
    for (const auto& [g, cands] : groups) votes[g].assign(cands.size(), 0.0);
    for (const VoteTerm& t : terms) {
      votes[t.votee_group][t.votee] += t.coeff * groups[t.supporter_group][t.supporter].weight;
    }
    for (auto& [g, cands] : groups) {
      const std::vector<double>& v = votes[g];
      for (std::size_t i = 0; i < cands.size(); ++i) {
        cands[i].vote = v[i];
        cands[i].weight += v[i];
      }
    }
    result.iterations = k;
    bool same = true;
    for (const auto& [g, cands] : groups) {
      std::vector<SegmentId> next = top_ids(cands, cfg.top_n);
      if (next != selection[g]) same = false;
      selection[g] = std::move(next);
    }
    if (same) {
      result.converged = true;
      break;
    }
  }

  for (const auto& [g, cands] : groups) {
    std::vector<WeightedCandidate> sorted = cands;
    std::sort(sorted.begin(), sorted.end(), ranks_before);
    sorted.resize(std::min<std::size_t>(sorted.size(), static_cast<std::size_t>(cfg.top_n)));
    result.selected[g] = std::move(sorted);
  }
  result.all = std::move(groups);
  return result;
}

}  // namespace framerec
