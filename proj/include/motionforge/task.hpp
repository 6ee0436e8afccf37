#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "motionforge/bezier.hpp"
#include "motionforge/error.hpp"
#include "motionforge/interpolate_points.hpp"
#include "motionforge/interpolate_poses.hpp"
#include "motionforge/polynomial.hpp"
#include "motionforge/study.hpp"

namespace motionforge {

enum class Scheme { Poses3, Poses4, Points5, Points7, PointsGeneric };

inline constexpr std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Poses3: return "poses3";
    case Scheme::Poses4: return "poses4";
    case Scheme::Points5: return "points5";
    case Scheme::Points7: return "points7";
    case Scheme::PointsGeneric: return "pointsGeneric";
  }
  return "";
}

inline std::optional<Scheme> parse_scheme(std::string_view s) {
  for (Scheme x : {Scheme::Poses3, Scheme::Poses4, Scheme::Points5, Scheme::Points7, Scheme::PointsGeneric}) {
    if (to_string(x) == s) return x;
  }
  return std::nullopt;
}

inline bool is_point_scheme(Scheme s) { return s != Scheme::Poses3 && s != Scheme::Poses4; }

struct ViaTask {
  Scheme scheme = Scheme::Points5;
  std::vector<DualQuat> poses;
  std::vector<Vec3> points;
  // Point schemes: nodes T where the even points are reached. Pose schemes:
  // the parameter of each pose (filled in by interpolate).
  std::vector<double> via_times;
  // Point schemes: times T_s of the odd points.
  std::vector<double> secondary_times;
  Poses4Options poses4;
};

struct InterpolationReport {
  MotionPolynomial motion;
  std::optional<BezierMotion> bezier;
  // w_0, w_2, … for point schemes.
  std::vector<Quat> weights;
  // Parameter of each via datum, in input order (may contain infinity).
  std::vector<double> datum_times;
  // Point distance, or projective pose distance, per via datum.
  std::vector<double> residuals;
  double study_residue = 0.0;

  double max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::isnan(r) ? std::numeric_limits<double>::infinity() : std::max(m, r);
    return m;
  }
};

namespace detail {

inline std::vector<double> datum_times(const ViaTask& task) {
  switch (task.scheme) {
    case Scheme::Points5:
      return {0.0, 0.25, 0.5, 0.75, 1.0};
    case Scheme::Points7:
      return {0.0, 1.0 / 6.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 5.0 / 6.0, 1.0};
    case Scheme::PointsGeneric:
      return interleave(task.via_times, task.secondary_times);
    case Scheme::Poses3:
      if (task.via_times.empty()) return {0.0, 1.0, std::numeric_limits<double>::infinity()};
      return task.via_times;
    case Scheme::Poses4:
      return task.via_times;
  }
  return {};
}

}  // namespace detail

// Residuals of C against the task. Never throws: a datum whose parameter is
// singular or unknown gets an infinite residual.
inline InterpolationReport verify(const ViaTask& task, const MotionPolynomial& c) {
  InterpolationReport rep;
  rep.motion = c;
  rep.datum_times = detail::datum_times(task);
  const std::size_t count = is_point_scheme(task.scheme) ? task.points.size() : task.poses.size();
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) {
    double r = inf;
    if (k < rep.datum_times.size()) {
      try {
        const DualQuat v = c(rep.datum_times[k]);
        if (is_point_scheme(task.scheme)) {
          r = (act_on_point(v, Vec3::Zero()) - task.points[k]).norm();
        } else {
          r = projective_distance(v, task.poses[k]);
        }
      } catch (const Error&) {
        r = inf;
      }
      if (std::isnan(r)) r = inf;
    }
    rep.residuals.push_back(r);
  }
  rep.study_residue = c.is_zero() ? inf : study_residue(c);
  return rep;
}

inline void validate(const ViaTask& task) {
  auto arity = [](std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
      throw Error(ErrorCode::BadArity, std::string("expected ") + std::to_string(want) + " " + what + ", got " +
                                           std::to_string(got));
    }
  };
  switch (task.scheme) {
    case Scheme::Poses3:
      arity(task.poses.size(), 3, "poses");
      break;
    case Scheme::Poses4:
      arity(task.poses.size(), 4, "poses");
      break;
    case Scheme::Points5:
    case Scheme::Points7: {
      const bool five = task.scheme == Scheme::Points5;
      arity(task.points.size(), five ? 5 : 7, "points");
      const std::vector<double> t = default_nodes(five ? 2 : 3);
      const std::vector<double> s = five ? std::vector<double>{0.25, 0.75}
                                         : std::vector<double>{1.0 / 6.0, 0.5, 5.0 / 6.0};
      if ((!task.via_times.empty() && task.via_times != t) ||
          (!task.secondary_times.empty() && task.secondary_times != s)) {
        throw Error(ErrorCode::BadOption, "closed-form point schemes use fixed via times; use pointsGeneric");
      }
      break;
    }
    case Scheme::PointsGeneric:
      if (task.points.size() < 3 || task.points.size() % 2 == 0) {
        throw Error(ErrorCode::BadArity, "pointsGeneric needs an odd number (>= 3) of points");
      }
      arity(task.via_times.size(), task.points.size() / 2 + 1, "via times");
      arity(task.secondary_times.size(), task.points.size() / 2, "secondary times");
      break;
  }
}

// Runs the scheme selected by the task and reports residuals.
inline InterpolationReport interpolate(const ViaTask& task) {
  validate(task);
  ViaTask resolved = task;
  std::optional<PointInterpolation> pts;
  MotionPolynomial motion;
  switch (task.scheme) {
    case Scheme::Points5:
      pts = interpolate_points5(task.points);
      break;
    case Scheme::Points7:
      pts = interpolate_points7(task.points);
      break;
    case Scheme::PointsGeneric:
      pts = interpolate_points_generic(task.points, task.via_times, task.secondary_times);
      break;
    case Scheme::Poses3: {
      auto r = interpolate_poses3(task.poses[0], task.poses[1], task.poses[2]);
      motion = r.motion;
      resolved.via_times = r.node_times;
      break;
    }
    case Scheme::Poses4: {
      auto r = interpolate_poses4(task.poses, task.poses4);
      motion = r.motion;
      resolved.via_times = r.node_times;
      break;
    }
  }
  if (pts) motion = pts->motion;
  InterpolationReport rep = verify(resolved, motion);
  if (pts) {
    rep.bezier = pts->bezier;
    rep.weights = pts->weights;
  }
  return rep;
}

}  // namespace motionforge
