#pragma once

// Request handlers shared by the CLI and the HTTP service. Each takes a parsed
// JSON request and returns the JSON response body, throwing motionforge::Error
// on failure. Sharing them keeps CLI and HTTP output byte-identical.

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "motionforge/error.hpp"
#include "motionforge/factor.hpp"
#include "motionforge/io/json.hpp"
#include "motionforge/kinematics.hpp"
#include "motionforge/task.hpp"
#include "motionforge/tolerance.hpp"

namespace motionforge::app {

using io::json;

// Point-fit tolerance used for reporting; MOTIONFORGE_TOLERANCE overrides it.
inline double reporting_tolerance() {
  if (const char* env = std::getenv("MOTIONFORGE_TOLERANCE")) {
    try {
      std::size_t used = 0;
      const double v = std::stod(env, &used);
      if (used == std::string(env).size() && v > 0.0) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::UsageError, "MOTIONFORGE_TOLERANCE must be a positive number");
  }
  return tol::fit;
}

inline io::MotionDocument motion_document(const io::TaskDocument& task, const InterpolationReport& rep) {
  io::MotionDocument doc;
  doc.coefficients = rep.motion.coeffs();
  doc.convention = task.convention;
  doc.bezier = rep.bezier;
  doc.provenance = io::Provenance{std::string(to_string(task.task.scheme)), rep.datum_times};
  return doc;
}

// TaskDocument → {"motion": MotionDocument, "report": {...}}
inline json handle_interpolate(const json& request) {
  const double tolerance = reporting_tolerance();
  const io::TaskDocument task = io::parse_task(request);
  const InterpolationReport rep = interpolate(task.task);
  json out;
  out["motion"] = io::to_json(motion_document(task, rep));
  out["report"] = io::report_json(rep, tolerance);
  return out;
}

enum class LoopMode {
  None,      // factorizations only
  IfAny,     // one loop per pair, possibly none
  Required,  // at least two factorizations, else InsufficientFactorizations
};

// MotionDocument → factorizations of its monic normalization and, depending on
// the mode, one closed loop per pair of factorizations.
inline json handle_factorize(const json& request, LoopMode loops) {
  const io::MotionDocument doc = io::parse_motion(request);
  const MotionPolynomial motion = doc.motion();
  if (motion.is_zero()) throw Error(ErrorCode::IrreducibleLeading, "motion polynomial is zero");
  if (study_residue(motion) > tol::factorization) {
    throw Error(ErrorCode::NonGenericMotion, "document does not hold a motion polynomial (C C* is not real)");
  }
  const MonicMotion monic = monic_normalize(motion);
  const auto fs =
      loops == LoopMode::Required ? all_factorizations(monic.motion) : enumerate_factorizations(monic.motion);

  json out;
  out["schema_version"] = io::kSchemaVersion;
  json m;
  io::MotionDocument monic_doc;
  monic_doc.coefficients = monic.motion.coeffs();
  monic_doc.convention = doc.convention;
  m["motion"] = io::to_json(monic_doc);
  m["tool"] = io::detail::dual_quat_json(export_dual(monic.tool, doc.convention));
  m["shift"] = monic.shift ? json(*monic.shift) : json(nullptr);
  out["monic"] = m;
  out["factorizations"] = json::array();
  for (const auto& f : fs) {
    json fj = io::factorization_json(f);
    json factors = json::array();
    for (const auto& lf : f.factors) factors.push_back(io::detail::dual_quat_json(export_dual(lf.h, doc.convention)));
    fj["factors"] = factors;
    json axes = json::array();
    for (const auto& lf : f.factors) axes.push_back(io::axis_json(axis_of(lf)));
    fj["axes"] = axes;
    out["factorizations"].push_back(fj);
  }
  if (loops != LoopMode::None) {
    out["mechanisms"] = json::array();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      for (std::size_t j = i + 1; j < fs.size(); ++j) {
        out["mechanisms"].push_back(io::mechanism_json(build_mechanism(fs[i], fs[j]), i, j));
      }
    }
  }
  return out;
}

struct SampleRequest {
  std::optional<std::size_t> count;
  std::vector<double> at;
  double lo = 0.0;
  double hi = 1.0;
  Vec3 point = Vec3::Zero();
};

inline std::vector<TrajectorySample> run_sample(const MotionPolynomial& motion, const SampleRequest& req) {
  if (req.count && !req.at.empty()) throw Error(ErrorCode::UsageError, "use either a count or explicit parameters");
  std::vector<double> ts;
  if (req.count) {
    if (!std::isfinite(req.lo) || !std::isfinite(req.hi) || !(req.lo < req.hi)) {
      throw Error(ErrorCode::UsageError, "range must be finite with lo < hi");
    }
    ts = uniform_grid(req.lo, req.hi, *req.count);
  } else if (!req.at.empty()) {
    ts = req.at;
  } else {
    throw Error(ErrorCode::UsageError, "give a sample count or explicit parameters");
  }
  return sample_trajectory(motion, req.point, ts, GapPolicy::Skip);
}

// {"motion": MotionDocument, "count": N, "range": [lo, hi], "at": [t...], "point": [x, y, z]}
inline json handle_sample(const json& request) {
  if (!request.is_object() || !request.contains("motion")) {
    throw Error(ErrorCode::SchemaError, "request must contain a motion document");
  }
  const io::MotionDocument doc = io::parse_motion(request["motion"]);
  SampleRequest req;
  if (request.contains("count")) {
    if (!request["count"].is_number_integer() || request["count"].get<long>() < 0) {
      throw Error(ErrorCode::UsageError, "count must be a nonnegative integer");
    }
    req.count = request["count"].get<std::size_t>();
  }
  if (request.contains("range")) {
    const auto r = io::detail::numbers(request["range"], 2, "range");
    req.lo = r[0];
    req.hi = r[1];
  }
  if (request.contains("at")) {
    const json& at = request["at"];
    if (!at.is_array()) throw Error(ErrorCode::SchemaError, "at must be an array");
    for (std::size_t i = 0; i < at.size(); ++i) req.at.push_back(io::detail::extended_number(at[i], "at"));
  }
  if (request.contains("point")) {
    const auto p = io::detail::numbers(request["point"], 3, "point");
    req.point = {p[0], p[1], p[2]};
  }
  json out;
  out["samples"] = json::array();
  for (const auto& s : run_sample(doc.motion(), req)) out["samples"].push_back(io::sample_json(s));
  return out;
}

}  // namespace motionforge::app
