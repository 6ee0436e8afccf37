#pragma once

// JSON documents exchanged by the CLI and the HTTP service.
//
// TaskDocument
//   { "schema_version": "1",
//     "task": { "scheme": "points5" | "points7" | "pointsGeneric" | "poses3" | "poses4",
//               "points": [[x, y, z], ...]            (point schemes)
//               "poses":  [[p0..p3, q0..q3], ...]      (pose schemes)
//               "via_times": [...], "secondary_times": [...] },
//     "options": { "lambda": number, "branch": "k1" | "k2",
//                  "dual_convention": "plain" | "half_negative" } }
//
// MotionDocument
//   { "schema_version": "1", "degree": d, "dual_convention": "plain",
//     "primal": [[w, x, y, z] × (d+1)], "dual": [[w, x, y, z] × (d+1)],
//     "bezier": { "weights": [[4]...], "control_points": [[4]...] },   optional
//     "provenance": { "scheme": "...", "via_times": [t | "inf" | "-inf"] } }   optional
//
// Coefficients are ascending in degree. Numbers are written as shortest
// round-trip decimals, so parse(serialize(doc)) == doc bit for bit.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "motionforge/bezier.hpp"
#include "motionforge/error.hpp"
#include "motionforge/factor.hpp"
#include "motionforge/kinematics.hpp"
#include "motionforge/study.hpp"
#include "motionforge/task.hpp"

namespace motionforge::io {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

struct Provenance {
  std::string scheme;
  std::vector<double> via_times;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct MotionDocument {
  // Coefficients in the plain convention, ascending degree. Kept untrimmed so
  // documents round-trip exactly.
  std::vector<DualQuat> coefficients;
  DualConvention convention = DualConvention::Plain;
  std::optional<BezierMotion> bezier;
  std::optional<Provenance> provenance;

  MotionPolynomial motion() const { return MotionPolynomial(coefficients); }

  friend bool operator==(const MotionDocument& a, const MotionDocument& b) {
    auto same_bezier = [](const std::optional<BezierMotion>& x, const std::optional<BezierMotion>& y) {
      if (x.has_value() != y.has_value()) return false;
      return !x || (x->weights == y->weights && x->control_points == y->control_points);
    };
    return a.coefficients == b.coefficients && a.convention == b.convention && same_bezier(a.bezier, b.bezier) &&
           a.provenance == b.provenance;
  }
};

struct TaskDocument {
  ViaTask task;
  DualConvention convention = DualConvention::Plain;
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& msg) { throw Error(ErrorCode::SchemaError, msg); }

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema_error(where + " must be finite");
  return v;
}

// Finite number, or the strings "inf" / "-inf".
inline double extended_number(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    schema_error(where + " must be a number, \"inf\" or \"-inf\"");
  }
  return number(j, where);
}

inline json extended_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

inline std::vector<double> numbers(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) schema_error(where + " must be an array of " + std::to_string(n) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline const json& array_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_array()) schema_error(where + "." + key + " must be an array");
  return obj[key];
}

inline Quat quat_from(const json& j, const std::string& where) {
  const auto v = numbers(j, 4, where);
  return {v[0], v[1], v[2], v[3]};
}

inline json quat_json(const Quat& q) { return json::array({q.w, q.x, q.y, q.z}); }

inline json dual_quat_json(const DualQuat& c) {
  json a = json::array();
  for (double x : c.coeffs()) a.push_back(x);
  return a;
}

inline DualQuat dual_quat_from(const json& j, const std::string& where) {
  const auto v = numbers(j, 8, where);
  return {{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}};
}

inline json vec3_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

inline DualConvention convention_from(const json& j) {
  if (!j.is_string()) throw Error(ErrorCode::BadOption, "dual_convention must be a string");
  const auto s = j.get<std::string>();
  if (s == "plain") return DualConvention::Plain;
  if (s == "half_negative") return DualConvention::HalfNegative;
  throw Error(ErrorCode::BadOption, "unknown dual_convention \"" + s + "\"");
}

inline const char* convention_name(DualConvention c) {
  return c == DualConvention::Plain ? "plain" : "half_negative";
}

inline void check_version(const json& doc) {
  if (!doc.is_object()) schema_error("document must be a JSON object");
  if (!doc.contains("schema_version") || doc["schema_version"] != kSchemaVersion) {
    schema_error("schema_version must be \"1\"");
  }
}

inline std::vector<double> times_from(const json& obj, const char* key) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  const json& arr = array_field(obj, key, "task");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(extended_number(arr[i], std::string("task.") + key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace detail

inline TaskDocument parse_task(const json& doc) {
  using namespace detail;
  check_version(doc);
  if (!doc.contains("task") || !doc["task"].is_object()) schema_error("task must be an object");
  const json& t = doc["task"];
  if (!t.contains("scheme") || !t["scheme"].is_string()) schema_error("task.scheme must be a string");
  const auto scheme = parse_scheme(t["scheme"].get<std::string>());
  if (!scheme) throw Error(ErrorCode::BadScheme, "unknown scheme \"" + t["scheme"].get<std::string>() + "\"");

  TaskDocument out;
  out.task.scheme = *scheme;
  if (doc.contains("options")) {
    const json& o = doc["options"];
    if (!o.is_object()) throw Error(ErrorCode::BadOption, "options must be an object");
    for (const auto& [key, value] : o.items()) {
      if (key == "lambda") {
        if (!value.is_number() || !std::isfinite(value.get<double>())) {
          throw Error(ErrorCode::BadOption, "lambda must be a finite number");
        }
        out.task.poses4.lambda = value.get<double>();
      } else if (key == "branch") {
        if (value == "k1") {
          out.task.poses4.branch = RulingBranch::K1;
        } else if (value == "k2") {
          out.task.poses4.branch = RulingBranch::K2;
        } else {
          throw Error(ErrorCode::BadOption, "branch must be \"k1\" or \"k2\"");
        }
      } else if (key == "dual_convention") {
        out.convention = convention_from(value);
      } else {
        throw Error(ErrorCode::BadOption, "unknown option \"" + key + "\"");
      }
    }
    if ((o.contains("lambda") || o.contains("branch")) && *scheme != Scheme::Poses4) {
      throw Error(ErrorCode::BadOption, "lambda and branch apply to poses4 only");
    }
  }

  if (is_point_scheme(*scheme)) {
    const json& pts = array_field(t, "points", "task");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto v = numbers(pts[i], 3, "task.points[" + std::to_string(i) + "]");
      out.task.points.emplace_back(v[0], v[1], v[2]);
    }
  } else {
    const json& poses = array_field(t, "poses", "task");
    for (std::size_t i = 0; i < poses.size(); ++i) {
      out.task.poses.push_back(
          import_dual(dual_quat_from(poses[i], "task.poses[" + std::to_string(i) + "]"), out.convention));
    }
  }
  out.task.via_times = times_from(t, "via_times");
  out.task.secondary_times = times_from(t, "secondary_times");
  validate(out.task);
  return out;
}

inline json to_json(const TaskDocument& doc) {
  using namespace detail;
  json t;
  t["scheme"] = std::string(to_string(doc.task.scheme));
  if (is_point_scheme(doc.task.scheme)) {
    t["points"] = json::array();
    for (const auto& p : doc.task.points) t["points"].push_back(vec3_json(p));
  } else {
    t["poses"] = json::array();
    for (const auto& c : doc.task.poses) t["poses"].push_back(dual_quat_json(export_dual(c, doc.convention)));
  }
  if (!doc.task.via_times.empty()) {
    t["via_times"] = json::array();
    for (double v : doc.task.via_times) t["via_times"].push_back(extended_to_json(v));
  }
  if (!doc.task.secondary_times.empty()) {
    t["secondary_times"] = json::array();
    for (double v : doc.task.secondary_times) t["secondary_times"].push_back(extended_to_json(v));
  }
  json out;
  out["schema_version"] = kSchemaVersion;
  out["task"] = t;
  json o = json::object();
  if (doc.task.scheme == Scheme::Poses4) {
    if (doc.task.poses4.lambda) o["lambda"] = *doc.task.poses4.lambda;
    o["branch"] = doc.task.poses4.branch == RulingBranch::K1 ? "k1" : "k2";
  }
  if (doc.convention != DualConvention::Plain) o["dual_convention"] = convention_name(doc.convention);
  if (!o.empty()) out["options"] = o;
  return out;
}

inline json to_json(const MotionDocument& doc) {
  using namespace detail;
  json out;
  out["schema_version"] = kSchemaVersion;
  out["degree"] = doc.coefficients.empty() ? 0 : doc.coefficients.size() - 1;
  out["dual_convention"] = convention_name(doc.convention);
  out["primal"] = json::array();
  out["dual"] = json::array();
  for (const auto& c : doc.coefficients) {
    const DualQuat e = export_dual(c, doc.convention);
    out["primal"].push_back(quat_json(e.primal));
    out["dual"].push_back(quat_json(e.dual));
  }
  if (doc.bezier) {
    json b;
    b["weights"] = json::array();
    b["control_points"] = json::array();
    for (const auto& w : doc.bezier->weights) b["weights"].push_back(quat_json(w));
    for (const auto& p : doc.bezier->control_points) b["control_points"].push_back(quat_json(p));
    out["bezier"] = b;
  }
  if (doc.provenance) {
    json p;
    p["scheme"] = doc.provenance->scheme;
    p["via_times"] = json::array();
    for (double v : doc.provenance->via_times) p["via_times"].push_back(extended_to_json(v));
    out["provenance"] = p;
  }
  return out;
}

inline MotionDocument parse_motion(const json& doc) {
  using namespace detail;
  check_version(doc);
  MotionDocument out;
  if (doc.contains("dual_convention")) out.convention = convention_from(doc["dual_convention"]);
  if (!doc.contains("degree") || !doc["degree"].is_number_integer() || doc["degree"].get<long>() < 0) {
    schema_error("degree must be a nonnegative integer");
  }
  const std::size_t n = doc["degree"].get<std::size_t>() + 1;
  const json& primal = array_field(doc, "primal", "motion");
  const json& dual = array_field(doc, "dual", "motion");
  if (primal.size() != n || dual.size() != n) schema_error("primal and dual must have degree+1 entries");
  for (std::size_t k = 0; k < n; ++k) {
    const DualQuat c{quat_from(primal[k], "primal[" + std::to_string(k) + "]"),
                     quat_from(dual[k], "dual[" + std::to_string(k) + "]")};
    out.coefficients.push_back(import_dual(c, out.convention));
  }
  if (doc.contains("bezier")) {
    const json& b = doc["bezier"];
    if (!b.is_object()) schema_error("bezier must be an object");
    const json& w = array_field(b, "weights", "bezier");
    const json& p = array_field(b, "control_points", "bezier");
    if (w.size() != p.size()) schema_error("bezier weights and control_points differ in length");
    BezierMotion bz;
    for (std::size_t i = 0; i < w.size(); ++i) {
      bz.weights.push_back(quat_from(w[i], "bezier.weights[" + std::to_string(i) + "]"));
      bz.control_points.push_back(quat_from(p[i], "bezier.control_points[" + std::to_string(i) + "]"));
    }
    out.bezier = bz;
  }
  if (doc.contains("provenance")) {
    const json& p = doc["provenance"];
    if (!p.is_object() || !p.contains("scheme") || !p["scheme"].is_string()) {
      schema_error("provenance must be an object with a scheme string");
    }
    Provenance prov;
    prov.scheme = p["scheme"].get<std::string>();
    if (p.contains("via_times")) {
      const json& v = array_field(p, "via_times", "provenance");
      for (std::size_t i = 0; i < v.size(); ++i) {
        prov.via_times.push_back(extended_number(v[i], "provenance.via_times[" + std::to_string(i) + "]"));
      }
    }
    out.provenance = prov;
  }
  return out;
}

// Canonical text form: two-space indent, keys sorted, trailing newline.
inline std::string serialize(const json& j) { return j.dump(2) + "\n"; }

inline json report_json(const InterpolationReport& rep, double tolerance) {
  using namespace detail;
  json out;
  json residuals = json::array();
  for (double r : rep.residuals) residuals.push_back(extended_to_json(r));
  json times = json::array();
  for (double t : rep.datum_times) times.push_back(extended_to_json(t));
  out["residuals"] = residuals;
  out["datum_times"] = times;
  out["max_residual"] = extended_to_json(rep.max_residual());
  out["study_residue"] = extended_to_json(rep.study_residue);
  out["tolerance"] = tolerance;
  out["within_tolerance"] = rep.max_residual() <= tolerance && rep.study_residue <= tol::algebraic;
  return out;
}

inline json factorization_json(const Factorization& f) {
  using namespace detail;
  json out;
  out["ordering"] = f.ordering;
  out["factors"] = json::array();
  for (const auto& lf : f.factors) out["factors"].push_back(dual_quat_json(lf.h));
  return out;
}

inline json axis_json(const JointAxis& a) {
  using namespace detail;
  return {{"direction", vec3_json(a.direction)}, {"moment", vec3_json(a.moment)}};
}

inline json mechanism_json(const Mechanism& m, std::size_t first, std::size_t second) {
  json out;
  out["pair"] = json::array({first, second});
  out["joints"] = json::array();
  for (const auto& a : m.loop_joints) out["joints"].push_back(axis_json(a));
  return out;
}

inline json sample_json(const TrajectorySample& s) {
  using namespace detail;
  json out;
  out["t"] = extended_to_json(s.t);
  if (!s.pose) {
    out["gap"] = true;
    return out;
  }
  out["origin"] = vec3_json(s.origin);
  out["point"] = vec3_json(s.point);
  json r = json::array();
  for (int i = 0; i < 3; ++i) r.push_back(json::array({s.pose->rotation(i, 0), s.pose->rotation(i, 1), s.pose->rotation(i, 2)}));
  out["rotation"] = r;
  return out;
}

inline json error_json(const Error& e) {
  return {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
}

}  // namespace motionforge::io
