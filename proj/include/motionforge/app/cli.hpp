#pragma once

// File-level CLI commands. Each returns the process exit code:
//   0 success, 2 input/schema/usage error, 3 mathematical failure.
// Errors are written to `err` as {"error": {"code", "message"}}.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "motionforge/app/handlers.hpp"
#include "motionforge/error.hpp"
#include "motionforge/io/json.hpp"

namespace motionforge::app {

enum class SampleFormat { Csv, Json };

namespace detail {

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, path + ": invalid JSON: " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::IoError, "failed writing " + path);
}

inline std::string shortest(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    body();
    return 0;
  } catch (const Error& e) {
    err << io::error_json(e).dump() << '\n';
    return is_input_error(e.code()) ? 2 : 3;
  } catch (const json::exception& e) {
    err << io::error_json(Error(ErrorCode::SchemaError, e.what())).dump() << '\n';
    return 2;
  }
}

}  // namespace detail

inline int cmd_interpolate(const std::string& input, const std::string& output, std::ostream& out = std::cout,
                           std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    const json result = handle_interpolate(detail::read_json_file(input));
    detail::write_text(output, io::serialize(result["motion"]), out);
    out << result["report"].dump() << '\n';
  });
}

inline int cmd_factorize(const std::string& input, const std::string& output, LoopMode loops,
                         std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    const json result = handle_factorize(detail::read_json_file(input), loops);
    detail::write_text(output, io::serialize(result), out);
    json summary{{"factorizations", result["factorizations"].size()}};
    if (result.contains("mechanisms")) summary["mechanisms"] = result["mechanisms"].size();
    out << summary.dump() << '\n';
  });
}

inline std::string samples_csv(const std::vector<TrajectorySample>& samples) {
  using detail::shortest;
  std::string s = "t,gap,ox,oy,oz,px,py,pz,r00,r01,r02,r10,r11,r12,r20,r21,r22\n";
  for (const auto& x : samples) {
    s += shortest(x.t);
    if (!x.pose) {
      s += ",1" + std::string(15, ',') + "\n";
      continue;
    }
    s += ",0";
    for (int i = 0; i < 3; ++i) s += "," + shortest(x.origin[i]);
    for (int i = 0; i < 3; ++i) s += "," + shortest(x.point[i]);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) s += "," + shortest(x.pose->rotation(i, k));
    s += "\n";
  }
  return s;
}

inline int cmd_sample(const std::string& motion_path, const SampleRequest& req, SampleFormat format,
                      const std::string& output, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    const io::MotionDocument doc = io::parse_motion(detail::read_json_file(motion_path));
    const auto samples = run_sample(doc.motion(), req);
    if (format == SampleFormat::Csv) {
      detail::write_text(output, samples_csv(samples), out);
    } else {
      json j;
      j["samples"] = json::array();
      for (const auto& s : samples) j["samples"].push_back(io::sample_json(s));
      detail::write_text(output, io::serialize(j), out);
    }
  });
}

}  // namespace motionforge::app
