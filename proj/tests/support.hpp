#pragma once

// Shared generators and independent oracles for the test suites.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <Eigen/Dense>

#include "motionforge/motionforge.hpp"

namespace mft {

using namespace motionforge;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  Vec3 point() { return {uniform(), uniform(), uniform()}; }
  Quat quat() { return {uniform(), uniform(), uniform(), uniform()}; }
  DualQuat dual_quat() { return {quat(), quat()}; }

  Quat unit_quat() {
    Quat q = quat();
    return q / std::sqrt(q.norm());
  }

  // Random rigid displacement: translation(t) * rotation(p), scaled by a
  // random real so the representative is not normalized.
  DualQuat pose() {
    const Quat p = unit_quat();
    const Vec3 t = point();
    const double s = uniform(0.5, 2.0) * (uniform() < 0 ? -1.0 : 1.0);
    return DualQuat{p * s, to_quat(t) * p * s};
  }

  // h = a + v + ε w with v ⟂ w, so t − h is a motion polynomial.
  DualQuat revolute_root() {
    const Vec3 v = point();
    Vec3 w = point();
    w -= v * (v.dot(w) / v.squaredNorm());
    return {Quat{uniform(), v.x(), v.y(), v.z()}, to_quat(w)};
  }

  std::vector<Vec3> points(std::size_t n) {
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(point());
    return out;
  }
};

// 4×4 matrix of x ↦ a·x, written out from the Hamilton rules.
inline Eigen::Matrix4d oracle_left(const Quat& a) {
  Eigen::Matrix4d m;
  m << a.w, -a.x, -a.y, -a.z,
       a.x,  a.w, -a.z,  a.y,
       a.y,  a.z,  a.w, -a.x,
       a.z, -a.y,  a.x,  a.w;
  return m;
}

inline Eigen::Vector4d vec4(const Quat& q) { return {q.w, q.x, q.y, q.z}; }

// 8×8 matrix of x ↦ c·x on (primal, dual) coordinates.
inline Eigen::Matrix<double, 8, 8> oracle_dual_left(const DualQuat& c) {
  Eigen::Matrix<double, 8, 8> m = Eigen::Matrix<double, 8, 8>::Zero();
  m.block<4, 4>(0, 0) = oracle_left(c.primal);
  m.block<4, 4>(4, 4) = oracle_left(c.primal);
  m.block<4, 4>(4, 0) = oracle_left(c.dual);
  return m;
}

inline Eigen::Matrix<double, 8, 1> vec8(const DualQuat& c) {
  Eigen::Matrix<double, 8, 1> v;
  v << c.primal.w, c.primal.x, c.primal.y, c.primal.z, c.dual.w, c.dual.x, c.dual.y, c.dual.z;
  return v;
}

// Σ c_k t^k term by term, powers computed with std::pow.
template <typename C>
C oracle_eval(const Polynomial<C>& p, double t) {
  C sum{};
  for (std::size_t k = 0; k < p.size(); ++k) sum += p[k] * std::pow(t, static_cast<double>(k));
  return sum;
}

// Projective distance: scale both to unit max-coordinate and compare up to sign.
inline double oracle_projective_gap(const DualQuat& a, const DualQuat& b) {
  const auto va = vec8(a), vb = vec8(b);
  const Eigen::Matrix<double, 8, 1> na = va / va.cwiseAbs().maxCoeff();
  const Eigen::Matrix<double, 8, 1> nb = vb / vb.cwiseAbs().maxCoeff();
  return std::min((na - nb).cwiseAbs().maxCoeff(), (na + nb).cwiseAbs().maxCoeff());
}

// Largest coefficient of C C* outside the real part, relative to the largest
// coefficient overall; computed through the 8×8 matrix oracle.
inline double oracle_study_residue(const MotionPolynomial& c) {
  const MotionPolynomial cc = c.conjugate();
  std::vector<Eigen::Matrix<double, 8, 1>> prod(2 * c.size());
  for (auto& v : prod) v.setZero();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < cc.size(); ++j) prod[i + j] += oracle_dual_left(c[i]) * vec8(cc[j]);
  double scale = 0.0, off = 0.0;
  for (const auto& v : prod) {
    scale = std::max(scale, std::fabs(v[0]));
    off = std::max(off, v.tail<7>().cwiseAbs().maxCoeff());
  }
  return off / scale;
}

// Image of x under c, computed as the translation part of c·(1 + εx)·c_ε*
// via the point action x ↦ (p x + q)(p⁻¹) written with explicit formulas.
inline Vec3 oracle_point_image(const DualQuat& c, const Vec3& x) {
  const Eigen::Vector4d p = vec4(c.primal);
  const double n = p.squaredNorm();
  const Eigen::Vector4d pinv = Eigen::Vector4d(p[0], -p[1], -p[2], -p[3]) / n;
  const Eigen::Vector4d px = oracle_left(c.primal) * Eigen::Vector4d(0, x.x(), x.y(), x.z());
  const Eigen::Vector4d r = oracle_left(Quat{px[0], px[1], px[2], px[3]} + c.dual) * pinv;
  return {r[1], r[2], r[3]};
}

inline MotionPolynomial linear(const DualQuat& h) { return MotionPolynomial({-h, DualQuat::identity()}); }

inline double max_coeff_gap(const MotionPolynomial& a, const MotionPolynomial& b) {
  double m = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    const DualQuat x = k < a.size() ? a[k] : DualQuat{};
    const DualQuat y = k < b.size() ? b[k] : DualQuat{};
    m = std::max(m, max_abs(x - y));
  }
  return m;
}

inline double max_point_residual(const MotionPolynomial& c, const std::vector<Vec3>& pts,
                                 const std::vector<double>& ts) {
  double m = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) m = std::max(m, (oracle_point_image(c(ts[k]), Vec3::Zero()) - pts[k]).norm());
  return m;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("motionforge_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

// Runs the motionforge executable with stdout/stderr captured to files.
inline CliRun run_cli(const std::string& args, const TempDir& dir) {
  const std::string out = dir.file("stdout.txt"), err = dir.file("stderr.txt");
  const std::string cmd = std::string("\"") + MOTIONFORGE_CLI + "\" " + args + " >\"" + out + "\" 2>\"" + err + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(out), read_file(err)};
}

}  // namespace mft
