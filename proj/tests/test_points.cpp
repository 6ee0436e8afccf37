#include <gtest/gtest.h>

#include "support.hpp"

using namespace mft;

namespace {

const std::vector<double> kT5{0.0, 0.25, 0.5, 0.75, 1.0};
const std::vector<double> kT7{0.0, 1.0 / 6.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 5.0 / 6.0, 1.0};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::SchemaError;
}

double max_weight_gap(const std::vector<Quat>& a, const std::vector<Quat>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Points5, ResidualsAndStudyResidue) {
  Rng rng(50);
  for (int n = 0; n < 100; ++n) {
    const auto pts = rng.points(5);
    const auto r = interpolate_points5(pts);
    EXPECT_EQ(r.motion.degree(), 2u);
    EXPECT_LT(max_point_residual(r.motion, pts, kT5), 1e-9);
    EXPECT_LT(oracle_study_residue(r.motion), 1e-9);
    EXPECT_EQ(r.via_times, kT5);
  }
}

TEST(Points5, BezierEndpointsExact) {
  Rng rng(51);
  const auto pts = rng.points(5);
  const auto r = interpolate_points5(pts);
  ASSERT_TRUE(r.bezier);
  EXPECT_EQ(r.bezier->control_points[0], to_quat(pts[0]));
  EXPECT_EQ(r.bezier->control_points[2], to_quat(pts[4]));
}

TEST(Points5, CoincidentPointsRejected) {
  Rng rng(52);
  auto pts = rng.points(5);
  pts[1] = pts[0];
  EXPECT_EQ(code_of([&] { interpolate_points5(pts); }), ErrorCode::SingularDifference);
  EXPECT_EQ(code_of([&] { interpolate_points5(std::vector<Vec3>(5, Vec3::Ones())); }), ErrorCode::SingularDifference);
  EXPECT_EQ(code_of([&] { interpolate_points5(rng.points(4)); }), ErrorCode::BadArity);
}

TEST(Points5, MatchesGenericSolver) {
  Rng rng(53);
  for (int n = 0; n < 200; ++n) {
    const auto pts = rng.points(5);
    const auto closed = interpolate_points5(pts);
    const auto generic = interpolate_points_generic(pts, {0.0, 0.5, 1.0}, {0.25, 0.75});
    EXPECT_LT(max_weight_gap(closed.weights, generic.weights), 1e-10);
  }
}

TEST(Points7, ResidualsAndStudyResidue) {
  Rng rng(54);
  for (int n = 0; n < 100; ++n) {
    const auto pts = rng.points(7);
    const auto r = interpolate_points7(pts);
    EXPECT_EQ(r.motion.degree(), 3u);
    EXPECT_LT(max_point_residual(r.motion, pts, kT7), 1e-9);
    EXPECT_LT(oracle_study_residue(r.motion), 1e-9);
  }
}

TEST(Points7, MatchesGenericSolver) {
  Rng rng(55);
  for (int n = 0; n < 200; ++n) {
    const auto pts = rng.points(7);
    const auto closed = interpolate_points7(pts);
    const auto generic = interpolate_points_generic(pts, default_nodes(3), {1.0 / 6.0, 0.5, 5.0 / 6.0});
    EXPECT_LT(max_weight_gap(closed.weights, generic.weights), 1e-9);
  }
}

TEST(Points7, RepeatedAdjacentPointsRejected) {
  Rng rng(56);
  for (std::size_t i = 0; i + 1 < 7; ++i) {
    auto pts = rng.points(7);
    pts[i + 1] = pts[i];
    EXPECT_EQ(code_of([&] { interpolate_points7(pts); }), ErrorCode::SingularDifference) << i;
  }
}

TEST(PointsGeneric, SevenPointResiduals) {
  Rng rng(57);
  for (int n = 0; n < 50; ++n) {
    const auto pts = rng.points(7);
    const auto r = interpolate_points_generic(pts, default_nodes(3), {1.0 / 6.0, 0.5, 5.0 / 6.0});
    EXPECT_LT(max_point_residual(r.motion, pts, kT7), 1e-9);
  }
}

TEST(PointsGeneric, CustomTimesAndHigherDegree) {
  Rng rng(58);
  for (int n = 0; n < 30; ++n) {
    const auto pts = rng.points(9);
    const std::vector<double> nodes{-0.3, 0.2, 0.9, 1.4, 2.0};
    const std::vector<double> secondary{0.0, 0.5, 1.1, 1.7};
    const auto r = interpolate_points_generic(pts, nodes, secondary);
    EXPECT_EQ(r.motion.degree(), 4u);
    EXPECT_LT(max_point_residual(r.motion, pts, r.via_times), 1e-8);
    EXPECT_LT(oracle_study_residue(r.motion), 1e-9);
  }
}

TEST(PointsGeneric, AllPointsIdentical) {
  EXPECT_EQ(code_of([] { interpolate_points_generic(std::vector<Vec3>(5, Vec3(1, 2, 3)), {0, 0.5, 1}, {0.25, 0.75}); }),
            ErrorCode::SingularSystem);
}

TEST(PointsGeneric, DuplicateTimes) {
  Rng rng(59);
  EXPECT_EQ(code_of([&] { interpolate_points_generic(rng.points(5), {0, 0.5, 1}, {0.5, 0.75}); }),
            ErrorCode::DuplicateNodes);
}

TEST(PointsInvariant, SimilarityMovesTrajectory) {
  Rng rng(60);
  for (int n = 0; n < 50; ++n) {
    const auto pts = rng.points(7);
    const double s = rng.uniform(0.1, 10.0);
    const Vec3 shift = rng.point() * 5.0;
    std::vector<Vec3> moved;
    for (const auto& p : pts) moved.push_back(p * s + shift);
    const auto a = interpolate_points7(pts), b = interpolate_points7(moved);
    EXPECT_LT(max_weight_gap(a.weights, b.weights), 1e-9);
    for (int k = 0; k <= 10; ++k) {
      const double t = rng.uniform(-0.5, 1.5);
      const Vec3 pa = project_origin(a.motion(t)), pb = project_origin(b.motion(t));
      EXPECT_LE((pa * s + shift - pb).norm(), 1e-8 * std::max(1.0, pb.norm()));
    }
  }
}

TEST(Verify, OwnTaskIsClean) {
  Rng rng(61);
  ViaTask task;
  task.scheme = Scheme::Points5;
  task.points = rng.points(5);
  const auto rep = interpolate(task);
  EXPECT_LT(rep.max_residual(), 1e-9);
  EXPECT_LT(rep.study_residue, 1e-9);
  EXPECT_EQ(rep.datum_times, kT5);
}

TEST(Verify, IdentityAgainstPointsReportsLargeResiduals) {
  ViaTask task;
  task.scheme = Scheme::Points5;
  task.points = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(1, 1, 0), Vec3(0, 1, 1)};
  const auto rep = verify(task, MotionPolynomial::constant(DualQuat::identity()));
  ASSERT_EQ(rep.residuals.size(), 5u);
  for (double r : rep.residuals) EXPECT_GE(r, 1.0);
  EXPECT_EQ(rep.study_residue, 0.0);
}

TEST(Verify, PerturbationDetected) {
  Rng rng(62);
  for (int n = 0; n < 20; ++n) {
    ViaTask task;
    task.scheme = Scheme::Points5;
    task.points = rng.points(5);
    const auto good = interpolate(task);
    std::vector<DualQuat> c = good.motion.coeffs();
    c[1].dual.x += 1e-3 * max_coeff_abs(good.motion);
    const auto rep = verify(task, MotionPolynomial(c));
    EXPECT_GT(rep.study_residue, 1e-6);
    EXPECT_NEAR(rep.study_residue, oracle_study_residue(MotionPolynomial(c)), 1e-12);
  }
}

TEST(Validate, ArityAndOptions) {
  ViaTask t;
  t.scheme = Scheme::Points7;
  t.points = std::vector<Vec3>(6, Vec3::Zero());
  EXPECT_EQ(code_of([&] { interpolate(t); }), ErrorCode::BadArity);
  t.scheme = Scheme::Points5;
  t.points = Rng(63).points(5);
  t.via_times = {0.0, 0.4, 1.0};
  EXPECT_EQ(code_of([&] { interpolate(t); }), ErrorCode::BadOption);
  t.scheme = Scheme::PointsGeneric;
  t.points = Rng(64).points(4);
  EXPECT_EQ(code_of([&] { interpolate(t); }), ErrorCode::BadArity);
}
