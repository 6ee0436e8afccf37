#include <gtest/gtest.h>

#include "support.hpp"

using namespace mft;

namespace {

void expect_quat_near(const Quat& a, const Quat& b, double tol) {
  EXPECT_LE(max_abs(a - b), tol) << a << " vs " << b;
}

}  // namespace

TEST(QuatMul, HamiltonBasis) {
  EXPECT_EQ(Quat::i() * Quat::j(), Quat::k());
  EXPECT_EQ(Quat::j() * Quat::k(), Quat::i());
  EXPECT_EQ(Quat::k() * Quat::i(), Quat::j());
  EXPECT_EQ(Quat::j() * Quat::i(), -Quat::k());
  EXPECT_EQ(Quat::i() * Quat::i(), -Quat::identity());
  EXPECT_EQ(Quat::i() * Quat::j() * Quat::k(), -Quat::identity());
}

TEST(QuatMul, IdentityIsNeutral) {
  Rng rng(1);
  for (int n = 0; n < 20; ++n) {
    const Quat b = rng.quat();
    EXPECT_EQ(Quat::identity() * b, b);
    EXPECT_EQ(b * Quat::identity(), b);
  }
}

TEST(QuatMul, MatchesLeftMatrixOracle) {
  Rng rng(2);
  for (int n = 0; n < 200; ++n) {
    const Quat a = rng.quat(), b = rng.quat();
    const Eigen::Vector4d want = oracle_left(a) * vec4(b);
    EXPECT_LE((vec4(a * b) - want).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((left_matrix(a) - oracle_left(a)).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(QuatInv, BasisAndScalar) {
  EXPECT_EQ(inverse(Quat::i()), -Quat::i());
  EXPECT_EQ(inverse(Quat(2.0)), Quat(0.5));
}

TEST(QuatInv, ProductIsIdentity) {
  Rng rng(3);
  for (int n = 0; n < 200; ++n) {
    const Quat p = rng.quat();
    expect_quat_near(p * inverse(p), Quat::identity(), 1e-12);
    expect_quat_near(inverse(p) * p, Quat::identity(), 1e-12);
  }
}

TEST(QuatInv, SingularThrows) {
  try {
    inverse(Quat{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularQuaternion);
  }
  EXPECT_THROW(inverse(Quat(1e-7)), Error);  // norm 1e-14
}

TEST(QuatNorm, NonNegativeAndMultiplicative) {
  Rng rng(4);
  for (int n = 0; n < 100; ++n) {
    const Quat a = rng.quat(), b = rng.quat();
    EXPECT_GE(a.norm(), 0.0);
    EXPECT_NEAR((a * b).norm(), a.norm() * b.norm(), 1e-12);
    EXPECT_DOUBLE_EQ(a.norm(), a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z);
  }
}

TEST(DualQuatMul, TranslationsCompose) {
  const Vec3 x(1.0, -2.0, 0.5), y(0.25, 3.0, -1.0);
  EXPECT_EQ(translation(x) * translation(y), translation(x + y));
}

TEST(DualQuatMul, EpsilonSquaredVanishes) {
  Rng rng(5);
  const DualQuat a{Quat{}, rng.quat()}, b{Quat{}, rng.quat()};
  EXPECT_EQ(a * b, DualQuat{});
  EXPECT_EQ(DualQuat::epsilon() * DualQuat::epsilon(), DualQuat{});
}

TEST(DualQuatMul, MatchesEightByEightOracle) {
  Rng rng(6);
  for (int n = 0; n < 200; ++n) {
    const DualQuat a = rng.dual_quat(), b = rng.dual_quat();
    EXPECT_LE((vec8(a * b) - oracle_dual_left(a) * vec8(b)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(DualQuatMul, ExpandedProductRule) {
  Rng rng(7);
  const DualQuat a = rng.dual_quat(), b = rng.dual_quat();
  const DualQuat c = a * b;
  expect_quat_near(c.primal, a.primal * b.primal, 0.0);
  expect_quat_near(c.dual, a.primal * b.dual + a.dual * b.primal, 1e-15);
}

TEST(Conjugates, AreInvolutions) {
  Rng rng(8);
  for (int n = 0; n < 50; ++n) {
    const DualQuat c = rng.dual_quat();
    EXPECT_EQ(c.conjugate().conjugate(), c);
    EXPECT_EQ(c.eps_conjugate().eps_conjugate(), c);
    EXPECT_EQ(c.conjugate(), (DualQuat{c.primal.conjugate(), c.dual.conjugate()}));
    EXPECT_EQ(c.eps_conjugate(), (DualQuat{c.primal, -c.dual}));
  }
}

TEST(Properties, Associativity) {
  Rng rng(9);
  for (int n = 0; n < 500; ++n) {
    const Quat a = rng.quat(), b = rng.quat(), c = rng.quat();
    EXPECT_LE(max_abs((a * b) * c - a * (b * c)), 1e-12);
    const DualQuat x = rng.dual_quat(), y = rng.dual_quat(), z = rng.dual_quat();
    EXPECT_LE(max_abs((x * y) * z - x * (y * z)), 1e-12);
  }
}

TEST(Properties, ConjugationReversesProducts) {
  Rng rng(10);
  for (int n = 0; n < 500; ++n) {
    const Quat a = rng.quat(), b = rng.quat();
    EXPECT_LE(max_abs((a * b).conjugate() - b.conjugate() * a.conjugate()), 1e-15);
    const DualQuat x = rng.dual_quat(), y = rng.dual_quat();
    EXPECT_LE(max_abs((x * y).conjugate() - y.conjugate() * x.conjugate()), 1e-15);
  }
}

TEST(DualQuatInv, ProductIsIdentity) {
  Rng rng(11);
  for (int n = 0; n < 100; ++n) {
    const DualQuat c = rng.dual_quat();
    EXPECT_LE(max_abs(c * inverse(c) - DualQuat::identity()), 1e-11);
  }
}

TEST(StudyValue, Examples) {
  EXPECT_EQ(study_value(DualQuat::identity()), 0.0);
  EXPECT_EQ(study_value(translation(Vec3(3.0, 0.0, 0.0))), 0.0);
  EXPECT_EQ(study_value(DualQuat{Quat(1.0), Quat(1.0)}), 2.0);
}

TEST(StudyValue, RandomPosesLieOnQuadric) {
  Rng rng(12);
  for (int n = 0; n < 100; ++n) {
    const DualQuat c = rng.pose();
    EXPECT_TRUE(on_study_quadric(c));
    // Scalar dual part of c c* is the study value.
    EXPECT_NEAR((c * c.conjugate()).dual.w, study_value(c), 1e-14);
  }
}

TEST(StudyBilinear, Polarization) {
  Rng rng(13);
  for (int n = 0; n < 100; ++n) {
    const DualQuat c = rng.dual_quat(), d = rng.dual_quat();
    EXPECT_NEAR(study_bilinear(c, c), study_value(c), 1e-14);
    EXPECT_EQ(study_bilinear(c, d), study_bilinear(d, c));
    EXPECT_NEAR(study_bilinear(DualQuat::identity(), c), c.dual.w, 1e-15);
    // B(c, d) = ½ (S(c + d) − S(c) − S(d))
    EXPECT_NEAR(study_bilinear(c, d), 0.5 * (study_value(c + d) - study_value(c) - study_value(d)), 1e-13);
  }
}

TEST(ProjectOrigin, Examples) {
  const Vec3 x(1.5, -0.25, 2.0);
  EXPECT_EQ(project_origin(translation(x)), x);
  Rng rng(14);
  for (int n = 0; n < 20; ++n) EXPECT_LE(project_origin(rotation(rng.quat())).norm(), 1e-15);
}

TEST(ProjectOrigin, AgreesWithPointAction) {
  Rng rng(15);
  for (int n = 0; n < 200; ++n) {
    const DualQuat c = rng.pose();
    EXPECT_LE((project_origin(c) - act_on_point(c, Vec3::Zero())).norm(), 1e-12);
    EXPECT_LE((project_origin(c) - oracle_point_image(c, Vec3::Zero())).norm(), 1e-12);
  }
}

TEST(ProjectOrigin, RejectsOffQuadric) {
  try {
    project_origin(DualQuat{Quat(1.0), Quat(1.0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOnStudyQuadric);
  }
}

TEST(ActOnPoint, Examples) {
  const Vec3 y = act_on_point(DualQuat(Quat::i()), Vec3(0.0, 1.0, 0.0));
  EXPECT_LE((y - Vec3(0.0, -1.0, 0.0)).norm(), 1e-15);
  Rng rng(16);
  for (int n = 0; n < 20; ++n) {
    const Vec3 x = rng.point();
    EXPECT_EQ(act_on_point(DualQuat::identity(), x), x);
  }
}

TEST(ActOnPoint, IsometryAndOracle) {
  Rng rng(17);
  for (int n = 0; n < 500; ++n) {
    const DualQuat c = rng.pose();
    const Vec3 x = rng.point(), y = rng.point();
    const Vec3 cx = act_on_point(c, x), cy = act_on_point(c, y);
    EXPECT_NEAR((cx - cy).norm(), (x - y).norm(), 1e-10);
    EXPECT_LE((cx - oracle_point_image(c, x)).norm(), 1e-12);
  }
}

TEST(ActOnPoint, CompositionAppliesRightFactorFirst) {
  Rng rng(18);
  for (int n = 0; n < 100; ++n) {
    const DualQuat a = rng.pose(), b = rng.pose();
    const Vec3 x = rng.point();
    EXPECT_LE((act_on_point(a * b, x) - act_on_point(a, act_on_point(b, x))).norm(), 1e-12);
  }
}

TEST(Projective, DistanceIgnoresScaleAndSign) {
  Rng rng(19);
  for (int n = 0; n < 100; ++n) {
    const DualQuat c = rng.dual_quat();
    const double s = rng.uniform(-3.0, 3.0);
    EXPECT_LE(projective_distance(c, c * s), 1e-15);
  }
}

TEST(Projective, DistanceMatchesOracle) {
  Rng rng(20);
  for (int n = 0; n < 200; ++n) {
    const DualQuat a = rng.dual_quat(), b = rng.dual_quat();
    EXPECT_NEAR(projective_distance(a, b), oracle_projective_gap(a, b), 1e-15);
  }
}

TEST(Convention, HalfNegativeRoundTrip) {
  Rng rng(21);
  const DualQuat c = rng.pose();
  const DualQuat ext = export_dual(c, DualConvention::HalfNegative);
  EXPECT_EQ(ext.primal, c.primal);
  EXPECT_EQ(ext.dual, c.dual * -0.5);
  EXPECT_EQ(import_dual(ext, DualConvention::HalfNegative), c);
  EXPECT_EQ(export_dual(c, DualConvention::Plain), c);
}
