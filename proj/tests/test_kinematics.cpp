#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kresling/errors.hpp"
#include "kresling/kinematics.hpp"
#include "kresling/units.hpp"
#include "oracles.hpp"

using namespace kresling;
using units::deg;
using units::rad;

namespace {

const ModulePattern kIA(18.0, 18.0, 27.6, 45.0);
const ModulePattern kIB(20.0, 40.0, 44.7, 53.0);

}  // namespace

TEST(Rotation, UnfoldClosedForm) {
  EXPECT_DOUBLE_EQ(unfold_rotation(rad(90.0), 2.0), 2.0 * std::asin(std::cos(rad(90.0))));
  EXPECT_NEAR(deg(unfold_rotation(rad(90.0), 1.3)), 0.0, 1e-12);
  EXPECT_NEAR(deg(unfold_rotation(rad(45.0), 1.0)), 41.41, 0.01);
  EXPECT_NEAR(deg(unfold_rotation(rad(53.0), 2.0)), 73.99, 0.01 + 1e-12);
}

TEST(Rotation, UnfoldMatchesVertexConstruction) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double r = 0.2 + 1.8 * u(rng);
    const double delta = rad(5.0 + 80.0 * u(rng));
    const double oracle = oracle::construct_rest_rotation(10.0, 10.0 * r, 6, delta);
    EXPECT_NEAR(unfold_rotation(delta, r), oracle, 1e-9) << "r = " << r << ", delta = " << deg(delta);
  }
  EXPECT_NEAR(oracle::construct_rest_rotation(18, 18, 6, rad(45)), unfold_rotation(rad(45), 1.0), 1e-12);
}

TEST(Rotation, FoldingRotation) {
  EXPECT_NEAR(deg(folding_rotation(rad(90.0), 2.0)), 180.0, 1e-12);
  EXPECT_NEAR(deg(folding_rotation(rad(45.0), 1.0)), 18.59, 0.01);
  EXPECT_NEAR(deg(folding_rotation(rad(53.0), 2.0)), 106.0, 0.01);
}

TEST(Rotation, MaxRotation) {
  EXPECT_EQ(deg(max_rotation(2.0)), 180.0);
  EXPECT_NEAR(deg(max_rotation(1.0)), 60.0, 1e-12);
  EXPECT_THROW(max_rotation(2.5), DomainError);
  EXPECT_THROW(max_rotation(0.0), DomainError);
}

TEST(Rotation, DecompositionIdentity) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double delta = rad(1.0 + 89.0 * u(rng));
    const double r = 0.01 + 1.99 * u(rng);
    EXPECT_NEAR(unfold_rotation(delta, r) + folding_rotation(delta, r), max_rotation(r), 1e-12);
  }
}

TEST(Rotation, DomainChecks) {
  EXPECT_THROW(unfold_rotation(0.0, 1.0), DomainError);
  EXPECT_THROW(unfold_rotation(rad(91.0), 1.0), DomainError);
  EXPECT_THROW(unfold_rotation(rad(45.0), 3.0), DomainError);
  EXPECT_THROW(skeleton_max_rotation(1.0, -0.1, rad(45.0)), DomainError);
}

TEST(Skeleton, ReducesToMaxWithoutSkeleton) {
  for (double r : {0.5, 1.0, 2.0}) {
    EXPECT_DOUBLE_EQ(skeleton_max_rotation(r, 0.0, rad(45.0)), max_rotation(r));
  }
}

TEST(Skeleton, KnownValueAgainstBisection) {
  const double value = skeleton_max_rotation(1.0, 0.05, rad(45.0));
  EXPECT_NEAR(deg(value), 55.3745, 1e-4);
  const double b_eff = 18.0 * (1.0 - 0.05 / std::sin(rad(45.0)));
  EXPECT_NEAR(value, oracle::construct_flat_rotation(18.0, b_eff), 1e-12);
}

TEST(Skeleton, NonIncreasingAndContinuousInK) {
  double last = skeleton_max_rotation(2.0, 0.0, rad(53.0));
  for (int i = 1; i <= 400; ++i) {
    const double now = skeleton_max_rotation(2.0, 0.2 * i / 400.0, rad(53.0));
    EXPECT_LE(now, last);
    EXPECT_LT(last - now, rad(5.0));
    last = now;
  }
}

// At b/a = 2 the arcsin starts from its steepest point, so even a thin
// skeleton removes more than 40 degrees.
TEST(Skeleton, ThinSkeletonAtFullRatio) {
  const double ts = skeleton_max_rotation(2.0, 0.05, rad(53.0));
  EXPECT_NEAR(deg(ts), 139.237, 1e-3);
  EXPECT_GT(180.0 - deg(ts), 40.0);
}

TEST(Actuator, TypeAssignments) {
  const auto t2 = ActuatorSpec::make(ActuatorType::TypeII, kIA, 8);
  const auto t3 = ActuatorSpec::make(ActuatorType::TypeIII, kIA, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(t2.modules()[i].handedness(), i < 4 ? Handedness::CW : Handedness::CCW);
    EXPECT_EQ(t3.modules()[i].handedness(), i % 2 == 0 ? Handedness::CW : Handedness::CCW);
    // Type III: each module is the mirror of its partner about the midpoint.
    EXPECT_NE(t3.modules()[i].handedness(), t3.modules()[7 - i].handedness());
  }
  EXPECT_TRUE(t2.uniform_geometry());
}

TEST(Actuator, RejectsInvalidCompositions) {
  EXPECT_THROW(ActuatorSpec::make(ActuatorType::TypeII, kIA, 3), ArgumentError);
  EXPECT_THROW(ActuatorSpec({kIA, kIA.with_handedness(Handedness::CCW)}, ActuatorType::TypeI),
               ArgumentError);
  EXPECT_THROW(ActuatorSpec({}, ActuatorType::TypeI), ArgumentError);
  EXPECT_THROW(ActuatorSpec::make(ActuatorType::TypeI, kIA, 2, {-1.0, 0.25}), ArgumentError);
  EXPECT_THROW(ActuatorSpec::make(ActuatorType::TypeI, kIA, 2, {}, -0.1), ArgumentError);
  EXPECT_NO_THROW(ActuatorSpec({kIA, kIA.with_handedness(Handedness::CCW), kIA},
                               ActuatorType::Custom));
}

TEST(Pose, ModuleTransformAtZero) {
  for (auto model : {HeightModel::Exact, HeightModel::Linear}) {
    const auto r = module_transform(kIA, 0.0, model);
    EXPECT_TRUE(r.pose.rotation().isApprox(Eigen::Matrix3d::Identity()));
    EXPECT_NEAR(r.pose.translation().y(), kIA.b(), 1e-12);
    EXPECT_TRUE(r.warnings.empty());
  }
}

TEST(Pose, LinearAtFullFold) {
  const auto r = module_transform(kIA, rad(60.0), HeightModel::Linear);
  EXPECT_NEAR(r.pose.translation().y(), 0.0, 1e-12);
  EXPECT_FALSE(module_transform(kIB, 0.5, HeightModel::Linear).warnings.empty());
}

TEST(Pose, ExactTranslationEqualsHeight) {
  const auto r = module_transform(kIA, rad(41.41), HeightModel::Exact);
  EXPECT_NEAR(r.pose.translation().y(), 12.73, 0.01);
  EXPECT_DOUBLE_EQ(r.pose.translation().y(), height_from_rotation(kIA, rad(41.41)));
  EXPECT_THROW(module_transform(kIA, rad(61.0), HeightModel::Exact), DomainError);
}

TEST(Pose, LinearAndExactHeightsAgreeAtEnds) {
  double gap = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double theta = rad(i);
    const double exact = module_transform(kIA, theta, HeightModel::Exact).pose.translation().y();
    const double linear =
        module_transform(kIA, theta, HeightModel::Linear).pose.translation().y();
    if (i == 0 || i == 60) EXPECT_NEAR(exact, linear, 1e-6);
    gap = std::max(gap, std::abs(exact - linear));
  }
  EXPECT_GT(gap, 0.0);
  EXPECT_LT(gap, kIA.b());
  RecordProperty("max_height_gap_mm", std::to_string(gap));
}

TEST(Pose, GroupProperties) {
  const Pose a(0.3, {0.0, 5.0, 0.0});
  const Pose b(-1.1, {0.0, 7.0, 0.0});
  const Pose c(2.0, {0.0, 1.5, 0.0});
  EXPECT_TRUE(((a * b) * c).matrix().isApprox((a * (b * c)).matrix(), 1e-12));
  EXPECT_TRUE((a * a.inverse()).matrix().isApprox(Eigen::Matrix4d::Identity(), 1e-12));
  const auto m = module_transform(kIB, 1.0, HeightModel::Exact).pose;
  EXPECT_TRUE((m.inverse() * m).matrix().isApprox(Eigen::Matrix4d::Identity(), 1e-12));
}

TEST(Chain, SingleModuleEqualsTransform) {
  const auto spec = ActuatorSpec::make(ActuatorType::TypeI, kIB, 1);
  const std::vector<double> thetas{0.7};
  EXPECT_EQ(chain_pose(spec, thetas, HeightModel::Exact).pose.matrix(),
            module_transform(kIB, 0.7, HeightModel::Exact).pose.matrix());
}

TEST(Chain, TypeIICancelsRotation) {
  const auto spec = ActuatorSpec::make(ActuatorType::TypeII, kIA, 8);
  std::vector<double> thetas;
  for (const auto& m : spec.modules()) thetas.push_back(signed_rotation(m.handedness(), rad(17.0)));
  const auto pose = chain_pose(spec, thetas, HeightModel::Exact).pose;
  EXPECT_NEAR(pose.rotation_angle(), 0.0, 1e-12);
  EXPECT_TRUE(pose.rotation().isApprox(Eigen::Matrix3d::Identity(), 1e-12));
  EXPECT_NEAR(pose.translation().y(), 8.0 * height_from_rotation(kIA, rad(17.0)), 1e-9);
}

TEST(Chain, NetRotationIsAdditive) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ModulePattern> modules;
  std::vector<double> thetas;
  double sum = 0.0;
  for (int i = 0; i < 7; ++i) {
    const auto h = u(rng) < 0.5 ? Handedness::CW : Handedness::CCW;
    modules.push_back(kIB.with_handedness(h));
    thetas.push_back(signed_rotation(h, kIB.max_rotation() * u(rng)));
    sum += thetas.back();
  }
  const ActuatorSpec spec(modules, ActuatorType::Custom);
  const auto pose = chain_pose(spec, thetas, HeightModel::Exact).pose;
  EXPECT_NEAR(pose.rotation_angle(), sum, 1e-12);
  EXPECT_TRUE(pose.rotation().isApprox(rotation_y(sum), 1e-12));
}

TEST(Chain, ComposesWithExtraModule) {
  const auto spec = ActuatorSpec::make(ActuatorType::TypeIII, kIA, 4);
  const std::vector<double> thetas{0.2, -0.3, 0.4, -0.1};
  const auto base = chain_pose(spec, thetas, HeightModel::Exact).pose;
  const auto extra = module_transform(kIA, 0.5, HeightModel::Exact).pose;
  const auto edges = chain_edge_poses(spec, thetas, HeightModel::Exact);
  ASSERT_EQ(edges.size(), 5u);
  EXPECT_TRUE(edges.back().matrix().isApprox(base.matrix(), 1e-12));
  EXPECT_TRUE(((base * extra) * extra.inverse()).matrix().isApprox(base.matrix(), 1e-12));
  EXPECT_THROW(chain_pose(spec, std::vector<double>{0.1}, HeightModel::Exact), ArgumentError);
}

TEST(Chain, TypeIFullFoldOfIB) {
  const auto spec = ActuatorSpec::make(ActuatorType::TypeI, kIB, 4);
  std::vector<double> rest(4, kIB.rest_rotation()), folded(4, kIB.max_rotation());
  const double gain = chain_pose(spec, folded, HeightModel::Exact).pose.rotation_angle() -
                      chain_pose(spec, rest, HeightModel::Exact).pose.rotation_angle();
  EXPECT_NEAR(deg(gain), 4.0 * deg(folding_rotation(rad(53.0), 2.0)), 1e-9);
  EXPECT_LT(std::abs(435.0 - deg(gain)) / 435.0, 0.03);
}

TEST(Sweep, GridMatchesScalars) {
  const std::vector<double> deltas{rad(30.0), rad(45.0), rad(53.0), rad(70.0)};
  const std::vector<double> ratios{0.5, 1.0, 1.5, 2.0};
  const auto u = parametric_sweep(SweepQuantity::ThetaU, deltas, ratios);
  const auto f = parametric_sweep(SweepQuantity::ThetaF, deltas, ratios);
  const auto m = parametric_sweep(SweepQuantity::ThetaMax, deltas, ratios);
  const auto ts = parametric_sweep(SweepQuantity::ThetaTs, deltas, ratios, 0.02);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    for (std::size_t j = 0; j < ratios.size(); ++j) {
      EXPECT_EQ(u.at(i, j), unfold_rotation(deltas[i], ratios[j]));
      EXPECT_EQ(f.at(i, j), folding_rotation(deltas[i], ratios[j]));
      EXPECT_EQ(m.at(i, j), m.at(0, j));
      EXPECT_EQ(ts.at(i, j), skeleton_max_rotation(ratios[j], 0.02, deltas[i]));
      if (i > 0) EXPECT_LT(u.at(i, j), u.at(i - 1, j));
      if (j > 0) EXPECT_GT(u.at(i, j), u.at(i, j - 1));
    }
  }
}

TEST(Sweep, OutOfDomainIsMissing) {
  const std::vector<double> deltas{rad(45.0)};
  const std::vector<double> ratios{1.0, 2.5};
  const auto g = parametric_sweep(SweepQuantity::ThetaU, deltas, ratios);
  EXPECT_FALSE(std::isnan(g.at(0, 0)));
  EXPECT_TRUE(std::isnan(g.at(0, 1)));
  EXPECT_THROW(parametric_sweep(SweepQuantity::ThetaU, {}, ratios), ArgumentError);
}
