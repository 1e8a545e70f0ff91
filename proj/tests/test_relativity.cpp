#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Geometry>

#include "nifield/errors.hpp"
#include "nifield/relativity.hpp"
#include "test_support.hpp"

using namespace nifield;
using fixtures::random_unit;
using fixtures::random_vec;

namespace {

// Textbook transformation of fields measured in S' (moving with v) into S, c = 1:
//   E_par = E'_par,  E_perp = gamma (E' - v x B')_perp
//   B_par = B'_par,  B_perp = gamma (B' + v x E')_perp
std::pair<Vec3, Vec3> oracle_fields(const Vec3& Ep, const Vec3& Bp, const Vec3& v) {
  const double g = 1.0 / std::sqrt(1.0 - v.squaredNorm());
  const Vec3 n = v.normalized();
  const Vec3 E_par = Ep.dot(n) * n, B_par = Bp.dot(n) * n;
  const Vec3 E = E_par + g * (Ep - E_par - v.cross(Bp));
  const Vec3 B = B_par + g * (Bp - B_par + v.cross(Ep));
  return {E, B};
}

Vec3 random_velocity(std::mt19937_64& rng, double max_speed) {
  std::uniform_real_distribution<double> u(0.0, max_speed);
  return u(rng) * random_unit(rng);
}

}  // namespace

TEST(Relativity, BoostAlongXMatchesTextbookMatrix) {
  const Eigen::Matrix4d L = boost_matrix(Vec3(0.6, 0.0, 0.0), 1.0);
  EXPECT_NEAR(L(0, 0), 1.25, 1e-15);
  EXPECT_NEAR(L(0, 1), 0.75, 1e-15);
  EXPECT_NEAR(L(1, 0), 0.75, 1e-15);
  EXPECT_NEAR(L(1, 1), 1.25, 1e-15);
  EXPECT_NEAR(L(2, 2), 1.0, 1e-15);
  EXPECT_NEAR(L(3, 3), 1.0, 1e-15);
  EXPECT_NEAR(L(0, 2), 0.0, 1e-15);
}

TEST(Relativity, ZeroVelocityIsIdentity) {
  EXPECT_TRUE(boost_matrix(Vec3::Zero(), 1.0).isIdentity(0.0));
}

TEST(Relativity, SuperluminalRejected) {
  for (const Vec3& v : {Vec3(1.0, 0.0, 0.0), Vec3(0.8, 0.7, 0.0), Vec3(0.0, 0.0, -3.0)}) {
    try {
      boost_matrix(v, 1.0);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Superluminal);
    }
  }
  EXPECT_THROW(four_velocity(Vec3(2.0, 0.0, 0.0), 2.0), Error);
}

TEST(Relativity, BoostPreservesMetric) {
  std::mt19937_64 rng(11);
  const Eigen::Matrix4d& eta = minkowski_metric();
  for (int i = 0; i < 200; ++i) {
    const double c = i % 2 ? 1.0 : 3.0;
    const Eigen::Matrix4d L = boost_matrix(random_velocity(rng, 0.99 * c), c);
    EXPECT_LT((L.transpose() * eta * L - eta).cwiseAbs().maxCoeff(), 1e-12 * L.squaredNorm());
  }
}

TEST(Relativity, IntervalInvariantUnderEventBoosts) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const double c = i % 2 ? 1.0 : 2.5;
    const Event a{std::uniform_real_distribution<double>(-5.0, 5.0)(rng), random_vec(rng, 5.0)};
    const Vec3 v = random_velocity(rng, 0.95 * c);
    const Event b = boost_event(a, v, c);
    const double s_a = c * c * a.t * a.t - a.x.squaredNorm();
    const double s_b = c * c * b.t * b.t - b.x.squaredNorm();
    EXPECT_NEAR(s_a, s_b, 1e-10 * (c * c * a.t * a.t + a.x.squaredNorm()));
  }
}

TEST(Relativity, OriginOfMovingFrameTravelsWithV) {
  const Vec3 v(0.3, -0.2, 0.5);
  const Event lab = boost_event({2.0, Vec3::Zero()}, v, 1.0);
  EXPECT_LT((lab.x - v * lab.t).norm(), 1e-14);
  EXPECT_NEAR(lab.t, 2.0 / std::sqrt(1.0 - v.squaredNorm()), 1e-14);
}

TEST(Relativity, RoundTripRestoresEvent) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const Event a{std::uniform_real_distribution<double>(-3.0, 3.0)(rng), random_vec(rng, 3.0)};
    const Vec3 v = random_velocity(rng, 0.9);
    const Event back = boost_event(boost_event(a, v, 1.0), -v, 1.0);
    EXPECT_NEAR(back.t, a.t, 1e-12);
    EXPECT_LT((back.x - a.x).norm(), 1e-12);
  }
}

TEST(Relativity, CollinearBoostsComposeByVelocityAddition) {
  const double v1 = 0.5, v2 = 0.7;
  const Eigen::Matrix4d L = boost_matrix(Vec3(v1, 0, 0), 1.0) * boost_matrix(Vec3(v2, 0, 0), 1.0);
  const Eigen::Matrix4d expected = boost_matrix(Vec3((v1 + v2) / (1.0 + v1 * v2), 0, 0), 1.0);
  EXPECT_LT((L - expected).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Relativity, FourVelocityNormIsCSquared) {
  std::mt19937_64 rng(14);
  for (double c : {1.0, 2.0}) {
    for (int i = 0; i < 50; ++i) {
      const FourVector u = four_velocity(random_velocity(rng, 0.99 * c), c);
      EXPECT_NEAR(u.minkowski_square(), c * c, 1e-9 * c * c);
    }
  }
  const FourVector rest = four_velocity(Vec3::Zero(), 1.0);
  EXPECT_EQ(rest.v0, 1.0);
  EXPECT_EQ(rest.v.norm(), 0.0);
}

TEST(Relativity, RestPotentialBoostsToMovingPotential) {
  // (phi', 0) -> gamma (phi', phi' v)
  const Vec3 v(0.6, 0.0, 0.0);
  const FourVector A = boost_four_vector({2.0, Vec3::Zero()}, v, 1.0);
  EXPECT_NEAR(A.v0, 2.5, 1e-14);
  EXPECT_NEAR(A.v.x(), 1.5, 1e-14);
}

TEST(Relativity, FieldTensorLayout) {
  const Vec3 E(1.0, 2.0, 3.0), B(4.0, 5.0, 6.0);
  const FieldTensor F = assemble_field_tensor(E, B);
  EXPECT_EQ(F.m(1, 0), 1.0);
  EXPECT_EQ(F.m(0, 1), -1.0);
  EXPECT_EQ(F.m(1, 2), -6.0);
  EXPECT_EQ(F.m(1, 3), 5.0);
  EXPECT_EQ(F.m(2, 3), -4.0);
  EXPECT_TRUE((F.m + F.m.transpose()).isZero(0.0));
  EXPECT_EQ(F.electric(), E);
  EXPECT_EQ(F.magnetic(), B);
}

TEST(Relativity, FieldBoostMatchesTextbookFormulas) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 100; ++i) {
    const Vec3 Ep = random_vec(rng, 2.0), Bp = random_vec(rng, 2.0);
    const Vec3 v = random_velocity(rng, 0.9);
    const FieldTensor F = boost_field_tensor(assemble_field_tensor(Ep, Bp), v, 1.0);
    const auto [E, B] = oracle_fields(Ep, Bp, v);
    EXPECT_LT((F.electric() - E).norm(), 1e-12 * (1.0 + E.norm()));
    EXPECT_LT((F.magnetic() - B).norm(), 1e-12 * (1.0 + B.norm()));
  }
}

TEST(Relativity, MovingCoulombFieldHasBEqualVCrossE) {
  const Vec3 v(0.0, 0.8, 0.0);
  const FieldTensor F = boost_field_tensor(assemble_field_tensor(Vec3(0.3, 0.1, -0.2), Vec3::Zero()), v, 1.0);
  EXPECT_LT((F.magnetic() - v.cross(F.electric())).norm(), 1e-14);
}

TEST(Relativity, InvariantsClosedForm) {
  const Vec3 E(1.0, -2.0, 0.5), B(0.3, 0.7, -1.1);
  const TensorInvariants inv = tensor_invariants(assemble_field_tensor(E, B));
  EXPECT_NEAR(inv.first, 2.0 * (B.squaredNorm() - E.squaredNorm()), 1e-13);
  EXPECT_NEAR(inv.second, -8.0 * E.dot(B), 1e-13);

  const TensorInvariants zero = tensor_invariants(FieldTensor{});
  EXPECT_EQ(zero.first, 0.0);
  EXPECT_EQ(zero.second, 0.0);
}

TEST(Relativity, InvariantsSurviveBoosts) {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 200; ++i) {
    const FieldTensor F = assemble_field_tensor(random_vec(rng), random_vec(rng));
    const Vec3 v = random_velocity(rng, 0.9);
    const TensorInvariants a = tensor_invariants(F);
    const TensorInvariants b = tensor_invariants(boost_field_tensor(F, v, 1.0));
    const double scale = F.m.squaredNorm();
    EXPECT_NEAR(a.first, b.first, 1e-11 * scale);
    EXPECT_NEAR(a.second, b.second, 1e-11 * scale);
  }
}

TEST(Relativity, FourForceIsLorentzForce) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const Vec3 E = random_vec(rng), B = random_vec(rng), v = random_velocity(rng, 0.95);
    const double Q = 0.37;
    const double g = 1.0 / std::sqrt(1.0 - v.squaredNorm());
    const FourVector f = four_force(Q, assemble_field_tensor(E, B), four_velocity(v, 1.0));
    EXPECT_NEAR(f.v0, g * Q * E.dot(v), 1e-12);
    EXPECT_LT((f.v - g * Q * (E + v.cross(B))).norm(), 1e-12);
  }
}

TEST(Relativity, FourForceOrthogonalToVelocity) {
  std::mt19937_64 rng(18);
  for (double c : {1.0, 3.0}) {
    for (int i = 0; i < 100; ++i) {
      const FourVector u = four_velocity(random_velocity(rng, 0.9 * c), c);
      const FourVector f = four_force(1.0, assemble_field_tensor(random_vec(rng), random_vec(rng)), u);
      EXPECT_NEAR(f.v0 * u.v0 - f.v.dot(u.v), 0.0, 1e-11 * c * c);
    }
  }
}

TEST(Relativity, ChargeAtRestFeelsElectricForceOnly) {
  const FourVector f = four_force(2.0, assemble_field_tensor(Vec3(0.5, 0, 0), Vec3(0, 0, 7.0)),
                                  four_velocity(Vec3::Zero(), 1.0));
  EXPECT_EQ(f.v0, 0.0);
  EXPECT_NEAR(f.v.x(), 1.0, 1e-15);
  EXPECT_EQ(f.v.y(), 0.0);
}
