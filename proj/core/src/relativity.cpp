#include "nifield/relativity.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "nifield/errors.hpp"

namespace nifield {

const Eigen::Matrix4d& minkowski_metric() {
  static const Eigen::Matrix4d eta = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return eta;
}

Eigen::Matrix4d boost_matrix(const Vec3& v, double c) {
  const Vec3 beta = v / c;
  const double b2 = beta.squaredNorm();
  if (!(b2 < 1.0)) throw Error(ErrorCode::Superluminal, "boost speed must be below c");
  Eigen::Matrix4d L = Eigen::Matrix4d::Identity();
  if (b2 == 0.0) return L;
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  L(0, 0) = gamma;
  L.block<1, 3>(0, 1) = gamma * beta.transpose();
  L.block<3, 1>(1, 0) = gamma * beta;
  L.block<3, 3>(1, 1) += (gamma - 1.0) / b2 * beta * beta.transpose();
  return L;
}

FourVector four_velocity(const Vec3& v, double c) {
  const double b2 = v.squaredNorm() / (c * c);
  if (!(b2 < 1.0)) throw Error(ErrorCode::Superluminal, "velocity must be below c");
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  return {gamma * c, gamma * v};
}

Event boost_event(const Event& ev, const Vec3& v, double c) {
  const Eigen::Vector4d x(c * ev.t, ev.x.x(), ev.x.y(), ev.x.z());
  const Eigen::Vector4d y = boost_matrix(v, c) * x;
  return {y[0] / c, y.tail<3>()};
}

FourVector boost_four_vector(const FourVector& u, const Vec3& v, double c) {
  return FourVector::from(boost_matrix(v, c) * u.components());
}

FieldTensor assemble_field_tensor(const Vec3& E, const Vec3& B) {
  FieldTensor F;
  auto& m = F.m;
  for (int i = 0; i < 3; ++i) {
    m(i + 1, 0) = E[i];
    m(0, i + 1) = -E[i];
  }
  m(1, 2) = -B.z();
  m(2, 1) = B.z();
  m(1, 3) = B.y();
  m(3, 1) = -B.y();
  m(2, 3) = -B.x();
  m(3, 2) = B.x();
  return F;
}

FieldTensor boost_field_tensor(const FieldTensor& F, const Vec3& v, double c) {
  const Eigen::Matrix4d L = boost_matrix(v, c);
  FieldTensor out;
  out.m = L * F.m * L.transpose();
  // Restore exact antisymmetry lost to rounding in the two products.
  out.m = 0.5 * (out.m - out.m.transpose()).eval();
  return out;
}

namespace {

int permutation_sign(std::array<int, 4> p) {
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

}  // namespace

TensorInvariants tensor_invariants(const FieldTensor& F) {
  const Eigen::Matrix4d& eta = minkowski_metric();
  const Eigen::Matrix4d lower = eta * F.m * eta;
  TensorInvariants inv;
  inv.first = (lower.array() * F.m.array()).sum();

  std::array<int, 4> p{0, 1, 2, 3};
  double second = 0.0;
  do {
    second += permutation_sign(p) * lower(p[0], p[1]) * lower(p[2], p[3]);
  } while (std::next_permutation(p.begin(), p.end()));
  inv.second = second;
  return inv;
}

FourVector four_force(double charge, const FieldTensor& F, const FourVector& u) {
  const Eigen::Vector4d u_lower = minkowski_metric() * u.components();
  return FourVector::from(charge * (F.m * u_lower));
}

}  // namespace nifield
