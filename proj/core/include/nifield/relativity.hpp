#pragma once

#include <Eigen/Core>

#include "nifield/constants.hpp"

namespace nifield {

/// Spacetime point in one inertial frame.
struct Event {
  double t = 0.0;
  Vec3 x = Vec3::Zero();
};

/// Contravariant four-vector (v^0, v^1, v^2, v^3). Metric signature (+,-,-,-).
struct FourVector {
  double v0 = 0.0;
  Vec3 v = Vec3::Zero();

  Eigen::Vector4d components() const { return {v0, v.x(), v.y(), v.z()}; }
  static FourVector from(const Eigen::Vector4d& c) { return {c[0], c.tail<3>()}; }

  double minkowski_square() const { return v0 * v0 - v.squaredNorm(); }

  FourVector operator+(const FourVector& o) const { return {v0 + o.v0, v + o.v}; }
  FourVector operator-(const FourVector& o) const { return {v0 - o.v0, v - o.v}; }
  FourVector operator*(double s) const { return {v0 * s, v * s}; }
  FourVector& operator+=(const FourVector& o) {
    v0 += o.v0;
    v += o.v;
    return *this;
  }
};

inline FourVector operator*(double s, const FourVector& u) { return u * s; }

/// Contravariant F^{mu nu}. Row/column 0 is time. F^{i0} = E_i and
/// F^{ij} = -eps_{ijk} B_k, i.e. F^{12} = -B_z, F^{13} = B_y, F^{23} = -B_x.
struct FieldTensor {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();

  Vec3 electric() const { return {m(1, 0), m(2, 0), m(3, 0)}; }
  Vec3 magnetic() const { return {-m(2, 3), m(1, 3), -m(1, 2)}; }
};

/// Diagonal Minkowski metric diag(1, -1, -1, -1).
const Eigen::Matrix4d& minkowski_metric();

/// Lorentz matrix mapping components measured in a frame S' to a frame S in
/// which S' moves with velocity v. The same matrix is used for events,
/// four-vectors and (on both indices) the field tensor, so e.g. the rest
/// potential (phi', 0) of a source moving with v becomes gamma*(phi', phi' v/c).
/// Throws Error{Superluminal} for |v| >= c.
Eigen::Matrix4d boost_matrix(const Vec3& v, double c);

FourVector four_velocity(const Vec3& v, double c);

Event boost_event(const Event& ev, const Vec3& v, double c);

FourVector boost_four_vector(const FourVector& u, const Vec3& v, double c);

FieldTensor assemble_field_tensor(const Vec3& E, const Vec3& B);

FieldTensor boost_field_tensor(const FieldTensor& F, const Vec3& v, double c);

/// The two Lorentz invariants of an antisymmetric tensor.
///
/// first  = F_{mu nu} F^{mu nu}                 = 2 (|B|^2 - |E|^2)
/// second = eps^{mu nu alpha beta} F_{mu nu} F_{alpha beta}, eps^{0123} = +1,
///          which evaluates to -8 E.B.
struct TensorInvariants {
  double first = 0.0;
  double second = 0.0;
};

TensorInvariants tensor_invariants(const FieldTensor& F);

/// f^mu = Q F^{mu nu} u_nu.
FourVector four_force(double charge, const FieldTensor& F, const FourVector& u);

}  // namespace nifield
