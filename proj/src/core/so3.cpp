#include "bdpgo/core/so3.hpp"

#include "bdpgo/core/errors.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>

namespace bdpgo {

Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

Vec3 vee(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

Mat3 exp_so3(const Vec3& omega) {
  const double theta2 = omega.squaredNorm();
  const Mat3 k = skew(omega);
  if (theta2 < 1e-16) return Mat3::Identity() + k + 0.5 * k * k;
  const double theta = std::sqrt(theta2);
  return Mat3::Identity() + (std::sin(theta) / theta) * k +
         ((1.0 - std::cos(theta)) / theta2) * k * k;
}

Vec3 log_so3(const Mat3& r) {
  const double c = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  const double theta = std::acos(c);
  if (theta < 1e-8) return vee(r);
  if (M_PI - theta < 1e-6) {
    // Near pi: axis from the symmetric part.
    const Mat3 b = 0.5 * (r + Mat3::Identity());
    int col = 0;
    b.diagonal().maxCoeff(&col);
    Vec3 axis = b.col(col) / std::sqrt(std::max(b(col, col), 1e-300));
    axis.normalize();
    if (vee(r).dot(axis) < 0) axis = -axis;
    return theta * axis;
  }
  return (theta / (2.0 * std::sin(theta))) * Vec3(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0),
                                                  r(1, 0) - r(0, 1));
}

Mat3 rot_z(double theta) {
  Mat3 r = Mat3::Identity();
  r(0, 0) = std::cos(theta);
  r(0, 1) = -std::sin(theta);
  r(1, 0) = std::sin(theta);
  r(1, 1) = std::cos(theta);
  return r;
}

// GCC 11 reports a false maybe-uninitialized inside JacobiSVD at -O2 and above.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wmaybe-uninitialized"
Mat3 project_to_so3(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(2) < 1e-12) {
    throw DegenerateError("cannot project a rank-deficient matrix onto SO(3)");
  }
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  Mat3 d = Mat3::Identity();
  d(2, 2) = (u * v.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  return u * d * v.transpose();
}
#pragma GCC diagnostic pop

bool is_rotation(const Mat3& r, double tol) {
  return (r.transpose() * r - Mat3::Identity()).norm() <= tol &&
         std::abs(r.determinant() - 1.0) <= tol;
}

RelativePose compose(const RelativePose& a, const RelativePose& b) {
  return {a.rotation * b.rotation, a.translation + a.rotation * b.translation};
}

RelativePose inverse(const RelativePose& a) {
  const Mat3 rt = a.rotation.transpose();
  return {rt, -rt * a.translation};
}

}  // namespace bdpgo
