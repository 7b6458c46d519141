#pragma once

#include "bdpgo/core/types.hpp"

namespace bdpgo {

Mat3 skew(const Vec3& v);
/// Inverse of skew() applied to the skew-symmetric part of `m`.
Vec3 vee(const Mat3& m);
/// Rodrigues formula.
Mat3 exp_so3(const Vec3& omega);
Vec3 log_so3(const Mat3& r);
Mat3 rot_z(double theta);

/// Nearest rotation in Frobenius norm (SVD with determinant correction).
/// Throws DegenerateError when the smallest singular value is below 1e-12.
Mat3 project_to_so3(const Mat3& m);

bool is_rotation(const Mat3& r, double tol = 1e-9);

struct RelativePose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
};

/// a * b for rigid transforms in (R, t) form.
RelativePose compose(const RelativePose& a, const RelativePose& b);
RelativePose inverse(const RelativePose& a);

}  // namespace bdpgo
