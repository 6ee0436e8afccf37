#pragma once

namespace motionforge::tol {

// Relative tolerance for algebraic identities (Study condition, products).
inline constexpr double algebraic = 1e-9;
// Absolute threshold below which a quaternion norm counts as zero.
inline constexpr double singular = 1e-12;
// Relative tolerance for factorization reconstruction (eigenvalue based).
inline constexpr double factorization = 1e-8;
// Default point-fit tolerance used when reporting interpolation residuals.
inline constexpr double fit = 1e-9;
// Pose inputs must satisfy the Study condition to this level after
// max-coordinate normalization.
inline constexpr double pose_input = 1e-8;

}  // namespace motionforge::tol
