#pragma once

// Umbrella header for the engine (no JSON / HTTP dependencies).

#include "motionforge/bezier.hpp"
#include "motionforge/error.hpp"
#include "motionforge/factor.hpp"
#include "motionforge/interpolate_points.hpp"
#include "motionforge/interpolate_poses.hpp"
#include "motionforge/kinematics.hpp"
#include "motionforge/lagrange.hpp"
#include "motionforge/linalg.hpp"
#include "motionforge/polynomial.hpp"
#include "motionforge/quaternion.hpp"
#include "motionforge/study.hpp"
#include "motionforge/task.hpp"
#include "motionforge/tolerance.hpp"
