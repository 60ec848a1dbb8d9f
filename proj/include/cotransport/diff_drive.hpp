// Copyright 2026 The cotransport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "cotransport/types.hpp"

namespace cotransport {

// Below this turn rate the straight-line model replaces the circular arc.
inline constexpr double kStraightLineOmega = 1e-6;

// Advances a differential-drive pose by one step of constant (v, omega)
// using the exact circular-arc solution of the unicycle model.
// Throws std::invalid_argument for non-finite input or dt <= 0.
Pose2D step_pose(const Pose2D& pose, const VelocityCommand& cmd, double dt,
                 double straight_line_omega = kStraightLineOmega);

}  // namespace cotransport
