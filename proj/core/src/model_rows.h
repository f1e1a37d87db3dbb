// Copyright 2026 The sevplan Authors
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

// Vehicle-side rows shared by the compact model and the restricted master.

#ifndef SEVPLAN_SRC_MODEL_ROWS_H_
#define SEVPLAN_SRC_MODEL_ROWS_H_

#include <vector>

#include "sevplan/compact.h"
#include "sevplan/lp.h"
#include "sevplan/network.h"

namespace sevplan::internal {

struct VehicleRows {
  std::vector<int> conservation;  // node id -> row, -1 if none
  std::vector<int> parking;       // (station - 1) * T + (t - 1) -> row
};

inline bool IsParked(ArcKind kind) {
  return kind == ArcKind::kIdle || kind == ArcKind::kCharge || kind == ArcKind::kSell ||
         kind == ArcKind::kSwap;
}

// Fleet, conservation, demand, rental gate and parking rows over the vehicle
// arcs. Arcs with column -1 are left out.
VehicleRows AddVehicleRows(const StenaNetwork& network, const Instance& instance,
                           RentalGate gate, const std::vector<int>& column,
                           lp::LinearProgram& lp);

}  // namespace sevplan::internal

#endif  // SEVPLAN_SRC_MODEL_ROWS_H_
