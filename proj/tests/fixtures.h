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

#ifndef SEVPLAN_TESTS_FIXTURES_H_
#define SEVPLAN_TESTS_FIXTURES_H_

#include <cstdint>
#include <string>

#include "sevplan/instance.h"

namespace sevplan::testing {

std::string DataPath(const std::string& file);

// All stations chargeable, unit travel times, flat tariff 0.5, no demand.
Instance HandInstance(int stations, int intervals, int levels = 10);

// Seeded instance within the brute-force oracle's reach: lockers <= 1,
// fleet <= 3, levels <= 5.
Instance OracleInstance(std::uint64_t seed);

// Seeded desk-scale instance for heuristic-versus-exact runs.
Instance DeskInstance(std::uint64_t seed, int stations, int intervals, int demand);

// The four-station, eight-interval illustration fixture.
Instance IllustrationInstance();

}  // namespace sevplan::testing

#endif  // SEVPLAN_TESTS_FIXTURES_H_
