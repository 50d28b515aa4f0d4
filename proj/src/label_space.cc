// Copyright 2026 The occlabel Authors. All Rights Reserved.
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

#include "occlabel/label_space.h"

#include <charconv>

#include "occlabel/error.h"

namespace occlabel {

LabelSpace::LabelSpace() : LabelSpace(DefaultDynamicSet()) {}

LabelSpace::LabelSpace(ClassSet dynamic)
    : names_{"others",        "barrier",     "bicycle",
             "bus",           "car",         "construction_vehicle",
             "motorcycle",    "pedestrian",  "traffic_cone",
             "trailer",       "truck",       "driveable_surface",
             "other_flat",    "sidewalk",    "terrain",
             "manmade",       "vegetation",  "empty"},
      dynamic_(dynamic) {
  if (dynamic_.test(kEmptyClass)) {
    throw InvariantError("the empty class cannot be dynamic");
  }
}

ClassSet LabelSpace::DefaultDynamicSet() {
  ClassSet s;
  for (OccClass c : {kBicycle, kBus, kCar, kConstructionVehicle, kMotorcycle,
                     kPedestrian, kTrailer, kTruck}) {
    s.set(c);
  }
  return s;
}

std::optional<uint8_t> LabelSpace::Lookup(std::string_view name_or_index) const {
  for (int c = 0; c < kNumClasses; ++c) {
    if (names_[c] == name_or_index) return static_cast<uint8_t>(c);
  }
  int value = -1;
  const char* end = name_or_index.data() + name_or_index.size();
  auto [ptr, ec] = std::from_chars(name_or_index.data(), end, value);
  if (ec == std::errc() && ptr == end && value >= 0 && value < kNumClasses) {
    return static_cast<uint8_t>(value);
  }
  return std::nullopt;
}

ClassSet TableClassSet() {
  ClassSet s;
  for (int c = 0; c < kNumClasses; ++c) s.set(c);
  s.reset(kOthers);
  s.reset(kOtherFlat);
  s.reset(kFree);
  return s;
}

}  // namespace occlabel
