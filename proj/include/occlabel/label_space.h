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

#ifndef OCCLABEL_LABEL_SPACE_H_
#define OCCLABEL_LABEL_SPACE_H_

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace occlabel {

inline constexpr int kNumClasses = 18;
inline constexpr uint8_t kEmptyClass = 17;

// Occ3D-nuScenes class indices.
enum OccClass : uint8_t {
  kOthers = 0,
  kBarrier = 1,
  kBicycle = 2,
  kBus = 3,
  kCar = 4,
  kConstructionVehicle = 5,
  kMotorcycle = 6,
  kPedestrian = 7,
  kTrafficCone = 8,
  kTrailer = 9,
  kTruck = 10,
  kDriveableSurface = 11,
  kOtherFlat = 12,
  kSidewalk = 13,
  kTerrain = 14,
  kManmade = 15,
  kVegetation = 16,
  kFree = 17,
};

using ClassSet = std::bitset<kNumClasses>;

class LabelSpace {
 public:
  // Occ3D names; dynamic set = vehicle and pedestrian classes.
  LabelSpace();
  // Throws InvariantError if `dynamic` contains the empty class.
  explicit LabelSpace(ClassSet dynamic);

  static ClassSet DefaultDynamicSet();

  const std::array<std::string, kNumClasses>& names() const { return names_; }
  const std::string& name(int c) const { return names_.at(c); }
  uint8_t empty_index() const { return kEmptyClass; }
  const ClassSet& dynamic_set() const { return dynamic_; }
  bool IsDynamic(uint8_t label) const {
    return label < kNumClasses && dynamic_.test(label);
  }

  // Accepts a class name or a decimal index.
  std::optional<uint8_t> Lookup(std::string_view name_or_index) const;

 private:
  std::array<std::string, kNumClasses> names_;
  ClassSet dynamic_;
};

// The 15 classes that appear as columns in Occ3D result tables (all but
// "others", "other_flat" and "free").
ClassSet TableClassSet();

}  // namespace occlabel

#endif  // OCCLABEL_LABEL_SPACE_H_
