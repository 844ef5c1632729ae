// Copyright 2026 The ejsp Authors
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

// Derived instances: date relaxation and speed-column projection.
//
// Derivations never recompute times or energies; they only drop columns or
// dates. The metadata keeps the parent's record and stores the derivation
// in canonical form (one composed projection over the generated grid plus a
// relaxed flag), so equal payloads reached in different orders compare equal.

#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ejsp/core.hpp"
#include "ejsp/generator.hpp"

namespace ejsp {

inline Instance relax_dates(const Instance& inst) {
  Instance out = inst;
  for (auto& job : out.jobs)
    for (auto& t : job) {
      t.release = 0;
      t.due.reset();
    }
  out.metadata.relaxed = true;
  return out;
}

/// Keeps the speed columns in `subset` (strictly increasing, 0-based).
inline Instance project_speeds(const Instance& inst, const std::vector<std::int64_t>& subset) {
  const auto speeds = static_cast<std::int64_t>(inst.speed_count());
  if (subset.empty()) throw std::invalid_argument("project_speeds: empty subset");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= speeds)
      throw std::invalid_argument("project_speeds: speed index " + std::to_string(subset[i]) +
                                  " out of range for " + std::to_string(speeds) + " speeds");
    if (i > 0 && subset[i] <= subset[i - 1])
      throw std::invalid_argument("project_speeds: indices must be strictly increasing without duplicates");
  }
  auto pick = [&](const auto& column) {
    std::remove_cvref_t<decltype(column)> kept;
    kept.reserve(subset.size());
    for (auto s : subset) kept.push_back(column[static_cast<std::size_t>(s)]);
    return kept;
  };

  Instance out = inst;
  out.speed_multipliers.multipliers = pick(inst.speed_multipliers.multipliers);
  for (auto& job : out.jobs)
    for (auto& t : job) {
      t.times = pick(t.times);
      t.energies = pick(t.energies);
    }

  auto& meta = out.metadata;
  std::vector<std::int64_t> current = meta.projection;
  if (current.empty()) {
    current.resize(static_cast<std::size_t>(speeds));
    std::iota(current.begin(), current.end(), std::int64_t{0});
  }
  meta.projection = pick(current);
  if (static_cast<std::int64_t>(meta.projection.size()) == meta.source_speeds) meta.projection.clear();
  return out;
}

/// [original, speeds {1st, 3rd, 5th}, speed {3rd}] of a five-speed instance.
inline std::vector<Instance> paper_variants(const Instance& inst) {
  if (inst.speed_count() != 5)
    throw std::invalid_argument("paper_variants: instance must have exactly 5 speeds, has " +
                                std::to_string(inst.speed_count()));
  return {inst, project_speeds(inst, {0, 2, 4}), project_speeds(inst, {2})};
}

/// File-name tag: "orig", "relax", "s0_2_4", "s2-relax", ...
inline std::string variant_tag(const InstanceMetadata& meta) {
  std::string tag;
  if (!meta.projection.empty()) {
    tag += 's';
    for (std::size_t i = 0; i < meta.projection.size(); ++i) {
      if (i) tag += '_';
      tag += std::to_string(meta.projection[i]);
    }
  }
  if (meta.relaxed) tag += tag.empty() ? "relax" : "-relax";
  return tag.empty() ? "orig" : tag;
}

inline std::vector<std::int64_t> parse_index_list(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto item = text.substr(pos, comma - pos);
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size())
      throw std::invalid_argument("invalid index list '" + std::string(text) + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

/// Rebuilds an instance from its metadata: regenerate, then replay the
/// recorded derivation.
inline Instance regenerate(const Instance& inst) {
  Instance out = generate_instance(params_from_metadata(inst), inst.metadata.index);
  if (!inst.metadata.projection.empty()) out = project_speeds(out, inst.metadata.projection);
  if (inst.metadata.relaxed) out = relax_dates(out);
  return out;
}

}  // namespace ejsp
