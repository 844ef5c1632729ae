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

// Suite directories: one .ejsp file per instance plus manifest.json with a
// SHA-256 digest of every file.

#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ejsp/core.hpp"
#include "ejsp/io.hpp"
#include "ejsp/parallel.hpp"
#include "ejsp/variants.hpp"

namespace ejsp {

namespace fs = std::filesystem;

inline constexpr std::string_view kManifestName = "manifest.json";

inline std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw std::runtime_error("sha256: digest computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xF];
  }
  return hex;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

struct ManifestEntry {
  std::string file;
  std::int64_t index = 0;
  std::string variant;
  std::string sha256;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct SuiteManifest {
  std::string suite_id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<ManifestEntry> entries;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["suite_id"] = suite_id;
    j["generator_version"] = std::string(kGeneratorVersion);
    j["params"] = params;
    auto& arr = j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries)
      arr.push_back({{"file", e.file}, {"index", e.index}, {"variant", e.variant}, {"sha256", e.sha256}});
    return j;
  }

  static SuiteManifest from_json(const nlohmann::ordered_json& j) {
    SuiteManifest m;
    m.suite_id = j.at("suite_id").get<std::string>();
    m.params = j.at("params");
    for (const auto& e : j.at("entries"))
      m.entries.push_back({e.at("file").get<std::string>(), e.at("index").get<std::int64_t>(),
                           e.at("variant").get<std::string>(), e.at("sha256").get<std::string>()});
    return m;
  }
};

inline nlohmann::ordered_json params_to_json(const InstanceParams& p) {
  return {{"count", p.count},
          {"jobs", p.jobs},
          {"machines", p.machines},
          {"tasks", p.tasks_per_job},
          {"speeds", p.speeds},
          {"dist", dist_to_json(p.dist)},
          {"rrdd", std::string(to_string(p.rrdd))},
          {"seed", p.seed},
          {"base_range", {p.base_time_range.first, p.base_time_range.second}}};
}

/// inst_{index:04}_{variant}.ejsp
inline std::string instance_file_name(const Instance& inst) {
  char idx[32];
  std::snprintf(idx, sizeof idx, "%04lld", static_cast<long long>(inst.metadata.index));
  return "inst_" + std::string(idx) + "_" + variant_tag(inst.metadata) + ".ejsp";
}

/// Writes every instance and the manifest into `dir` (created if needed).
/// Manifest entries follow the input order whatever the thread count.
inline SuiteManifest write_suite(const std::vector<Instance>& instances, const fs::path& dir,
                                 std::string suite_id = "suite",
                                 nlohmann::ordered_json params = nlohmann::ordered_json::object(),
                                 unsigned threads = 1, bool also_json = false) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir.string() + ": " + ec.message());

  SuiteManifest manifest;
  manifest.suite_id = std::move(suite_id);
  manifest.params = std::move(params);
  manifest.entries.resize(instances.size());
  std::set<std::string> names;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto& e = manifest.entries[i];
    e.file = instance_file_name(instances[i]);
    e.index = instances[i].metadata.index;
    e.variant = variant_tag(instances[i].metadata);
    if (!names.insert(e.file).second)
      throw std::invalid_argument("write_suite: duplicate file name " + e.file);
  }
  parallel_for(instances.size(), threads, [&](std::size_t i) {
    const std::string bytes = write_instance(instances[i]);
    manifest.entries[i].sha256 = sha256_hex(bytes);
    write_file(dir / manifest.entries[i].file, bytes);
    if (also_json) {
      auto json_name = fs::path(manifest.entries[i].file).replace_extension(".json");
      write_file(dir / json_name, instance_to_json(instances[i]).dump(1) + "\n");
    }
  });
  write_file(dir / kManifestName, manifest.to_json().dump(2) + "\n");
  return manifest;
}

inline SuiteManifest read_manifest(const fs::path& dir) {
  const auto path = dir / kManifestName;
  try {
    return SuiteManifest::from_json(nlohmann::ordered_json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

/// Digest mismatches and missing files, one line each.
inline std::vector<std::string> verify_manifest(const fs::path& dir) {
  std::vector<std::string> out;
  const auto manifest = read_manifest(dir);
  for (const auto& e : manifest.entries) {
    const auto path = dir / e.file;
    if (!fs::exists(path)) {
      out.push_back(path.string() + ": listed in manifest but missing");
      continue;
    }
    if (sha256_hex(read_file(path)) != e.sha256) out.push_back(path.string() + ": digest mismatch");
  }
  return out;
}

/// .ejsp files under `path` (a file or a directory), sorted by name.
inline std::vector<fs::path> list_instance_files(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".ejsp") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  } else if (fs::exists(path)) {
    files.push_back(path);
  } else {
    throw std::runtime_error(path.string() + ": no such file or directory");
  }
  return files;
}

inline Instance load_instance(const fs::path& path) {
  try {
    return read_instance(read_file(path));
  } catch (const ParseError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace ejsp
