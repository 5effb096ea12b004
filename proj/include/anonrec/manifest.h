// Copyright 2026 The anonrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANONREC_MANIFEST_H_
#define ANONREC_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace anonrec {

inline constexpr char kVersion[] = "1.0.0";

// Everything needed to re-run a command bit-identically. Wall-clock fields
// sit under "timestamps" so the rest of the document is reproducible.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::map<std::string, std::string> config;
  std::vector<std::uint64_t> seeds;
  std::string dataset_checksum;  // fnv1a-64 of the input file bytes
  std::string started_at;        // ISO-8601 UTC
  std::string finished_at;

  std::string ToJson() const;
};

std::string UtcNow();

// Hex FNV-1a 64 of a file's bytes; throws IoError.
std::string FileChecksum(const std::filesystem::path& path);

// Writes <output>.manifest.json next to `output`.
std::filesystem::path WriteManifestBeside(const std::filesystem::path& output,
                                          const RunManifest& manifest);

}  // namespace anonrec

#endif  // ANONREC_MANIFEST_H_
