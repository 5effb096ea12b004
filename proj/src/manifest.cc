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

#include "anonrec/manifest.h"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "anonrec/error.h"
#include "anonrec/io.h"
#include "json.hpp"

namespace anonrec {

std::string RunManifest::ToJson() const {
  nlohmann::ordered_json j;
  j["tool"] = "anonrec";
  j["version"] = kVersion;
  j["command"] = command;
  j["arguments"] = arguments;
  j["config"] = config;
  j["seeds"] = seeds;
  j["dataset_checksum"] = dataset_checksum;
  j["timestamps"] = {{"started_at", started_at}, {"finished_at", finished_at}};
  return j.dump(2) + "\n";
}

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string FileChecksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return Hex64(Fnv1a64(ss.str()));
}

std::filesystem::path WriteManifestBeside(const std::filesystem::path& output,
                                          const RunManifest& manifest) {
  std::filesystem::path path = output;
  path += ".manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << manifest.ToJson();
  return path;
}

}  // namespace anonrec
