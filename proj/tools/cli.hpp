// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"

namespace vv::cli {

inline constexpr const char* kVersion = "1.0.0";

enum Exit : int { kOk = 0, kFail = 1, kUsage = 2, kInconclusive = 3 };

// Every knob a command can read. Defaults live here and only here.
struct RunConfig {
  std::string command;
  std::string dict;
  std::string source;
  std::string codebook;
  std::string in;
  std::string out;
  std::string format = "json";
  std::size_t depth = 64;
  std::uint64_t width = 64;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::size_t n = 1;            // truncate depth
  std::uint64_t phrases = 100000;
  std::size_t size = 16;        // Tunstall target
  std::size_t m_max = 12;
  std::string word;             // extend / verify --identity extension
  std::string beta;             // cone
  std::string mode = "huffman";
  std::string identity = "conservation";
  unsigned threads = 0;
  bool bits = false;
  bool histogram = false;
  bool certify_failure = false;
};

nlohmann::json to_json(const RunConfig& c);
// Throws InputError on unknown fields or bad types.
RunConfig config_from_json(const nlohmann::json& j);

nlohmann::json version_json();

/// Dispatches one command. Reports go to `out` unless config.out names a
/// file; single-line diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace vv::cli
