// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "vvcode/codec.hpp"
#include "vvcode/dict_algebra.hpp"
#include "vvcode/measures.hpp"
#include "vvcode/simulation.hpp"

namespace vv::io {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

json read_json_file(const std::filesystem::path& path);

json to_json(const Word& w);
Word word_from_json(const json& j);

// {"kind":"finite","probs":[...]} or {"kind":"geometric","p":...}.
// Probabilities may be numbers or decimal strings; a finite table is
// re-normalized when its total is within 1e-9 of 1 and rejected otherwise.
SourceModel source_from_json(const json& j);
json to_json(const SourceModel& s);

// {"kind":"finite","alphabet_size":k,"words":[[...],...]}
// {"kind":"lazy","family":"run_length"|"head_extension"|"alphabet", ...}
// {"kind":"extended","base":{...},"words":[[...],...]}
// {"kind":"truncated","base":{...},"n":n}
// "alphabet_size" may be null or "countable". Lazy families default to
// binary (run_length) or countable (head_extension, alphabet).
DictionaryPtr dictionary_from_json(const json& j);
json to_json(const Dictionary& d);  // throws UnsupportedOperation for custom

json to_json(const FrontierSets& f);
json to_json(const AscVerdict& v);
json to_json(const Interval& i);
json to_json(const DictionaryMeasures& m);
json to_json(const MeasureReport& r);
json to_json(const std::vector<TruncationRow>& rows);
json to_json(const ScanResult& s);
json to_json(const ExtensionCheck& c);

// Flat CSV, one row per dictionary x source x depth. Columns:
// dictionary,source,depth,width,h_d_low,h_d_high,lbar_low,lbar_high,h_p,
// residual,slack,frontier_mass,asc_status,verdict
std::string measure_csv_header();
std::string measure_csv_row(const MeasureReport& r, const std::string& dictionary,
                            const std::string& source);

PhraseCodebook codebook_from_json(const json& j);
json to_json(const PhraseCodebook& cb);

json to_json(const SimReport& r);
std::string sim_csv_header();
std::string sim_csv_row(const SimReport& r);
json to_json(const PhraseHistogram& h);
// word,count,probability with words in dot-separated index notation.
std::string histogram_csv(const PhraseHistogram& h);

// Whitespace-separated decimal symbol indices.
std::vector<Symbol> read_symbol_text(std::istream& in);
void write_symbol_text(std::ostream& out, const std::vector<Symbol>& symbols);

// Raw bit files: each byte carries 8 binary symbols, MSB first.
std::vector<Symbol> bytes_to_bits(const std::vector<std::uint8_t>& bytes);
// Throws InputError unless every symbol is 0/1 and the count is a
// multiple of 8.
std::vector<std::uint8_t> bits_to_bytes(const std::vector<Symbol>& bits);

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes);

// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

}  // namespace vv::io
