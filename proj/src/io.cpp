// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include "vvcode/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "vvcode/errors.hpp"

namespace vv::io {

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

// Infinite values serialize as the string "inf".
json num(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::uint64_t as_uint(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    bad(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

double as_prob(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) bad("bad probability \"" + s + "\"");
    return v;
  }
  bad("probabilities must be numbers or decimal strings");
}

Alphabet alphabet_from_json(const json& j, const char* key, Alphabet fallback) {
  if (!j.contains(key)) return fallback;
  const json& a = j.at(key);
  if (a.is_null() || (a.is_string() && a.get<std::string>() == "countable")) {
    return Alphabet::countable();
  }
  const std::uint64_t k = as_uint(a, key);
  if (k < 1) bad("alphabet_size must be at least 1");
  return Alphabet::finite(k);
}

json alphabet_to_json(const Alphabet& a) {
  if (a.is_finite()) return *a.size();
  return "countable";
}

std::vector<Word> words_from_json(const json& j) {
  if (!j.is_array()) bad("\"words\" must be an array");
  std::vector<Word> out;
  out.reserve(j.size());
  for (const json& w : j) out.push_back(word_from_json(w));
  return out;
}

json words_to_json(const std::vector<Word>& ws) {
  json a = json::array();
  for (const Word& w : ws) a.push_back(to_json(w));
  return a;
}

// RFC 4180 quoting when needed.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json to_json(const Word& w) {
  json a = json::array();
  for (Symbol s : w) a.push_back(s);
  return a;
}

Word word_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return Word::parse(j.get<std::string>());
    } catch (const Error& e) {
      bad(e.what());
    }
  }
  if (!j.is_array()) bad("a word must be an array of symbol indices");
  std::vector<Symbol> s;
  s.reserve(j.size());
  for (const json& x : j) {
    const std::uint64_t v = as_uint(x, "symbol");
    if (v > 0xFFFFFFFFu) bad("symbol index too large");
    s.push_back(static_cast<Symbol>(v));
  }
  return Word(std::move(s));
}

SourceModel source_from_json(const json& j) {
  const std::string kind = field(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
  try {
    if (kind == "finite") {
      const json& ps = field(j, "probs");
      if (!ps.is_array() || ps.empty()) bad("\"probs\" must be a non-empty array");
      std::vector<double> probs;
      CompensatedSum total;
      for (const json& p : ps) {
        probs.push_back(as_prob(p));
        total += probs.back();
      }
      const double t = total.value();
      if (!(std::fabs(t - 1.0) <= 1e-9)) {
        bad("probabilities sum to " + format_double(t) + "; expected 1 within 1e-9");
      }
      for (double& p : probs) p /= t;
      return SourceModel::finite(std::move(probs));
    }
    if (kind == "geometric") return SourceModel::geometric(as_prob(field(j, "p")));
  } catch (const DomainError& e) {
    bad(e.what());
  }
  bad("unknown source kind \"" + kind + "\"");
}

json to_json(const SourceModel& s) {
  const auto& dist = s.distribution();
  if (const auto* f = dynamic_cast<const FiniteDistribution*>(&dist)) {
    return {{"kind", "finite"}, {"probs", f->probs()}};
  }
  if (const auto* g = dynamic_cast<const GeometricDistribution*>(&dist)) {
    return {{"kind", "geometric"}, {"p", g->p()}};
  }
  return {{"kind", s.kind()}};
}

DictionaryPtr dictionary_from_json(const json& j) {
  if (!j.is_object()) bad("a dictionary must be a JSON object");
  std::string kind = j.contains("kind") && j.at("kind").is_string()
                         ? j.at("kind").get<std::string>()
                         : (j.contains("family") ? "lazy" : "");
  if (kind == "finite") {
    const Alphabet a = alphabet_from_json(j, "alphabet_size", Alphabet::finite(2));
    return std::make_shared<FiniteDictionary>(a, words_from_json(field(j, "words")));
  }
  if (kind == "lazy") {
    const json& fam = field(j, "family");
    const std::string family = fam.is_string() ? fam.get<std::string>() : "";
    if (family == "run_length") {
      return std::make_shared<RunLengthDictionary>(
          alphabet_from_json(j, "alphabet_size", Alphabet::finite(2)));
    }
    if (family == "head_extension") {
      const auto head = j.contains("head") ? as_uint(j.at("head"), "head") : 0;
      return std::make_shared<HeadExtensionDictionary>(
          alphabet_from_json(j, "alphabet_size", Alphabet::countable()),
          static_cast<Symbol>(head));
    }
    if (family == "alphabet") {
      return make_alphabet_dictionary(
          alphabet_from_json(j, "alphabet_size", Alphabet::countable()));
    }
    bad("unknown dictionary family \"" + family + "\"");
  }
  if (kind == "extended") {
    DictionaryPtr d = dictionary_from_json(field(j, "base"));
    for (const Word& w : words_from_json(field(j, "words"))) d = extend(d, w);
    return d;
  }
  if (kind == "truncated") {
    const DictionaryPtr base = dictionary_from_json(field(j, "base"));
    return truncated_view(base, as_uint(field(j, "n"), "n"));
  }
  bad("unknown dictionary kind \"" + kind + "\"");
}

json to_json(const Dictionary& d) {
  if (const auto* f = dynamic_cast<const FiniteDictionary*>(&d)) {
    return {{"kind", "finite"},
            {"alphabet_size", alphabet_to_json(d.alphabet())},
            {"words", words_to_json(f->words())}};
  }
  if (dynamic_cast<const RunLengthDictionary*>(&d) != nullptr) {
    return {{"kind", "lazy"}, {"family", "run_length"},
            {"alphabet_size", alphabet_to_json(d.alphabet())}};
  }
  if (const auto* h = dynamic_cast<const HeadExtensionDictionary*>(&d)) {
    return {{"kind", "lazy"}, {"family", "head_extension"}, {"head", h->head()},
            {"alphabet_size", alphabet_to_json(d.alphabet())}};
  }
  if (dynamic_cast<const AlphabetDictionary*>(&d) != nullptr) {
    return {{"kind", "lazy"}, {"family", "alphabet"},
            {"alphabet_size", alphabet_to_json(d.alphabet())}};
  }
  if (const auto* e = dynamic_cast<const ExtendedDictionary*>(&d)) {
    return {{"kind", "extended"}, {"base", to_json(*e->base())},
            {"words", words_to_json(e->extended())}};
  }
  if (const auto* t = dynamic_cast<const TruncatedDictionary*>(&d)) {
    return {{"kind", "truncated"}, {"base", to_json(*t->base())}, {"n", t->depth()}};
  }
  throw UnsupportedOperation("dictionary family \"" + d.family() + "\" has no file format");
}

json to_json(const FrontierSets& f) {
  return {{"n", f.n},
          {"t_n", words_to_json(f.t_n)},
          {"d_n_perp", words_to_json(f.d_n_perp)},
          {"d_n", to_json(*f.d_n)},
          {"exhaustive", f.exhaustive}};
}

json to_json(const AscVerdict& v) {
  return {{"status", to_string(v.status)},
          {"depth_used", v.depth_used},
          {"residual_mass", num(v.residual_mass)},
          {"permanent_mass", num(v.permanent_mass)},
          {"residual_exact", v.residual_exact}};
}

json to_json(const Interval& i) { return {{"low", num(i.low)}, {"high", num(i.high)}}; }

json to_json(const DictionaryMeasures& m) {
  return {{"entropy", to_json(m.entropy)},
          {"avg_length", to_json(m.avg_length)},
          {"frontier_mass", num(m.frontier_mass)},
          {"void_mass", num(m.void_mass)},
          {"gap_mass", num(m.gap_mass)},
          {"frontier_length_lb", num(m.frontier_length_lb)},
          {"frontier_entropy_lb", num(m.frontier_entropy_lb)},
          {"tail", to_string(m.tail)},
          {"depth_used", m.depth_used},
          {"member_count", m.member_count},
          {"possibly_divergent", m.possibly_divergent}};
}

json to_json(const MeasureReport& r) {
  return {{"h_d_low", num(r.h_d.low)},
          {"h_d_high", num(r.h_d.high)},
          {"lbar_low", num(r.lbar.low)},
          {"lbar_high", num(r.lbar.high)},
          {"h_p", num(r.h_p)},
          {"residual", num(r.residual)},
          {"slack", num(r.slack)},
          {"depth_used", r.depth_used},
          {"width_used", r.width_used},
          {"frontier_mass", num(r.frontier_mass)},
          {"verdict", to_string(r.verdict)},
          {"asc", to_json(r.asc)},
          {"tail", to_string(r.tail)},
          {"notes", r.notes}};
}

json to_json(const std::vector<TruncationRow>& rows) {
  json a = json::array();
  for (const TruncationRow& r : rows) {
    a.push_back({{"m", r.m},
                 {"entropy", num(r.entropy)},
                 {"avg_length", num(r.avg_length)},
                 {"residual", num(r.residual)},
                 {"slack", num(r.slack)},
                 {"pass", r.pass}});
  }
  return a;
}

json to_json(const ScanResult& s) {
  json rows = json::array();
  for (const ScanRow& r : s.rows) {
    rows.push_back({{"m", r.m}, {"entropy", to_json(r.entropy)},
                    {"avg_length", to_json(r.avg_length)}});
  }
  return {{"rows", rows},
          {"entropy_nondecreasing", s.entropy_nondecreasing},
          {"length_nondecreasing", s.length_nondecreasing},
          {"limit_entropy", to_json(s.limit_entropy)},
          {"limit_length", to_json(s.limit_length)},
          {"entropy_gap", num(s.entropy_gap)},
          {"length_gap", num(s.length_gap)}};
}

json to_json(const ExtensionCheck& c) {
  return {{"delta_lbar", num(c.delta_lbar)},
          {"expected_delta_lbar", num(c.expected_delta_lbar)},
          {"delta_entropy", num(c.delta_entropy)},
          {"expected_delta_entropy", num(c.expected_delta_entropy)},
          {"lbar_ok", c.lbar_ok},
          {"entropy_ok", c.entropy_ok}};
}

std::string measure_csv_header() {
  return "dictionary,source,depth,width,h_d_low,h_d_high,lbar_low,lbar_high,h_p,"
         "residual,slack,frontier_mass,asc_status,verdict";
}

std::string measure_csv_row(const MeasureReport& r, const std::string& dictionary,
                            const std::string& source) {
  std::ostringstream os;
  os << csv_field(dictionary) << ',' << csv_field(source) << ',' << r.depth_used << ','
     << r.width_used << ',' << format_double(r.h_d.low) << ',' << format_double(r.h_d.high)
     << ',' << format_double(r.lbar.low) << ',' << format_double(r.lbar.high) << ','
     << format_double(r.h_p) << ',' << format_double(r.residual) << ','
     << format_double(r.slack) << ',' << format_double(r.frontier_mass) << ','
     << to_string(r.asc.status) << ',' << to_string(r.verdict);
  return os.str();
}

PhraseCodebook codebook_from_json(const json& j) {
  const json& cws = field(j, "codewords");
  if (!cws.is_array()) bad("\"codewords\" must be an array");
  std::vector<std::string> codes;
  for (const json& c : cws) {
    if (!c.is_string()) bad("codewords must be strings of 0 and 1");
    codes.push_back(c.get<std::string>());
  }
  std::string mode = j.contains("mode") && j.at("mode").is_string()
                         ? j.at("mode").get<std::string>()
                         : "huffman";
  try {
    return PhraseCodebook(words_from_json(field(j, "phrases")), std::move(codes),
                          std::move(mode));
  } catch (const DomainError& e) {
    bad(e.what());
  }
}

json to_json(const PhraseCodebook& cb) {
  return {{"phrases", words_to_json(cb.phrases())},
          {"codewords", cb.codewords()},
          {"mode", cb.mode()}};
}

namespace {

json stats_to_json(const std::vector<PhraseStat>& stats) {
  json a = json::array();
  for (const PhraseStat& s : stats) {
    a.push_back({{"word", to_json(s.word)}, {"count", s.count},
                 {"probability", num(s.prob)}, {"z", num(s.z)}});
  }
  return a;
}

}  // namespace

json to_json(const SimReport& r) {
  return {{"seed", r.seed},
          {"n_phrases", r.n_phrases},
          {"total_symbols", r.total_symbols},
          {"empirical_lbar", num(r.empirical_lbar)},
          {"lbar_stderr", num(r.lbar_stderr)},
          {"empirical_entropy", num(r.empirical_entropy)},
          {"theory_lbar", num(r.theory_lbar)},
          {"theory_hd", num(r.theory_hd)},
          {"z_lbar", num(r.z_lbar)},
          {"entropy_deviation", num(r.entropy_deviation)},
          {"distinct_phrases", r.distinct_phrases},
          {"top_phrases", stats_to_json(r.top_phrases)}};
}

std::string sim_csv_header() {
  return "seed,n_phrases,total_symbols,empirical_lbar,lbar_stderr,empirical_entropy,"
         "theory_lbar,theory_hd,z_lbar,entropy_deviation,distinct_phrases";
}

std::string sim_csv_row(const SimReport& r) {
  std::ostringstream os;
  os << r.seed << ',' << r.n_phrases << ',' << r.total_symbols << ','
     << format_double(r.empirical_lbar) << ',' << format_double(r.lbar_stderr) << ','
     << format_double(r.empirical_entropy) << ',' << format_double(r.theory_lbar) << ','
     << format_double(r.theory_hd) << ',' << format_double(r.z_lbar) << ','
     << format_double(r.entropy_deviation) << ',' << r.distinct_phrases;
  return os.str();
}

json to_json(const PhraseHistogram& h) {
  return {{"seed", h.seed},
          {"n_phrases", h.n_phrases},
          {"entries", stats_to_json(h.entries)},
          {"chi_square", num(h.chi_square)},
          {"dof", h.dof},
          {"p_value", num(h.p_value)}};
}

std::string histogram_csv(const PhraseHistogram& h) {
  std::ostringstream os;
  os << "word,count,probability\n";
  for (const PhraseStat& s : h.entries) {
    os << s.word.to_string() << ',' << s.count << ',' << format_double(s.prob) << '\n';
  }
  return os.str();
}

std::vector<Symbol> read_symbol_text(std::istream& in) {
  std::vector<Symbol> out;
  std::string token;
  while (in >> token) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || v > 0xFFFFFFFFu) {
      bad("bad symbol \"" + token + "\" at position " + std::to_string(out.size()));
    }
    out.push_back(static_cast<Symbol>(v));
  }
  return out;
}

void write_symbol_text(std::ostream& out, const std::vector<Symbol>& symbols) {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i > 0) out << ' ';
    out << symbols[i];
  }
  out << '\n';
}

std::vector<Symbol> bytes_to_bits(const std::vector<std::uint8_t>& bytes) {
  std::vector<Symbol> bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) {
    for (int i = 7; i >= 0; --i) bits.push_back((b >> i) & 1u);
  }
  return bits;
}

std::vector<std::uint8_t> bits_to_bytes(const std::vector<Symbol>& bits) {
  if (bits.size() % 8 != 0) {
    bad("bit stream length " + std::to_string(bits.size()) + " is not a multiple of 8");
  }
  std::vector<std::uint8_t> out(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) bad("symbol " + std::to_string(bits[i]) + " is not a bit");
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_binary_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace vv::io
