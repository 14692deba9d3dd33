// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "vvcode/codec.hpp"
#include "vvcode/dict_algebra.hpp"
#include "vvcode/errors.hpp"
#include "vvcode/io.hpp"
#include "vvcode/measures.hpp"
#include "vvcode/simulation.hpp"

namespace vv::cli {

using nlohmann::json;

json to_json(const RunConfig& c) {
  return {{"command", c.command},   {"dict", c.dict},
          {"source", c.source},     {"codebook", c.codebook},
          {"in", c.in},             {"out", c.out},
          {"format", c.format},     {"depth", c.depth},
          {"width", c.width},       {"tol", c.tol},
          {"seed", c.seed},         {"n", c.n},
          {"phrases", c.phrases},   {"size", c.size},
          {"m_max", c.m_max},       {"word", c.word},
          {"beta", c.beta},         {"mode", c.mode},
          {"identity", c.identity}, {"threads", c.threads},
          {"bits", c.bits},         {"histogram", c.histogram},
          {"certify_failure", c.certify_failure}};
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  RunConfig c;
  const json known = to_json(c);
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw InputError("unknown config field \"" + key + "\"");
  }
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("command", c.command);
    get("dict", c.dict);
    get("source", c.source);
    get("codebook", c.codebook);
    get("in", c.in);
    get("out", c.out);
    get("format", c.format);
    get("depth", c.depth);
    get("width", c.width);
    get("tol", c.tol);
    get("seed", c.seed);
    get("n", c.n);
    get("phrases", c.phrases);
    get("size", c.size);
    get("m_max", c.m_max);
    get("word", c.word);
    get("beta", c.beta);
    get("mode", c.mode);
    get("identity", c.identity);
    get("threads", c.threads);
    get("bits", c.bits);
    get("histogram", c.histogram);
    get("certify_failure", c.certify_failure);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad config: ") + e.what());
  }
  return c;
}

json version_json() {
  return {{"name", "vvcode"}, {"version", kVersion}, {"format_version", io::kFormatVersion}};
}

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

// Reports written by this tool wrap their payload; accept either form.
json unwrap(json j) {
  if (j.is_object() && j.contains("format_version") && j.contains("result")) {
    return j.at("result");
  }
  return j;
}

json load(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string("missing --") + flag);
  return unwrap(io::read_json_file(path));
}

DictionaryPtr load_dict(const RunConfig& c) { return io::dictionary_from_json(load(c.dict, "dict")); }
SourceModel load_source(const RunConfig& c) { return io::source_from_json(load(c.source, "source")); }

std::shared_ptr<const FiniteDictionary> as_finite(const DictionaryPtr& d) {
  auto f = std::dynamic_pointer_cast<const FiniteDictionary>(d);
  if (!f) throw PreconditionError("this command needs an explicit finite dictionary");
  return f;
}

Word parse_word(const std::string& text, const char* flag) {
  try {
    return Word::parse(text);
  } catch (const Error& e) {
    throw UsageError(std::string("bad --") + flag + ": " + e.what());
  }
}

void validate(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (c.depth < 1) throw UsageError("--depth must be at least 1");
  if (c.width < 1) throw UsageError("--width must be at least 1");
}

void require_json(const RunConfig& c) {
  if (c.format != "json") throw UsageError("--format csv is not available for " + c.command);
}

MeasureOptions measure_options(const RunConfig& c) {
  MeasureOptions o;
  o.depth = c.depth;
  o.width = c.width;
  return o;
}

struct Outcome {
  int code = kOk;
  json result;
  std::string csv;  // used when format is csv
};

Outcome cmd_check(const RunConfig& c) {
  const DictionaryPtr d = load_dict(c);
  Outcome o;
  const bool proper = is_proper(*d, c.depth, c.width);
  json complete = nullptr;
  if (d->family() == "finite" && d->alphabet().is_finite()) complete = is_complete(*d);
  o.result = {{"family", d->family()},
              {"alphabet_size", d->alphabet().is_finite() ? json(*d->alphabet().size())
                                                          : json("countable")},
              {"proper", proper},
              {"complete", complete}};
  if (!proper) {
    o.code = kFail;
    return o;
  }
  if (!c.source.empty()) {
    AscOptions ao;
    ao.width = c.width;
    ao.certify_failure = c.certify_failure;
    const AscVerdict v = is_asc(*d, load_source(c), c.depth, c.tol, ao);
    o.result["asc"] = io::to_json(v);
    if (v.status == AscStatus::certified_not_complete) o.code = kFail;
    if (v.status == AscStatus::undetermined) o.code = kInconclusive;
  }
  return o;
}

Outcome cmd_truncate(const RunConfig& c) {
  const DictionaryPtr d = load_dict(c);
  if (c.n < 1) throw UsageError("--n must be at least 1");
  TruncateBudget b;
  b.width = c.width;
  Outcome o;
  o.result = io::to_json(truncate(*d, c.n, b));
  return o;
}

Outcome cmd_extend(const RunConfig& c) {
  const DictionaryPtr d = load_dict(c);
  if (c.word.empty()) throw UsageError("missing --word");
  Outcome o;
  o.result = io::to_json(*extend(d, parse_word(c.word, "word")));
  return o;
}

Outcome cmd_cone(const RunConfig& c) {
  const DictionaryPtr d = load_dict(c);
  const Word beta = parse_word(c.beta, "beta");
  const ConeResult r = cone(*d, beta, c.depth, c.width);
  json words = json::array();
  for (const Word& w : r.words) words.push_back(io::to_json(w));
  Outcome o;
  o.result = {{"beta", io::to_json(beta)},
              {"words", words},
              {"exhaustive", r.exhaustive},
              {"hypothesis_holds", r.hypothesis_holds}};
  if (!c.source.empty() && r.hypothesis_holds) {
    const SourceModel s = load_source(c);
    ExploreLimits limits;
    limits.depth = c.depth;
    limits.width = c.width;
    const ConeMass m = cone_mass(*d, beta, s, limits);
    const double p = s.word_prob(beta);
    const bool holds = std::fabs(m.mass - p) <= c.tol + m.tail_bound;
    o.result["mass"] = m.mass;
    o.result["tail_bound"] = m.tail_bound;
    o.result["prefix_probability"] = p;
    o.result["mass_identity_holds"] = holds;
  }
  return o;
}

Outcome cmd_measure(const RunConfig& c) {
  const DictionaryPtr d = load_dict(c);
  const SourceModel s = load_source(c);
  const DictionaryMeasures m = measure(*d, s, measure_options(c));
  Outcome o;
  o.result = io::to_json(m);
  o.result["h_p"] = s.entropy();
  std::ostringstream csv;
  csv << "dictionary,source,depth,width,h_d_low,h_d_high,lbar_low,lbar_high,h_p,"
         "frontier_mass,tail\n"
      << c.dict << ',' << c.source << ',' << c.depth << ',' << c.width << ','
      << io::format_double(m.entropy.low) << ',' << io::format_double(m.entropy.high) << ','
      << io::format_double(m.avg_length.low) << ',' << io::format_double(m.avg_length.high)
      << ',' << io::format_double(s.entropy()) << ',' << io::format_double(m.frontier_mass)
      << ',' << to_string(m.tail) << '\n';
  o.csv = csv.str();
  if (!m.entropy.bounded() || m.possibly_divergent) o.code = kInconclusive;
  return o;
}

Outcome cmd_verify(const RunConfig& c) {
  const DictionaryPtr d = load_dict(c);
  const SourceModel s = load_source(c);
  Outcome o;
  if (c.identity == "conservation") {
    const MeasureReport r = check_conservation(*d, s, c.tol, measure_options(c));
    o.result = io::to_json(r);
    o.csv = io::measure_csv_header() + "\n" + io::measure_csv_row(r, c.dict, c.source) + "\n";
    o.code = r.verdict == Verdict::pass ? kOk : r.verdict == Verdict::fail ? kFail : kInconclusive;
  } else if (c.identity == "truncation") {
    require_json(c);
    const auto rows = check_truncation_identity(d, s, c.m_max, c.tol, c.width);
    o.result = io::to_json(rows);
    for (const auto& r : rows) {
      if (!r.pass) o.code = kFail;
    }
  } else if (c.identity == "extension") {
    require_json(c);
    if (c.word.empty()) throw UsageError("missing --word");
    const ExtensionCheck e =
        check_extension_identities(d, parse_word(c.word, "word"), s, c.tol, measure_options(c));
    o.result = io::to_json(e);
    if (!e.ok()) o.code = kFail;
  } else {
    throw UsageError("--identity must be conservation, truncation or extension");
  }
  return o;
}

Outcome cmd_scan(const RunConfig& c) {
  const DictionaryPtr d = load_dict(c);
  const SourceModel s = load_source(c);
  const ScanResult r = convergence_scan(d, s, c.m_max, measure_options(c));
  Outcome o;
  o.result = io::to_json(r);
  std::ostringstream csv;
  csv << "m,h_low,h_high,lbar_low,lbar_high\n";
  for (const ScanRow& row : r.rows) {
    csv << row.m << ',' << io::format_double(row.entropy.low) << ','
        << io::format_double(row.entropy.high) << ',' << io::format_double(row.avg_length.low)
        << ',' << io::format_double(row.avg_length.high) << '\n';
  }
  o.csv = csv.str();
  if (!r.entropy_nondecreasing || !r.length_nondecreasing) o.code = kFail;
  return o;
}

Outcome cmd_tunstall(const RunConfig& c) {
  require_json(c);
  Outcome o;
  o.result = io::to_json(tunstall_build(load_source(c), c.size));
  return o;
}

Outcome cmd_codebook(const RunConfig& c) {
  require_json(c);
  const auto d = as_finite(load_dict(c));
  Outcome o;
  if (c.mode == "huffman") {
    o.result = io::to_json(huffman_build(*d, load_source(c)));
  } else if (c.mode == "fixed") {
    o.result = io::to_json(fixed_length_codebook(*d));
  } else {
    throw UsageError("--mode must be huffman or fixed");
  }
  return o;
}

std::vector<Symbol> read_stream(const RunConfig& c) {
  if (c.in.empty()) throw UsageError("missing --in");
  if (c.bits) return io::bytes_to_bits(io::read_binary_file(c.in));
  std::ifstream in(c.in);
  if (!in) throw InputError("cannot open " + c.in);
  return io::read_symbol_text(in);
}

Outcome cmd_encode(const RunConfig& c) {
  require_json(c);
  const auto d = as_finite(load_dict(c));
  const PhraseCodebook cb = io::codebook_from_json(load(c.codebook, "codebook"));
  if (c.out.empty()) throw UsageError("encode needs --out for the bitstream");
  const std::vector<Symbol> stream = read_stream(c);
  const auto bytes = encode(*d, cb, stream);
  io::write_binary_file(c.out, bytes);
  Outcome o;
  o.result = {{"symbols", stream.size()}, {"bytes", bytes.size()},
              {"bits_per_symbol",
               stream.empty() ? 0.0 : 8.0 * static_cast<double>(bytes.size()) /
                                          static_cast<double>(stream.size())}};
  return o;
}

Outcome cmd_decode(const RunConfig& c) {
  require_json(c);
  const auto d = as_finite(load_dict(c));
  const PhraseCodebook cb = io::codebook_from_json(load(c.codebook, "codebook"));
  if (c.in.empty()) throw UsageError("missing --in");
  if (c.out.empty()) throw UsageError("decode needs --out for the symbol stream");
  const std::vector<Symbol> symbols = decode(*d, cb, io::read_binary_file(c.in));
  if (c.bits) {
    io::write_binary_file(c.out, io::bits_to_bytes(symbols));
  } else {
    std::ofstream out(c.out);
    if (!out) throw InputError("cannot write " + c.out);
    io::write_symbol_text(out, symbols);
  }
  Outcome o;
  o.result = {{"symbols", symbols.size()}};
  return o;
}

Outcome cmd_simulate(const RunConfig& c) {
  const DictionaryPtr d = load_dict(c);
  const SourceModel s = load_source(c);
  SimOptions opts;
  opts.threads = c.threads;
  opts.theory = measure_options(c);
  opts.asc_tol = c.tol;
  Outcome o;
  if (c.histogram) {
    const PhraseHistogram h = phrase_histogram(*d, s, c.phrases, c.seed, opts);
    o.result = io::to_json(h);
    o.csv = io::histogram_csv(h);
  } else {
    const SimReport r = simulate(*d, s, c.phrases, c.seed, opts);
    o.result = io::to_json(r);
    o.csv = io::sim_csv_header() + "\n" + io::sim_csv_row(r) + "\n";
  }
  return o;
}

Outcome dispatch(const RunConfig& c) {
  validate(c);
  const std::string& k = c.command;
  if (k == "check") return cmd_check(c);
  if (k == "truncate") return (require_json(c), cmd_truncate(c));
  if (k == "extend") return (require_json(c), cmd_extend(c));
  if (k == "cone") return (require_json(c), cmd_cone(c));
  if (k == "measure") return cmd_measure(c);
  if (k == "verify") return cmd_verify(c);
  if (k == "scan") return cmd_scan(c);
  if (k == "tunstall") return cmd_tunstall(c);
  if (k == "codebook") return cmd_codebook(c);
  if (k == "encode") return cmd_encode(c);
  if (k == "decode") return cmd_decode(c);
  if (k == "simulate") return cmd_simulate(c);
  throw UsageError("unknown command \"" + k + "\"");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    o = dispatch(config);
  } catch (const ResourceError& e) {
    err << "vvcode: budget exhausted: " << e.what() << '\n';
    return kInconclusive;
  } catch (const SimulationError& e) {
    err << "vvcode: " << e.what() << '\n';
    return kFail;
  } catch (const Error& e) {
    err << "vvcode: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "vvcode: internal error: " << e.what() << '\n';
    return kUsage;
  }

  std::string text;
  if (config.format == "csv") {
    text = o.csv;
  } else {
    const json report = {{"format_version", io::kFormatVersion},
                         {"vvcode_version", kVersion},
                         {"config", to_json(config)},
                         {"result", o.result}};
    text = report.dump(2) + "\n";
  }
  // encode/decode use --out for their payload; the report goes to `out`.
  const bool payload_command = config.command == "encode" || config.command == "decode";
  if (!config.out.empty() && !payload_command) {
    std::ofstream f(config.out);
    if (!f || !(f << text)) {
      err << "vvcode: cannot write " << config.out << '\n';
      return kUsage;
    }
  } else {
    out << text;
  }
  return o.code;
}

}  // namespace vv::cli
