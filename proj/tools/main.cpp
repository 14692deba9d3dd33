// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "vvcode/errors.hpp"
#include "vvcode/io.hpp"

namespace {

using vv::cli::RunConfig;

struct Flags {
  bool dict = false, source = false, codebook = false, in = false;
  bool depth = false, width = false, tol = false, seed = false;
  bool n = false, phrases = false, size = false, m_max = false;
  bool word = false, beta = false, mode = false, identity = false;
  bool threads = false, bits = false, histogram = false, certify = false;
};

void add_options(CLI::App* sub, RunConfig& c, const Flags& f) {
  sub->add_option("--format", c.format, "Report format: json or csv")->capture_default_str();
  sub->add_option("--out", c.out, "Output file (default: standard output)");
  if (f.dict) sub->add_option("--dict", c.dict, "Dictionary JSON file")->required();
  if (f.source) sub->add_option("--source", c.source, "Source JSON file");
  if (f.codebook) sub->add_option("--codebook", c.codebook, "Codebook JSON file")->required();
  if (f.in) sub->add_option("--in", c.in, "Input stream file")->required();
  if (f.depth) sub->add_option("--depth", c.depth, "Exploration depth")->capture_default_str();
  if (f.width) {
    sub->add_option("--width", c.width, "Symbols visited per node (countable alphabets)")
        ->capture_default_str();
  }
  if (f.tol) sub->add_option("--tol", c.tol, "Tolerance")->capture_default_str();
  if (f.seed) sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  if (f.n) sub->add_option("--n", c.n, "Truncation depth")->capture_default_str();
  if (f.phrases) sub->add_option("--phrases", c.phrases, "Number of phrases")->capture_default_str();
  if (f.size) sub->add_option("--size", c.size, "Target dictionary size")->capture_default_str();
  if (f.m_max) sub->add_option("--m-max", c.m_max, "Largest truncation depth")->capture_default_str();
  if (f.word) sub->add_option("--word", c.word, "Word in dotted index notation, e.g. 1.0");
  if (f.beta) sub->add_option("--beta", c.beta, "Cone prefix in dotted index notation");
  if (f.mode) sub->add_option("--mode", c.mode, "huffman or fixed")->capture_default_str();
  if (f.identity) {
    sub->add_option("--identity", c.identity, "conservation, truncation or extension")
        ->capture_default_str();
  }
  if (f.threads) sub->add_option("--threads", c.threads, "Worker threads (0: auto)");
  if (f.bits) sub->add_flag("--bits", c.bits, "Stream is a raw bit file (8 symbols per byte)");
  if (f.histogram) sub->add_flag("--histogram", c.histogram, "Report the phrase histogram");
  if (f.certify) {
    sub->add_flag("--certify-failure", c.certify_failure,
                  "Report certified_not_complete when the never-covered mass reaches --tol");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-to-variable code dictionaries: properties, measures, coding"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print version information as JSON");

  RunConfig c;
  auto add = [&](const char* name, const char* help, Flags flags) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_options(sub, c, flags);
    return sub;
  };

  Flags check{.dict = true, .source = true, .depth = true, .width = true, .tol = true,
              .certify = true};
  add("check", "Properness, completeness and almost-sure completeness", check);
  add("truncate", "Boundary set T_n and truncated dictionary D_n",
      Flags{.dict = true, .width = true, .n = true});
  add("extend", "Replace a word by its one-symbol extensions", Flags{.dict = true, .word = true});
  add("cone", "Members below a prefix",
      Flags{.dict = true, .source = true, .depth = true, .width = true, .tol = true,
            .beta = true});
  add("measure", "Certified enclosures of H(D) and the average length",
      Flags{.dict = true, .source = true, .depth = true, .width = true});
  add("verify", "Check the entropy identities",
      Flags{.dict = true, .source = true, .depth = true, .width = true, .tol = true,
            .m_max = true, .word = true, .identity = true});
  add("scan", "H(D_m) and average length of D_m for m = 1..m-max",
      Flags{.dict = true, .source = true, .depth = true, .width = true, .m_max = true});
  add("tunstall", "Build a Tunstall dictionary", Flags{.source = true, .size = true});
  add("codebook", "Build a phrase codebook",
      Flags{.dict = true, .source = true, .mode = true});
  add("encode", "Encode a symbol stream",
      Flags{.dict = true, .codebook = true, .in = true, .bits = true});
  add("decode", "Decode a bitstream",
      Flags{.dict = true, .codebook = true, .in = true, .bits = true});
  add("simulate", "Monte Carlo phrase statistics",
      Flags{.dict = true, .source = true, .depth = true, .width = true, .tol = true,
            .seed = true, .phrases = true, .threads = true, .histogram = true});
  std::string replay_path;
  CLI::App* replay = app.add_subcommand("replay", "Re-run the configuration stored in a report");
  replay->add_option("report", replay_path, "Report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "vvcode: " << e.what() << '\n';
    return vv::cli::kUsage;
  }

  if (version) {
    std::cout << vv::cli::version_json().dump() << '\n';
    return vv::cli::kOk;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << "vvcode: a command is required (see --help)\n";
    return vv::cli::kUsage;
  }
  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == replay) {
    try {
      const auto report = vv::io::read_json_file(replay_path);
      if (!report.contains("config")) throw vv::InputError("report has no config");
      c = vv::cli::config_from_json(report.at("config"));
    } catch (const vv::Error& e) {
      std::cerr << "vvcode: " << e.what() << '\n';
      return vv::cli::kUsage;
    }
  } else {
    c.command = chosen->get_name();
  }
  return vv::cli::run(c, std::cout, std::cerr);
}
