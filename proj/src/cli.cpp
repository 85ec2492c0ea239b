// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "nocdl/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nocdl/graph.hpp"
#include "nocdl/marking.hpp"
#include "nocdl/oracle.hpp"
#include "nocdl/witness.hpp"

namespace nocdl {

namespace {

constexpr int kExitFree = 0;
constexpr int kExitDeadlock = 1;
constexpr int kExitInput = 2;
constexpr int kExitViolation = 3;
constexpr int kExitResource = 4;

std::string join(const std::vector<int>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(xs[i]);
  }
  return s;
}

const char* verdict_name(Verdict v) {
  return v == Verdict::deadlock ? "deadlock" : "deadlock-free";
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    buffer << file.rdbuf();
  }
  return buffer.str();
}

bool write_output(const std::string& path, const std::string& text,
                  std::ostream& out, std::ostream& err) {
  if (path.empty() || path == "-") {
    out << text;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  if (file) file << text;
  if (!file) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

void print_witness_records(std::ostream& out, const char* prefix,
                           const WitnessSet& w) {
  out << prefix << ".count=" << w.size() << "\n";
  for (std::size_t i = 0; i < w.paths.size(); ++i) {
    out << prefix << "." << i << ".dest=" << w.paths[i].dest << "\n";
    out << prefix << "." << i << ".channels=";
    for (std::size_t k = 0; k < w.paths[i].channels.size(); ++k)
      out << (k ? " " : "") << w.paths[i].channels[k];
    out << "\n";
  }
}

int do_check(const std::string& input, bool machine, std::istream& in,
             std::ostream& out, std::ostream& err) {
  RoutingGraph g;
  try {
    g = RoutingGraph::parse(read_input(input, in));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  const AnalysisReport report = run_algorithm(g);
  const bool witness_ok =
      report.witness && check_witness(g, *report.witness);

  if (machine) {
    out << "channels=" << g.num_channels() << "\n";
    out << "sinks=" << g.num_sinks() << "\n";
    for (Channel c = 0; c < g.num_channels(); ++c) {
      out << "mark." << c << "=" << mark_value(report.store.marks[c]) << "\n";
      out << "escs." << c << "=" << join(report.store.escs[c], ",") << "\n";
      out << "deps." << c << "=" << join(report.store.deps[c], ",") << "\n";
    }
    out << "verdict=" << verdict_name(report.verdict) << "\n";
    out << "rounds=" << report.rounds << "\n";
    if (report.witness) {
      print_witness_records(out, "witness", *report.witness);
      out << "witness.check=" << (witness_ok ? "true" : "false") << "\n";
    }
  } else {
    out << "channels: " << g.num_channels() << "\n";
    out << "sinks: " << g.num_sinks() << "\n";
    for (Channel c = 0; c < g.num_channels(); ++c)
      out << "mark " << c << " = " << mark_value(report.store.marks[c])
          << " escs = {" << join(report.store.escs[c], ",") << "} deps = {"
          << join(report.store.deps[c], ",") << "}\n";
    out << "verdict: " << verdict_name(report.verdict) << "\n";
    out << "rounds: " << report.rounds << "\n";
    if (report.witness) {
      out << "witness (" << report.witness->size()
          << " paths, check: " << (witness_ok ? "ok" : "FAILED") << "):\n";
      out << serialize_witness(*report.witness);
    }
  }
  return report.verdict == Verdict::deadlock ? kExitDeadlock : kExitFree;
}

int do_verify(const std::string& input, const OracleLimits& limits,
              const std::string& assume_verdict, bool machine,
              std::istream& in, std::ostream& out, std::ostream& err) {
  RoutingGraph g;
  try {
    g = RoutingGraph::parse(read_input(input, in));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  const AnalysisReport report = run_algorithm(g);
  OracleResult oracles;
  try {
    oracles = run_oracles(g, limits);
  } catch (const resource_limit_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  }

  bool deadlock = report.verdict == Verdict::deadlock;
  if (assume_verdict == "deadlock") deadlock = true;
  if (assume_verdict == "deadlock-free") deadlock = false;
  const bool disjoint = oracles.disjoint_deadlock.has_value();
  const bool escape_mismatch = deadlock != oracles.escape_free_exists;
  const bool disjoint_breach = disjoint && !deadlock;
  const bool agreement = !escape_mismatch && !disjoint_breach;
  const bool false_deadlock = deadlock && !disjoint;

  if (machine) {
    out << "algorithm=" << (deadlock ? "deadlock" : "deadlock-free") << "\n";
    out << "escape_free=" << (oracles.escape_free_exists ? "true" : "false")
        << "\n";
    out << "disjoint=" << (disjoint ? "present" : "absent") << "\n";
    if (disjoint)
      print_witness_records(out, "disjoint", *oracles.disjoint_deadlock);
    out << "false_deadlock=" << (false_deadlock ? "true" : "false") << "\n";
    out << "agreement=" << (agreement ? "ok" : "violation") << "\n";
  } else {
    out << "algorithm: " << (deadlock ? "deadlock" : "deadlock-free") << "\n";
    out << "escape-free oracle: "
        << (oracles.escape_free_exists ? "true" : "false") << "\n";
    out << "disjoint oracle: " << (disjoint ? "present" : "absent") << "\n";
    if (disjoint) {
      out << "disjoint witness:\n";
      out << serialize_witness(*oracles.disjoint_deadlock);
    }
    out << "false deadlock: " << (false_deadlock ? "yes" : "no") << "\n";
    if (agreement) {
      out << "agreement: ok\n";
    } else {
      out << "agreement: violation (algorithm="
          << (deadlock ? "deadlock" : "deadlock-free")
          << " escape-free=" << (oracles.escape_free_exists ? "true" : "false")
          << " disjoint=" << (disjoint ? "present" : "absent") << ")\n";
    }
  }
  return agreement ? kExitFree : kExitViolation;
}

int do_gen(int channels, int sinks, double density, std::uint64_t seed,
           const std::string& output, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = random_graph(channels, sinks, density, seed).serialize();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return write_output(output, text, out, err) ? kExitFree : kExitInput;
}

int do_export_dot(const std::string& input, bool with_marks,
                  const std::string& output, std::istream& in,
                  std::ostream& out, std::ostream& err) {
  std::string dot;
  try {
    RoutingGraph g = RoutingGraph::parse(read_input(input, in));
    if (with_marks) {
      const AnalysisReport report = run_algorithm(g);
      std::vector<int> marks;
      for (Mark m : report.store.marks) marks.push_back(mark_value(m));
      dot = to_dot(g, marks);
    } else {
      dot = to_dot(g);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return write_output(output, dot, out, err) ? kExitFree : kExitInput;
}

}  // namespace

int run_command(std::vector<std::string> args, std::istream& in,
                std::ostream& out, std::ostream& err) {
  CLI::App app{"deadlock analyzer for wormhole-switched networks"};
  app.name("nocdl");
  app.require_subcommand(1);

  bool machine = false;
  app.add_flag("--machine", machine, "emit one key=value record per line");

  std::string check_input;
  auto* check = app.add_subcommand(
      "check", "mark a dependency graph and report the verdict");
  check->add_option("input", check_input, "graph file, or - for stdin")
      ->required();
  check->fallthrough();

  std::string verify_input;
  std::string assume_verdict;
  OracleLimits limits;
  auto* verify = app.add_subcommand(
      "verify", "cross-check the verdict against both brute-force oracles");
  verify->add_option("input", verify_input, "graph file, or - for stdin")
      ->required();
  verify->add_option("--max-paths", limits.max_paths,
                     "cap on enumerated simple d-paths");
  verify->add_option("--max-subsets", limits.max_subsets,
                     "cap on visited subsets in the disjoint search");
  verify->add_option("--assume-verdict", assume_verdict)
      ->check(CLI::IsMember({"deadlock", "deadlock-free"}))
      ->group("");  // fault-injection hook for exercising the violation path
  verify->fallthrough();

  int gen_channels = 0, gen_sinks = 0;
  double gen_density = 0.0;
  std::uint64_t gen_seed = 0;
  std::string gen_output;
  auto* gen = app.add_subcommand("gen", "write a seeded random graph");
  gen->add_option("--channels", gen_channels, "channel count")->required();
  gen->add_option("--sinks", gen_sinks, "sink count")->required();
  gen->add_option("--density", gen_density, "edge probability in (0, 1]")
      ->required();
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("-o,--output", gen_output, "output file (default stdout)");
  gen->fallthrough();

  std::string dot_input, dot_output;
  bool with_marks = false;
  auto* export_dot =
      app.add_subcommand("export-dot", "render the graph as Graphviz DOT");
  export_dot->add_option("input", dot_input, "graph file, or - for stdin")
      ->required();
  export_dot->add_flag("--with-marks", with_marks,
                       "run the analysis and annotate channel marks");
  export_dot->add_option("-o,--output", dot_output,
                         "output file (default stdout)");
  export_dot->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("nocdl");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitFree;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitFree;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (check->parsed()) return do_check(check_input, machine, in, out, err);
    if (verify->parsed())
      return do_verify(verify_input, limits, assume_verdict, machine, in, out,
                       err);
    if (gen->parsed())
      return do_gen(gen_channels, gen_sinks, gen_density, gen_seed, gen_output,
                    out, err);
    if (export_dot->parsed())
      return do_export_dot(dot_input, with_marks, dot_output, in, out, err);
  } catch (const resource_limit_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  err << "error: no command\n";
  return kExitInput;
}

}  // namespace nocdl
