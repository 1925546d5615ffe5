// Copyright 2026 The Butterfly Router Authors
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

// Command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "butterfly/butterfly.hpp"

namespace {

using namespace butterfly;
using Clock = std::chrono::steady_clock;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void emit(const std::string &text, const std::string &path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_text_file(path, text);
  }
}

void print_violations(const std::vector<Violation> &violations) {
  for (const auto &v : violations) {
    std::cerr << "  layer " << v.layer << ": " << v.message << "\n";
  }
}

// topology

struct TopologyArgs {
  std::size_t r = 3;
  std::size_t kary = 0;
  bool ring = false;
  std::string format = "dot";
  std::string out;
};

int run_topology(const TopologyArgs &a) {
  std::string text;
  if (a.kary > 0 || a.ring) {
    const VariantGraph v = a.ring ? ring_expand(build_butterfly(a.r))
                                  : build_kary_butterfly(a.r, a.kary);
    const std::string title = a.ring ? "ring_expanded_r" + std::to_string(a.r)
                                     : "kary" + std::to_string(a.kary) + "_r" +
                                           std::to_string(a.r);
    text = a.format == "dot" ? io::to_dot(v.graph, v.names, title)
                             : io::adjacency_json(v.graph).dump(1) + "\n";
  } else {
    const auto g = build_butterfly(a.r);
    text = a.format == "dot" ? io::to_dot(g) : io::adjacency_json(g.graph()).dump(1) + "\n";
  }
  emit(text, a.out);
  return kOk;
}

// route

struct RouteArgs {
  std::size_t r = 3;
  std::string perm;
  std::string out;
  bool explain = false;
  bool no_validate = false;
};

int run_route(const RouteArgs &a) {
  const auto g = build_butterfly(a.r);
  const auto pi = io::permutation_from_json(io::read_json_file(a.perm));
  if (pi.size() != g.size()) {
    throw std::invalid_argument("permutation has " + std::to_string(pi.size()) +
                                " entries, graph has " + std::to_string(g.size()));
  }
  const auto start = Clock::now();
  const auto res = route_permutation(g, pi, {.validate = !a.no_validate});
  const double elapsed = ms_since(start);

  if (!a.no_validate) {
    const auto report = verify_schedule(g, res.schedule, pi);
    if (!report.passed()) {
      print_violations(report.violations);
      throw VerificationFailed("routed schedule failed verification");
    }
  }
  if (!a.out.empty()) emit(io::to_json(res.schedule).dump() + "\n", a.out);

  const auto bound = depth_bound(a.r);
  std::cout << "n " << g.size() << "\n"
            << "phase depths " << res.executed.row_sort << " "
            << res.executed.column_route << " " << res.executed.row_finish << "\n"
            << "depth " << res.depth_post_elision() << "\n"
            << "depth before elision " << res.depth_pre_elision() << "\n"
            << "bound " << bound.worst_case << " (6 log2 n = " << bound.log_bound << ")\n"
            << "elapsed_ms " << std::fixed << std::setprecision(3) << elapsed << "\n";
  if (a.explain) std::cout << io::explain_json(res).dump(1) << "\n";
  return kOk;
}

// verify

struct VerifyArgs {
  std::size_t r = 3;
  std::string schedule;
  std::string perm;
};

int run_verify(const VerifyArgs &a) {
  const auto g = build_butterfly(a.r);
  const auto s = io::schedule_from_json(io::read_json_file(a.schedule));
  const auto pi = io::permutation_from_json(io::read_json_file(a.perm));
  const auto report = verify_schedule(g, s, pi);
  std::cout << "locality " << (report.locality ? "ok" : "FAIL") << "\n"
            << "occupancy " << (report.occupancy ? "ok" : "FAIL") << " (peak "
            << report.peak_occupancy << ")\n"
            << "correctness " << (report.correctness ? "ok" : "FAIL") << "\n"
            << "depth " << report.depth << "\n";
  if (!report.passed()) {
    print_violations(report.violations);
    return kVerifyFailed;
  }
  return kOk;
}

// compile

struct CompileArgs {
  std::size_t r = 3;
  std::string circuit;
  std::string out;
  bool stats = false;
  bool no_validate = false;
};

int run_compile(const CompileArgs &a) {
  const auto g = build_butterfly(a.r);
  const auto c = io::circuit_from_json(io::read_json_file(a.circuit));
  if (c.qubits > g.size()) {
    throw std::invalid_argument("circuit needs " + std::to_string(c.qubits) +
                                " nodes; smallest fitting r is " +
                                std::to_string(minimal_dimension(c.qubits)));
  }
  const auto start = Clock::now();
  const auto p = compile_circuit(g, c, {.validate = !a.no_validate});
  const double elapsed = ms_since(start);
  if (!a.no_validate) {
    const auto report = verify_program(g, c, p);
    if (!report.passed()) {
      print_violations(report.violations);
      throw VerificationFailed("compiled program failed verification");
    }
  }
  emit(io::to_json(p).dump() + "\n", a.out);
  if (a.stats) {
    std::size_t worst = 0;
    for (const auto &round : p.rounds) worst = std::max(worst, round.routing_depth);
    std::cout << "timesteps " << c.timesteps.size() << "\n"
              << "rounds " << p.rounds.size() << "\n"
              << "routing depth " << p.routing_depth() << "\n"
              << "max round depth " << worst << "\n"
              << "bound " << depth_bound(a.r).worst_case << "\n"
              << "elapsed_ms " << std::fixed << std::setprecision(3) << elapsed << "\n";
  }
  return kOk;
}

// verify-program

struct VerifyProgramArgs {
  std::size_t r = 3;
  std::string circuit;
  std::string program;
};

int run_verify_program(const VerifyProgramArgs &a) {
  const auto g = build_butterfly(a.r);
  const auto c = io::circuit_from_json(io::read_json_file(a.circuit));
  const auto p = io::program_from_json(io::read_json_file(a.program));
  const auto report = verify_program(g, c, p);
  std::cout << "routing " << (report.routing_valid ? "ok" : "FAIL") << "\n"
            << "gates local " << (report.gates_local ? "ok" : "FAIL") << "\n"
            << "order " << (report.order_preserved ? "ok" : "FAIL") << "\n"
            << "depth bound " << (report.depth_within_bound ? "ok" : "FAIL") << "\n"
            << "gates " << report.gate_count << "\n"
            << "peak occupancy " << report.peak_occupancy << "\n";
  if (!report.passed()) {
    print_violations(report.violations);
    return kVerifyFailed;
  }
  return kOk;
}

// bench

struct BenchArgs {
  std::string range = "3..8";
  std::size_t count = 100;
  std::uint64_t seed = 1;
};

std::pair<std::size_t, std::size_t> parse_range(const std::string &text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto r = std::stoul(text);
      return {r, r};
    }
    return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
  } catch (const std::exception &) {
    throw std::invalid_argument("bad range '" + text + "', expected LO..HI");
  }
}

int run_bench(const BenchArgs &a) {
  const auto [lo, hi] = parse_range(a.range);
  if (lo < kMinDimension || hi < lo) throw std::invalid_argument("bad range " + a.range);
  std::mt19937_64 rng(a.seed);
  bool all_ok = true;
  std::cout << std::setw(3) << "r" << std::setw(8) << "n" << std::setw(12) << "mean depth"
            << std::setw(10) << "max depth" << std::setw(8) << "6r-6" << std::setw(12)
            << "6 log2 n" << std::setw(12) << "wall ms" << "\n";
  for (std::size_t r = lo; r <= hi; ++r) {
    const auto g = build_butterfly(r);
    std::vector<NodeIndex> image(g.size());
    std::size_t total = 0, worst = 0;
    const auto start = Clock::now();
    for (std::size_t k = 0; k < a.count; ++k) {
      std::iota(image.begin(), image.end(), NodeIndex{0});
      std::shuffle(image.begin(), image.end(), rng);
      const Permutation pi(image);
      const auto res = route_permutation(g, pi);
      const auto report = verify_schedule(g, res.schedule, pi);
      all_ok = all_ok && report.passed();
      total += res.depth_post_elision();
      worst = std::max(worst, res.depth_post_elision());
    }
    const double elapsed = ms_since(start);
    const auto bound = depth_bound(r);
    all_ok = all_ok && worst <= bound.worst_case;
    std::cout << std::setw(3) << r << std::setw(8) << g.size() << std::setw(12)
              << std::fixed << std::setprecision(2)
              << (a.count ? double(total) / double(a.count) : 0.0) << std::setw(10) << worst
              << std::setw(8) << bound.worst_case << std::setw(12) << bound.log_bound
              << std::setw(12) << std::setprecision(1) << elapsed << "\n";
  }
  if (!all_ok) throw VerificationFailed("a benchmark instance failed verification");
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Compile qubit permutations and circuits onto the wrapped butterfly"};
  app.require_subcommand(1);

  TopologyArgs topo;
  auto *topology = app.add_subcommand("topology", "Export the interaction graph");
  topology->add_option("--r", topo.r, "Butterfly dimension")->required();
  auto *kary_opt = topology->add_option("--kary", topo.kary, "k-ary variant with digit base K");
  topology->add_flag("--ring-expand", topo.ring, "Replace each node by a 4-cycle")
      ->excludes(kary_opt);
  topology->add_option("--format", topo.format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));
  topology->add_option("--out", topo.out, "Output file (default stdout)");

  RouteArgs route;
  auto *route_cmd = app.add_subcommand("route", "Route a permutation");
  route_cmd->add_option("--r", route.r, "Butterfly dimension")->required();
  route_cmd->add_option("--perm", route.perm, "Permutation JSON")->required();
  route_cmd->add_option("--out", route.out, "Schedule JSON output");
  route_cmd->add_flag("--explain", route.explain, "Dump coloring and Benes plans");
  route_cmd->add_flag("--no-validate", route.no_validate, "Skip self-checks");

  VerifyArgs verify;
  auto *verify_cmd = app.add_subcommand("verify", "Verify a schedule against a permutation");
  verify_cmd->add_option("--graph", verify.r, "Butterfly dimension")->required();
  verify_cmd->add_option("--schedule", verify.schedule, "Schedule JSON")->required();
  verify_cmd->add_option("--perm", verify.perm, "Permutation JSON")->required();

  CompileArgs compile;
  auto *compile_cmd = app.add_subcommand("compile", "Compile a circuit");
  compile_cmd->add_option("--r", compile.r, "Butterfly dimension")->required();
  compile_cmd->add_option("--circuit", compile.circuit, "Circuit JSON")->required();
  compile_cmd->add_option("--out", compile.out, "Program JSON output")->required();
  compile_cmd->add_flag("--stats", compile.stats, "Print depth statistics");
  compile_cmd->add_flag("--no-validate", compile.no_validate, "Skip self-checks");

  VerifyProgramArgs vp;
  auto *vp_cmd = app.add_subcommand("verify-program", "Verify a compiled program");
  vp_cmd->add_option("--r", vp.r, "Butterfly dimension")->required();
  vp_cmd->add_option("--circuit", vp.circuit, "Circuit JSON")->required();
  vp_cmd->add_option("--program", vp.program, "Program JSON")->required();

  BenchArgs bench;
  auto *bench_cmd = app.add_subcommand("bench", "Route random permutations");
  bench_cmd->add_option("--r", bench.range, "Dimension range LO..HI");
  bench_cmd->add_option("--count", bench.count, "Permutations per dimension");
  bench_cmd->add_option("--seed", bench.seed, "Random seed");

  std::size_t qubits = 0;
  auto *minr_cmd = app.add_subcommand("min-r", "Smallest dimension holding Q qubits");
  minr_cmd->add_option("--qubits", qubits, "Logical qubit count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*topology) return run_topology(topo);
    if (*route_cmd) return run_route(route);
    if (*verify_cmd) return run_verify(verify);
    if (*compile_cmd) return run_compile(compile);
    if (*vp_cmd) return run_verify_program(vp);
    if (*bench_cmd) return run_bench(bench);
    if (*minr_cmd) {
      const auto r = minimal_dimension(qubits);
      std::cout << r << " (" << r * (std::size_t{1} << r) << " nodes)\n";
      return kOk;
    }
  } catch (const VerificationFailed &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const ScheduleError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const RoutingFailure &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
