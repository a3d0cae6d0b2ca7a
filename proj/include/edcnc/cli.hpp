#pragma once

// Command-line front end: codec, simulate, cost and leakage subcommands.
// Exit status: 0 success, 1 usage or config error, 2 domain failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edcnc/adversary.hpp"
#include "edcnc/codec.hpp"
#include "edcnc/cost_model.hpp"
#include "edcnc/plan.hpp"
#include "edcnc/random.hpp"
#include "edcnc/simulator.hpp"

namespace edcnc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

/// Parsed scenario configuration.
struct RunConfig {
  std::string topology = "fig3";
  std::size_t d_raw = 2;
  std::size_t l_f = 1;
  std::size_t n_dest = 2;
  std::vector<BitStream> streams;
  std::vector<std::string> failed_links;
  std::vector<NodeId> failed_relays;
  std::vector<std::string> corrupt_links;
  std::uint64_t seed = 1;
};

inline RunConfig parse_run_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ConfigError, "config must be an object");

  static const std::set<std::string> known{"topology",      "d_raw",        "l_f",           "n_dest", "streams",
                                           "failed_links", "failed_relays", "corrupt_links", "seed"};
  for (const auto& [key, value] : doc.items())
    if (!known.contains(key)) throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");

  RunConfig cfg;
  try {
    cfg.topology = doc.value("topology", cfg.topology);
    if (cfg.topology == "fig4") cfg.d_raw = 3, cfg.n_dest = 3;
    cfg.d_raw = doc.value("d_raw", cfg.d_raw);
    cfg.l_f = doc.value("l_f", cfg.l_f);
    cfg.n_dest = doc.value("n_dest", cfg.n_dest);
    cfg.seed = doc.value("seed", cfg.seed);
    for (const auto& s : doc.value("streams", std::vector<std::string>{})) cfg.streams.push_back(BitStream::parse(s));
    cfg.failed_links = doc.value("failed_links", cfg.failed_links);
    cfg.failed_relays = doc.value("failed_relays", cfg.failed_relays);
    cfg.corrupt_links = doc.value("corrupt_links", cfg.corrupt_links);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad config value: ") + e.what());
  }

  if (cfg.topology != "fig3" && cfg.topology != "fig4" && cfg.topology != "general")
    throw Error(ErrorCode::ConfigError, "topology must be fig3, fig4 or general");
  if (cfg.topology == "fig3" && (cfg.d_raw != 2 || cfg.l_f != 1))
    throw Error(ErrorCode::ConfigError, "fig3 is fixed at d_raw=2, l_f=1");
  if (cfg.topology == "fig4" && (cfg.d_raw != 3 || cfg.l_f != 1))
    throw Error(ErrorCode::ConfigError, "fig4 is fixed at d_raw=3, l_f=1");
  if (cfg.streams.size() != cfg.d_raw)
    throw Error(ErrorCode::ConfigError, "expected " + std::to_string(cfg.d_raw) + " streams");
  return cfg;
}

struct PreparedRun {
  Topology topology;
  TransmissionPlan plan;
  Generation generation;
  FailureScenario failures;
};

inline PreparedRun prepare(const RunConfig& cfg) {
  Topology topo = cfg.topology == "fig3"   ? build_fig3()
                  : cfg.topology == "fig4" ? build_fig4()
                                           : build_general(cfg.d_raw, cfg.l_f, cfg.n_dest);
  FailureScenario failures;
  failures.seed = cfg.seed;
  for (const auto& name : cfg.failed_links) failures.failed_links.insert(topo.link_by_name(name));
  for (const auto& name : cfg.corrupt_links) failures.corrupt_links.insert(topo.link_by_name(name));
  for (NodeId n : cfg.failed_relays) failures.failed_relays.insert(n);
  Generation gen = [&] {
    try {
      return Generation(cfg.streams, 0);
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, e.what());
    }
  }();
  return {std::move(topo), default_plan(cfg.d_raw, cfg.l_f), std::move(gen), std::move(failures)};
}

inline void write_scenario_csv(std::ostream& out, const ScenarioResult& result) {
  out << "destination,received,recovered,d_dec,case,extra_round_trips\n";
  for (const auto& d : result.destinations) {
    out << d.node << ',' << d.received_ok() << ',' << (d.recovered ? "true" : "false") << ',' << d.dec_stats.d_dec
        << ',' << to_char(d.dec_stats.case_label) << ',' << d.extra_round_trips << '\n';
  }
}

inline void write_leakage_csv(std::ostream& out, const LeakageReport& report) {
  out << "stream,bit,status,value\n";
  for (std::size_t j = 0; j < report.per_bit.size(); ++j) {
    for (std::size_t k = 0; k < report.per_bit[j].size(); ++k) {
      const auto& b = report.per_bit[j][k];
      out << (j + 1) << ',' << k << ',' << (b.determined ? "determined" : "ambiguous") << ','
          << (b.determined ? (*b.determined ? "1" : "0") : "") << '\n';
    }
  }
}

inline std::string verdict_line(const LeakageReport& report) {
  const auto v = security_verdict(report);
  auto flag = [](bool b) { return b ? "true" : "false"; };
  return "consistent_count=" + std::to_string(report.consistent_count) + ",full_break=" + flag(v.full_break) +
         ",stream_disclosed=" + flag(v.stream_disclosed) + ",bit_disclosed=" + flag(v.bit_disclosed);
}

namespace detail {

inline std::pair<std::int64_t, std::int64_t> parse_range(const std::string& spec, const std::string& name) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || spec.substr(0, eq) != name)
    throw Error(ErrorCode::ParseError, "expected " + name + "=A..B, got '" + spec + "'");
  const std::string body = spec.substr(eq + 1);
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw Error(ErrorCode::ParseError, "bad number in '" + spec + "'");
    return static_cast<std::int64_t>(v);
  };
  const auto dots = body.find("..");
  if (dots == std::string::npos) {
    const auto v = to_int(body);
    return {v, v};
  }
  return {to_int(body.substr(0, dots)), to_int(body.substr(dots + 2))};
}

inline ShiftTuple parse_tuple(const std::string& text) {
  ShiftTuple t;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::ParseError, "bad shift tuple '" + text + "'");
    t.shifts.push_back(static_cast<std::uint32_t>(std::stoul(part)));
  }
  if (t.shifts.empty()) throw Error(ErrorCode::ParseError, "empty shift tuple");
  return t;
}

inline std::pair<std::string, std::string> split_colon(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "expected KEY:BITS, got '" + text + "'");
  return {text.substr(0, colon), text.substr(colon + 1)};
}

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Unsolvable:
    case ErrorCode::Inconsistent:
    case ErrorCode::Unrecoverable:
    case ErrorCode::SearchExhausted:
      return kExitDomain;
    default:
      return kExitUsage;
  }
}

}  // namespace detail

/// Runs the CLI over `args` (excluding the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secure shifted-XOR network-coded broadcasting toolkit", "edcnc"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  std::string config_path;
  app.add_option("--out", out_path, "Output path (default standard output)");
  app.add_option("--config", config_path, "Scenario config file (JSON)");

  auto* codec = app.add_subcommand("codec", "Encode or decode shifted-XOR streams");
  std::string action;
  std::vector<std::string> stream_args, raw_args, coded_args;
  std::string matrix_arg = "default";
  std::size_t n_coded = 0;
  std::size_t d_raw_arg = 0;
  codec->add_option("action", action, "encode | decode")->required()->check(CLI::IsMember({"encode", "decode"}));
  codec->add_option("--streams", stream_args, "Raw bit strings, comma separated")->delimiter(',');
  codec->add_option("--matrix", matrix_arg, "'default' or tuples like 0,1;0,2");
  codec->add_option("--n-coded", n_coded, "Coded stream count for the default matrix");
  codec->add_option("--raw", raw_args, "Received raw item J:BITS (repeatable)");
  codec->add_option("--coded", coded_args, "Received coded item R1,..,RN:BITS (repeatable)");
  codec->add_option("--d-raw", d_raw_arg, "Raw stream count when it cannot be inferred");

  auto* simulate = app.add_subcommand("simulate", "Run one broadcast scenario from a config file");

  auto* cost = app.add_subcommand("cost", "Security cost benefit tables");
  bool table1_flag = false;
  std::vector<std::string> sweep_args;
  cost->add_flag("--table1", table1_flag, "Reproduce the one-failure cost table");
  cost->add_option("--sweep", sweep_args, "d_raw=A..B [l_f=C..D]")->expected(1, 2);

  auto* leakage = app.add_subcommand("leakage", "Wiretap leakage by exhaustive enumeration");
  std::string leak_topology = "fig3";
  std::size_t leak_len = 4;
  std::uint64_t leak_seed = 1;
  leakage->add_option("--topology", leak_topology, "fig3 | fig4")->check(CLI::IsMember({"fig3", "fig4"}));
  leakage->add_option("--len", leak_len, "Stream length L")->required();
  leakage->add_option("--seed", leak_seed, "Seed for the transmitted generation and keys");

  std::vector<const char*> argv{"edcnc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::unique_ptr<std::ofstream> file;
  if (!out_path.empty()) {
    file = std::make_unique<std::ofstream>(out_path, std::ios::binary);
    if (!*file) {
      err << "cannot open " << out_path << '\n';
      return kExitUsage;
    }
  }
  std::ostream& sink = file ? *file : out;

  try {
    if (codec->parsed()) {
      if (action == "encode") {
        std::vector<BitStream> streams;
        for (const auto& s : stream_args) streams.push_back(BitStream::parse(s));
        if (streams.empty()) throw Error(ErrorCode::ParseError, "--streams is required for encode");
        const Generation gen(std::move(streams));
        ShiftMatrix matrix;
        if (matrix_arg == "default") {
          const std::size_t count = n_coded ? n_coded : (gen.d_raw() >= 2 ? gen.d_raw() : 1);
          matrix = gen.d_raw() >= 2 ? default_shift_matrix(gen.d_raw(), count) : ShiftMatrix{ShiftTuple{0}};
        } else {
          std::stringstream ss(matrix_arg);
          std::string part;
          while (std::getline(ss, part, ';')) matrix.push_back(detail::parse_tuple(part));
        }
        for (std::size_t i = 0; i < matrix.size(); ++i) {
          if (i) sink << ' ';
          sink << 'c' << (i + 1) << '=' << encode(gen, matrix[i], i + 1).payload.to_string();
        }
        sink << '\n';
      } else {
        ReceivedSet received;
        std::size_t d_raw = d_raw_arg;
        std::optional<std::size_t> len;
        std::set<std::size_t> given;
        for (const auto& r : raw_args) {
          auto [key, bits] = detail::split_colon(r);
          const auto tuple = detail::parse_tuple(key);
          if (tuple.arity() != 1 || tuple[0] == 0) throw Error(ErrorCode::ParseError, "bad raw index '" + key + "'");
          auto payload = BitStream::parse(bits);
          len = payload.size();
          given.insert(tuple[0]);
          received.add_raw(tuple[0], std::move(payload));
        }
        for (const auto& c : coded_args) {
          auto [key, bits] = detail::split_colon(c);
          auto tuple = detail::parse_tuple(key);
          auto payload = BitStream::parse(bits);
          if (payload.size() < tuple.max_shift() + 1) throw Error(ErrorCode::ParseError, "coded payload too short");
          if (!len) len = payload.size() - tuple.max_shift();
          if (!d_raw) d_raw = tuple.arity();
          received.add_coded(std::move(tuple), std::move(payload));
        }
        if (!d_raw || !len) throw Error(ErrorCode::ParseError, "cannot infer d_raw and length; pass --d-raw");
        const auto gen = decode(received, d_raw, *len);
        bool first = true;
        for (std::size_t j = 1; j <= d_raw; ++j) {
          if (given.contains(j)) continue;
          sink << (first ? "" : " ") << 'x' << j << '=' << gen.stream(j).to_string();
          first = false;
        }
        sink << '\n';
      }
      return kExitOk;
    }

    if (simulate->parsed()) {
      if (config_path.empty()) throw Error(ErrorCode::ConfigError, "simulate needs --config");
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorCode::ConfigError, "cannot read " + config_path);
      std::stringstream text;
      text << in.rdbuf();
      const RunConfig cfg = parse_run_config(text.str());
      PreparedRun run = prepare(cfg);
      GroupRegistry registry(cfg.seed);
      std::set<NodeId> dests;
      for (NodeId d : run.topology.with_role(Role::Destination)) dests.insert(d);
      const GroupId group = registry.create_group(run.topology.source(), dests);
      const auto result = run_scenario(run.topology, run.generation, run.plan, run.failures, registry, group);
      const auto tolerance = tolerance_map(run.topology, cfg.d_raw, run.plan, run.generation.length());

      write_scenario_csv(sink, result);
      bool ok = true;
      for (const auto& d : result.destinations) {
        const bool within = static_cast<int>(d.missing.size()) <= tolerance.at(d.node);
        if (within && !d.recovered) ok = false;
        err << "destination " << d.node << ": " << (d.recovered ? "recovered" : "NOT recovered") << ", case "
            << to_char(d.dec_stats.case_label) << ", d_dec=" << d.dec_stats.d_dec << ", missing=" << d.missing.size()
            << ", tolerance=" << tolerance.at(d.node) << (within ? "" : " (beyond tolerance)") << '\n';
      }
      return ok ? kExitOk : kExitDomain;
    }

    if (cost->parsed()) {
      if (table1_flag == !sweep_args.empty()) throw Error(ErrorCode::ParseError, "use exactly one of --table1, --sweep");
      if (table1_flag) {
        write_cost_csv(sink, table1());
      } else {
        const auto [d_lo, d_hi] = detail::parse_range(sweep_args.at(0), "d_raw");
        std::pair<std::int64_t, std::int64_t> lf{1, 1};
        if (sweep_args.size() > 1) lf = detail::parse_range(sweep_args[1], "l_f");
        write_cost_csv(sink, sweep(d_lo, d_hi, lf.first, lf.second));
      }
      return kExitOk;
    }

    if (leakage->parsed()) {
      const std::size_t d_raw = leak_topology == "fig3" ? 2 : 3;
      if (leak_len == 0) throw Error(ErrorCode::DomainError, "--len must be positive");
      if (d_raw * leak_len > kMaxEnumerationBits)
        throw Error(ErrorCode::TooLarge, "d_raw*len = " + std::to_string(d_raw * leak_len) + " exceeds " +
                                             std::to_string(kMaxEnumerationBits));
      std::mt19937_64 rng(leak_seed);
      const Generation gen = random_generation(d_raw, leak_len, rng);
      const Topology topo = leak_topology == "fig3" ? build_fig3() : build_fig4();
      GroupRegistry registry(leak_seed);
      std::set<NodeId> dests;
      for (NodeId d : topo.with_role(Role::Destination)) dests.insert(d);
      const GroupId group = registry.create_group(topo.source(), dests);
      const auto result = run_scenario(topo, gen, default_plan(d_raw, 1), {}, registry, group);
      const auto report = consistent_generations(result.wiretap, d_raw, leak_len);
      write_leakage_csv(sink, report);
      out << verdict_line(report) << '\n';
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return detail::exit_code_for(e);
  }
  return kExitUsage;
}

}  // namespace edcnc::cli
