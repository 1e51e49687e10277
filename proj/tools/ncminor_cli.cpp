#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "generators.hpp"
#include "ncminor/analyze.hpp"
#include "ncminor/coding.hpp"
#include "ncminor/json_io.hpp"
#include "ncminor/minor.hpp"
#include "ncminor/oracle.hpp"
#include "ncminor/treepack.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ncminor::Error(ncminor::ErrorKind::parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ncminor::Error(ncminor::ErrorKind::parse, "cannot write " + path);
  out << text;
}

int exit_code(const ncminor::Error& err) {
  switch (err.kind()) {
    case ncminor::ErrorKind::parse:
      return kExitParse;
    case ncminor::ErrorKind::precondition:
    case ncminor::ErrorKind::bound:
      return kExitPrecondition;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  using ncminor::json;

  CLI::App app{"multicast analysis through interference coloring, small-field "
               "codes and tree packings"};
  app.require_subcommand(1);

  std::vector<std::string> analyze_files;
  std::string witness_path;
  int exact_chi_bound = 20;
  int jobs = 1;
  auto* cmd_analyze = app.add_subcommand("analyze", "full report for a network");
  cmd_analyze->add_option("files", analyze_files, "network JSON files")
      ->required();
  cmd_analyze->add_option("--witness", witness_path,
                          "write a K4 witness to this file");
  cmd_analyze->add_option("--exact-chi-bound", exact_chi_bound,
                          "exact coloring size limit");
  cmd_analyze->add_option("--jobs", jobs, "analyze files concurrently");

  std::string pack_file;
  auto* cmd_pack = app.add_subcommand("pack-trees",
                                      "optimal routing for K4-minor-free input");
  cmd_pack->add_option("file", pack_file, "network JSON file")->required();

  std::string code_file;
  int forced_field = 0;
  auto* cmd_code = app.add_subcommand("assign-code", "smallest-field network code");
  cmd_code->add_option("file", code_file, "network JSON file")->required();
  cmd_code->add_option("--field", forced_field, "force this field order");
  cmd_code->add_option("--exact-chi-bound", exact_chi_bound,
                       "exact coloring size limit");

  std::string construct_file;
  auto* cmd_construct =
      app.add_subcommand("construct", "2-minimal network for a given graph");
  cmd_construct->add_option("file", construct_file, "graph JSON file")
      ->required();

  std::string minor_file;
  int minor_k = 4;
  int minor_bound = 12;
  auto* cmd_minor = app.add_subcommand("check-minor", "clique minor detection");
  cmd_minor->add_option("file", minor_file, "graph or network JSON file")
      ->required();
  cmd_minor->add_option("--k", minor_k, "clique size");
  cmd_minor->add_option("--bound", minor_bound, "search size limit for k != 4");
  cmd_minor->add_option("--witness", witness_path, "write the witness here");

  std::string gen_kind;
  int gen_size = 10;
  std::uint64_t gen_seed = 1;
  auto* cmd_gen = app.add_subcommand("gen", "seeded instance generator");
  cmd_gen
      ->add_option("kind", gen_kind,
                   "series-parallel | grid-planar | two-minimal-random")
      ->required();
  cmd_gen->add_option("--size", gen_size, "instance size");
  cmd_gen->add_option("--seed", gen_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (cmd_analyze->parsed()) {
      ncminor::AnalyzeOptions opts;
      opts.exact_chi_bound = exact_chi_bound;
      auto run_one = [&](const std::string& path) {
        ncminor::Network net = ncminor::parse_network(slurp(path));
        json j = ncminor::report_to_json(ncminor::analyze(net, opts));
        if (!witness_path.empty()) {
          auto w = ncminor::find_k4_witness(ncminor::underlying_topology(net));
          if (w)
            write_file(witness_path,
                       ncminor::minor_witness_to_json(*w).dump(2) + "\n");
        }
        return j;
      };
      if (analyze_files.size() == 1) {
        std::cout << run_one(analyze_files[0]).dump(2) << "\n";
      } else {
        // batches of --jobs files; per-file isolation, stable output order
        std::vector<json> results(analyze_files.size());
        std::size_t width = std::max(1, jobs);
        for (std::size_t next = 0; next < analyze_files.size();) {
          std::size_t batch = std::min(width, analyze_files.size() - next);
          std::vector<std::future<json>> futs;
          for (std::size_t b = 0; b < batch; ++b)
            futs.push_back(std::async(std::launch::async, run_one,
                                      analyze_files[next + b]));
          for (std::size_t b = 0; b < batch; ++b)
            results[next + b] = futs[b].get();
          next += batch;
        }
        json all = json::array();
        for (json& r : results) all.push_back(std::move(r));
        std::cout << all.dump(2) << "\n";
      }
    } else if (cmd_pack->parsed()) {
      ncminor::Network net = ncminor::parse_network(slurp(pack_file));
      ncminor::RoutingResult res = ncminor::routing_multicast(net);
      if (res.k4) {
        json j{{"k4_minor", true},
               {"witness", ncminor::minor_witness_to_json(*res.k4)}};
        std::cout << j.dump(2) << "\n";
      } else {
        json j = ncminor::packing_to_json(res.packing, net.source());
        j["rate"] = res.rate;
        j["k4_minor"] = false;
        std::cout << j.dump(2) << "\n";
      }
    } else if (cmd_code->parsed()) {
      ncminor::Network net = ncminor::parse_network(slurp(code_file));
      json j;
      if (forced_field > 0) {
        ncminor::Field f = ncminor::Field::make(forced_field);
        ncminor::SubtreeDecomposition dec = ncminor::decompose(net);
        ncminor::SimpleGraph h = ncminor::subtree_graph(dec);
        ncminor::ChromaticResult chrom =
            ncminor::chromatic_number_exact(h, exact_chi_bound);
        if (chrom.chi > f.q() + 1)
          throw ncminor::Error(ncminor::ErrorKind::precondition,
                               "field too small: subtree graph needs " +
                                   std::to_string(chrom.chi) + " colors");
        ncminor::Code code = ncminor::assign_code(net, dec, f, chrom.coloring);
        j = ncminor::code_to_json(code);
        j["chromatic_number"] = chrom.chi;
      } else {
        ncminor::MinFieldResult mf =
            ncminor::min_field_size(net, exact_chi_bound);
        j = ncminor::code_to_json(mf.code);
        j["chromatic_number"] = mf.chi;
        j["min_field_size"] = mf.q;
        j["routing_sufficient"] = mf.q == 1;
      }
      std::cout << j.dump(2) << "\n";
    } else if (cmd_construct->parsed()) {
      ncminor::SimpleGraph h = ncminor::parse_graph(slurp(construct_file));
      std::cout << ncminor::serialize_network(ncminor::network_from_graph(h))
                << "\n";
    } else if (cmd_minor->parsed()) {
      std::string text = slurp(minor_file);
      json parsed = json::parse(text, nullptr, false);
      if (parsed.is_discarded())
        throw ncminor::Error(ncminor::ErrorKind::parse, "malformed JSON");
      ncminor::SimpleGraph g =
          parsed.contains("links")
              ? ncminor::underlying_topology(ncminor::network_from_json(parsed))
              : ncminor::graph_from_json(parsed);
      json j{{"k", minor_k}};
      std::optional<ncminor::MinorWitness> w;
      if (minor_k == 4) {
        w = ncminor::find_k4_witness(g);
        j["minor"] = w.has_value();
      } else {
        ncminor::CliqueMinorResult res =
            ncminor::has_clique_minor(g, minor_k, minor_bound);
        j["minor"] = res.found;
        if (res.found) w = res.witness;
      }
      if (w) {
        j["witness"] = ncminor::minor_witness_to_json(*w);
        if (!witness_path.empty())
          write_file(witness_path,
                     ncminor::minor_witness_to_json(*w).dump(2) + "\n");
      }
      std::cout << j.dump(2) << "\n";
    } else if (cmd_gen->parsed()) {
      ncminor::Network net;
      if (gen_kind == "series-parallel")
        net = ncminor::gen::gen_series_parallel(gen_size, gen_seed);
      else if (gen_kind == "grid-planar")
        net = ncminor::gen::gen_grid_planar(gen_size, gen_seed);
      else if (gen_kind == "two-minimal-random")
        net = ncminor::gen::gen_two_minimal_random(gen_size, gen_seed);
      else
        throw ncminor::Error(ncminor::ErrorKind::precondition,
                             "unknown generator kind " + gen_kind);
      std::cout << ncminor::serialize_network(net) << "\n";
    }
  } catch (const ncminor::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_code(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
