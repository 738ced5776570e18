// command line front end for the tempofilt library
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tempofilt/errors.hpp"
#include "tempofilt/experiment.hpp"
#include "tempofilt/filtration.hpp"
#include "tempofilt/filtration_kernel.hpp"
#include "tempofilt/generate.hpp"
#include "tempofilt/io.hpp"
#include "tempofilt/null_models.hpp"
#include "tempofilt/persistence.hpp"
#include "tempofilt/pss_kernel.hpp"
#include "tempofilt/rng.hpp"

namespace {

using namespace tempofilt;

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  int threads = 0;
  bool verbose = false;
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

std::vector<double> parse_weights(const std::string& s) {
  std::vector<double> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(part, &used));
    if (used != part.size()) throw ValueError("bad weight '" + part + "'");
  }
  if (out.size() != 3) throw ValueError("degree weights need 3 comma-separated values");
  return out;
}

void print_stats(const TemporalGraph& g) {
  const GraphStats s = stats(g);
  std::cout << "vertices       " << s.n_vertices << "\n"
            << "contacts       " << s.n_temporal_edges << "\n"
            << "static-edges   " << s.n_static_edges << "\n"
            << "labels-avg     " << format_double(s.labels_avg) << "\n"
            << "labels-max     " << s.labels_max << "\n"
            << "degree-avg     " << format_double(s.degree_avg) << "\n"
            << "degree-max     " << s.degree_max << "\n"
            << "single-labeled " << (g.single_labeled() ? "yes" : "no") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delta-temporal-motif filtrations of temporal graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tempofilt 0.1.0");

  GlobalOpts global;
  app.add_option("--seed", global.seed, "random seed")->capture_default_str();
  auto* seed_opt = app.get_option("--seed");
  app.add_option("--stream", global.stream, "random stream id")->capture_default_str();
  app.add_option("--threads", global.threads,
                 "worker threads (0 = all cores)")->capture_default_str();
  app.add_flag("--verbose", global.verbose, "chatty progress on stderr");

  // ---- stats ----
  auto* stats_cmd = app.add_subcommand("stats", "summarize a contact sequence");
  struct {
    std::string input;
    std::string columns = "tuv";
  } stats_opts;
  stats_cmd->add_option("input", stats_opts.input, "contact file")->required();
  stats_cmd->add_option("--columns", stats_opts.columns, "column order")
      ->check(CLI::IsMember({"tuv", "uvt"}))->capture_default_str();
  stats_cmd->callback([&] {
    print_stats(read_contact_sequence(stats_opts.input,
                                      column_order_from_string(stats_opts.columns)));
  });

  // ---- filtrate ----
  auto* filt_cmd = app.add_subcommand("filtrate",
                                      "turn contacts into a filtered static graph");
  struct {
    std::string input;
    std::string output;
    std::string columns = "tuv";
    std::string method = "avg";
  } filt_opts;
  filt_cmd->add_option("input", filt_opts.input, "contact file")->required();
  filt_cmd->add_option("-o,--output", filt_opts.output, "output path (default stdout)");
  filt_cmd->add_option("--columns", filt_opts.columns, "column order")
      ->check(CLI::IsMember({"tuv", "uvt"}))->capture_default_str();
  filt_cmd->add_option("-m,--method", filt_opts.method,
                       "min | avg | avg-mlt | add-max-deg | add-core-num | add-triangle")
      ->capture_default_str();
  filt_cmd->callback([&] {
    const auto g = read_contact_sequence(filt_opts.input,
                                         column_order_from_string(filt_opts.columns));
    const auto f = apply_filtration(g, filtration_method_from_string(filt_opts.method));
    emit(format_filtered_graph(f), filt_opts.output);
  });

  // ---- persistence ----
  auto* pers_cmd = app.add_subcommand("persistence",
                                      "persistence diagram of a filtered graph");
  struct {
    std::string input;
    std::string output;
    int max_degree = 2;
    double threshold = 0.0;
    std::uint64_t max_simplices = 50'000'000;
    bool keep_zero = false;
  } pers_opts;
  pers_cmd->add_option("input", pers_opts.input, "filtered graph file")->required();
  pers_cmd->add_option("-o,--output", pers_opts.output, "output path (default stdout)");
  pers_cmd->add_option("--max-degree", pers_opts.max_degree,
                       "top homology degree (0-2)")->capture_default_str();
  pers_cmd->add_option("--threshold", pers_opts.threshold,
                       "drop pairs with persistence below this")->capture_default_str();
  pers_cmd->add_option("--max-simplices", pers_opts.max_simplices,
                       "clique budget")->capture_default_str();
  pers_cmd->add_flag("--keep-zero", pers_opts.keep_zero,
                     "keep zero-persistence pairs");
  pers_cmd->callback([&] {
    const auto g = read_filtered_graph(pers_opts.input);
    auto d = flag_persistence(g, pers_opts.max_degree, !pers_opts.keep_zero,
                              pers_opts.max_simplices);
    if (pers_opts.threshold > 0.0) d = threshold_diagram(d, pers_opts.threshold);
    emit(format_diagram(d), pers_opts.output);
  });

  // ---- kernel ----
  auto* kernel_cmd = app.add_subcommand("kernel", "Gram matrices between graphs");
  kernel_cmd->require_subcommand(1);

  auto* pss_cmd = kernel_cmd->add_subcommand("pss",
                                             "scale-space kernel on diagrams");
  struct {
    std::vector<std::string> inputs;
    std::string output;
    double sigma = 1.0;
    std::string weights = "1,1,1";
    double cap_factor = 1.1;
    double cap_override = std::numeric_limits<double>::quiet_NaN();
    double threshold = 0.0;
  } pss_opts;
  pss_cmd->add_option("inputs", pss_opts.inputs, "diagram files")
      ->required()->expected(-1);
  pss_cmd->add_option("-o,--output", pss_opts.output, "gram csv (default stdout)");
  pss_cmd->add_option("--sigma", pss_opts.sigma, "bandwidth")->capture_default_str();
  pss_cmd->add_option("--degree-weights", pss_opts.weights,
                      "per-degree weights, e.g. 1,1,0")->capture_default_str();
  pss_cmd->add_option("--essential-cap-factor", pss_opts.cap_factor,
                      "cap = factor * max finite value")->capture_default_str();
  pss_cmd->add_option("--essential-cap", pss_opts.cap_override,
                      "fixed death value for essential classes");
  pss_cmd->add_option("--threshold", pss_opts.threshold,
                      "drop pairs below this persistence")->capture_default_str();
  pss_cmd->callback([&] {
    std::vector<PersistenceDiagram> diagrams;
    for (const auto& path : pss_opts.inputs) {
      auto d = read_diagram(path);
      if (pss_opts.threshold > 0.0) d = threshold_diagram(d, pss_opts.threshold);
      diagrams.push_back(std::move(d));
    }
    const double cap = std::isnan(pss_opts.cap_override)
                           ? essential_cap(diagrams, pss_opts.cap_factor)
                           : pss_opts.cap_override;
    for (auto& d : diagrams) d = substitute_essentials(d, cap);
    PssParams params;
    params.sigma = pss_opts.sigma;
    const auto w = parse_weights(pss_opts.weights);
    for (int i = 0; i < 3; ++i) params.degree_weights[i] = w[i];
    const auto gram = pss_gram(diagrams, pss_opts.inputs, params, global.threads);
    emit(format_gram_csv(gram), pss_opts.output);
  });

  auto* fwl_cmd = kernel_cmd->add_subcommand(
      "fwl", "Weisfeiler-Leman kernel on filtration levels");
  struct {
    std::vector<std::string> inputs;
    std::string output;
    double gamma = 1.0;
    int depth = 3;
    int levels = 10;
    bool superlevel = false;
  } fwl_opts;
  fwl_cmd->add_option("inputs", fwl_opts.inputs, "filtered graph files")
      ->required()->expected(-1);
  fwl_cmd->add_option("-o,--output", fwl_opts.output, "gram csv (default stdout)");
  fwl_cmd->add_option("--gamma", fwl_opts.gamma, "distance decay")->capture_default_str();
  fwl_cmd->add_option("--wl-depth", fwl_opts.depth, "refinement rounds")
      ->capture_default_str();
  fwl_cmd->add_option("--levels", fwl_opts.levels, "threshold count")
      ->capture_default_str();
  fwl_cmd->add_flag("--superlevel", fwl_opts.superlevel,
                    "inputs already use superlevel values (skip flipping)");
  fwl_cmd->callback([&] {
    std::vector<FilteredGraph> graphs;
    for (const auto& path : fwl_opts.inputs) graphs.push_back(read_filtered_graph(path));
    FwlParams params;
    params.gamma = fwl_opts.gamma;
    params.wl_depth = fwl_opts.depth;
    params.n_levels = fwl_opts.levels;
    const auto gram = filtration_gram(graphs, fwl_opts.inputs, params,
                                      !fwl_opts.superlevel, global.threads);
    emit(format_gram_csv(gram), fwl_opts.output);
  });

  // ---- nullmodel ----
  auto* null_cmd = app.add_subcommand("nullmodel",
                                      "randomized surrogate of a contact sequence");
  struct {
    std::string input;
    std::string output;
    std::string columns = "tuv";
    std::string model;
    double fraction = 0.05;
    double epsilon = 1.0;
    int steps = 20;
  } null_opts;
  null_cmd->add_option("input", null_opts.input, "contact file")->required();
  null_cmd->add_option("-o,--output", null_opts.output, "output path (default stdout)");
  null_cmd->add_option("--columns", null_opts.columns, "column order")
      ->check(CLI::IsMember({"tuv", "uvt"}))->capture_default_str();
  null_cmd->add_option("--model", null_opts.model,
                       "tp | ewlss | re | re-steps | cm")->required()
      ->check(CLI::IsMember({"tp", "ewlss", "re", "re-steps", "cm"}));
  null_cmd->add_option("--fraction", null_opts.fraction, "share of contacts shifted (tp)")
      ->capture_default_str();
  null_cmd->add_option("--epsilon", null_opts.epsilon, "|shift| bound (tp)")
      ->capture_default_str();
  null_cmd->add_option("--steps", null_opts.steps,
                       "swap / exchange count (ewlss, re-steps)")->capture_default_str();
  null_cmd->callback([&] {
    const auto g = read_contact_sequence(null_opts.input,
                                         column_order_from_string(null_opts.columns));
    Rng rng(global.seed, global.stream);
    TemporalGraph out;
    if (null_opts.model == "tp")
      out = tp_perturb(g, null_opts.fraction, null_opts.epsilon, rng);
    else if (null_opts.model == "ewlss")
      out = ewlss_shuffle(g, null_opts.steps, rng);
    else if (null_opts.model == "re")
      out = re_shuffle(g, rng);
    else if (null_opts.model == "re-steps")
      out = re_exchange_steps(g, null_opts.steps, rng);
    else
      out = cm_rewire(g, rng);
    emit(format_contact_sequence(out), null_opts.output);
  });

  // ---- generate ----
  auto* gen_cmd = app.add_subcommand("generate", "synthetic temporal graphs");
  gen_cmd->require_subcommand(1);

  auto* rand_cmd = gen_cmd->add_subcommand("random", "uniform pairs, one contact each");
  RandomGraphSpec rand_spec;
  std::string rand_out;
  rand_cmd->add_option("-o,--output", rand_out, "output path (default stdout)");
  rand_cmd->add_option("--vertices", rand_spec.n_vertices)->capture_default_str();
  rand_cmd->add_option("--sparsity", rand_spec.sparsity,
                       "filled share of vertex pairs")->capture_default_str();
  rand_cmd->add_option("--t-min", rand_spec.t_min)->capture_default_str();
  rand_cmd->add_option("--t-max", rand_spec.t_max)->capture_default_str();
  rand_cmd->callback([&] {
    const auto g = random_temporal_graph(rand_spec, Rng(global.seed, global.stream));
    emit(format_contact_sequence(g), rand_out);
  });

  auto* contact_cmd = gen_cmd->add_subcommand(
      "contact", "heavy-tailed activity model with degree mixing");
  ContactModelSpec contact_spec;
  std::string contact_out;
  std::string contact_mixing = "assortative";
  contact_cmd->add_option("-o,--output", contact_out, "output path (default stdout)");
  contact_cmd->add_option("--vertices", contact_spec.n_vertices)->capture_default_str();
  contact_cmd->add_option("--edges", contact_spec.n_temporal_edges, "contact count")
      ->capture_default_str();
  contact_cmd->add_option("--mixing", contact_mixing, "assortative | disassortative")
      ->check(CLI::IsMember({"assortative", "disassortative"}))->capture_default_str();
  contact_cmd->add_option("--mixing-strength", contact_spec.mixing_strength)
      ->capture_default_str();
  contact_cmd->add_option("--t-min", contact_spec.t_min)->capture_default_str();
  contact_cmd->add_option("--t-max", contact_spec.t_max)->capture_default_str();
  contact_cmd->callback([&] {
    contact_spec.mixing = mixing_from_string(contact_mixing);
    const auto result =
        synthetic_contact_graph(contact_spec, Rng(global.seed, global.stream));
    if (!result.aggregate_connected)
      std::cerr << "warning: aggregate graph is not connected\n";
    emit(format_contact_sequence(result.graph), contact_out);
  });

  // ---- experiment ----
  auto* exp_cmd = app.add_subcommand("experiment",
                                     "classify null-model populations end to end");
  struct {
    std::string spec_path;
    std::string output;
  } exp_opts;
  exp_cmd->add_option("spec", exp_opts.spec_path, "experiment spec file")->required();
  exp_cmd->add_option("-o,--output", exp_opts.output, "report csv path");
  exp_cmd->callback([&] {
    auto spec = parse_experiment_spec(read_text_file(exp_opts.spec_path),
                                      exp_opts.spec_path);
    if (!seed_opt->empty()) spec.seed = global.seed;
    std::cerr << "resolved configuration:\n" << format_experiment_spec(spec) << "\n";
    const auto log = [&](const std::string& msg) { std::cerr << msg << "\n"; };
    const auto result = run_experiment(spec, global.threads, log);

    std::ostringstream table;
    table << "run accuracy\n";
    std::ostringstream csv;
    csv << "run,accuracy\n";
    for (std::size_t i = 0; i < result.run_accuracies.size(); ++i) {
      table << i << " " << format_double(result.run_accuracies[i]) << "\n";
      csv << i << "," << format_double(result.run_accuracies[i]) << "\n";
    }
    table << "mean " << format_double(result.mean) << "\n"
          << "stdev " << format_double(result.stdev) << "\n";
    csv << "mean," << format_double(result.mean) << "\n"
        << "stdev," << format_double(result.stdev) << "\n";
    std::cout << table.str();
    if (!exp_opts.output.empty()) write_text_file(exp_opts.output, csv.str());
  });

  for (auto* sub : {stats_cmd, filt_cmd, pers_cmd, kernel_cmd, pss_cmd, fwl_cmd,
                    null_cmd, gen_cmd, rand_cmd, contact_cmd, exp_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 66;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 66;
  } catch (const ValueError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 69;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
  return 0;
}
