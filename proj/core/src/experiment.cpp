#include "tempofilt/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "tempofilt/errors.hpp"
#include "tempofilt/filtration_kernel.hpp"
#include "tempofilt/null_models.hpp"
#include "tempofilt/parallel.hpp"
#include "tempofilt/pss_kernel.hpp"
#include "tempofilt/svm.hpp"

namespace tempofilt {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_num(const std::string& s, const std::string& origin, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ParseError(origin, line, "expected a number, got '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& origin, int line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing junk");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ParseError(origin, line, "expected an integer, got '" + s + "'");
  }
}

std::uint64_t parse_u64(const std::string& s, const std::string& origin,
                        int line) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ParseError(origin, line, "expected an unsigned integer, got '" + s + "'");
  }
}

bool parse_bool(const std::string& s, const std::string& origin, int line) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ParseError(origin, line, "expected a boolean, got '" + s + "'");
}

ClassPlan::Rep rep_from_string(const std::string& s, const std::string& origin,
                               int line) {
  if (s == "root") return ClassPlan::Rep::Root;
  if (s == "cm") return ClassPlan::Rep::Cm;
  if (s == "tp-shift") return ClassPlan::Rep::TpShift;
  throw ParseError(origin, line, "unknown representative kind '" + s + "'");
}

ClassPlan::Pop pop_from_string(const std::string& s, const std::string& origin,
                               int line) {
  if (s == "re") return ClassPlan::Pop::Re;
  if (s == "tp") return ClassPlan::Pop::Tp;
  if (s == "ewlss") return ClassPlan::Pop::Ewlss;
  if (s == "cm") return ClassPlan::Pop::Cm;
  throw ParseError(origin, line, "unknown population model '" + s + "'");
}

std::string rep_to_string(ClassPlan::Rep r) {
  switch (r) {
    case ClassPlan::Rep::Root: return "root";
    case ClassPlan::Rep::Cm: return "cm";
    case ClassPlan::Rep::TpShift: return "tp-shift";
  }
  return "?";
}

std::string pop_to_string(ClassPlan::Pop p) {
  switch (p) {
    case ClassPlan::Pop::Re: return "re";
    case ClassPlan::Pop::Tp: return "tp";
    case ClassPlan::Pop::Ewlss: return "ewlss";
    case ClassPlan::Pop::Cm: return "cm";
  }
  return "?";
}

// "class = rep=root pop=re count=20" with an optional repeat=k token
void parse_class_line(const std::string& value, const std::string& origin,
                      int line, std::vector<ClassPlan>& out) {
  ClassPlan plan;
  int repeat = 1;
  std::istringstream tokens(value);
  std::string tok;
  while (tokens >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ParseError(origin, line, "class token '" + tok + "' is not key=value");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "rep") plan.rep = rep_from_string(val, origin, line);
    else if (key == "pop") plan.pop = pop_from_string(val, origin, line);
    else if (key == "count") plan.count = parse_int(val, origin, line);
    else if (key == "re_steps") plan.re_steps = parse_int(val, origin, line);
    else if (key == "ewlss_swaps") plan.ewlss_swaps = parse_int(val, origin, line);
    else if (key == "tp_fraction") plan.tp_fraction = parse_num(val, origin, line);
    else if (key == "tp_eps_min") plan.tp_eps_min = parse_num(val, origin, line);
    else if (key == "tp_eps_max") plan.tp_eps_max = parse_num(val, origin, line);
    else if (key == "rep_fraction") plan.rep_fraction = parse_num(val, origin, line);
    else if (key == "rep_eps_min") plan.rep_eps_min = parse_num(val, origin, line);
    else if (key == "rep_eps_max") plan.rep_eps_max = parse_num(val, origin, line);
    else if (key == "repeat") repeat = parse_int(val, origin, line);
    else throw ParseError(origin, line, "unknown class token '" + key + "'");
  }
  if (plan.count < 1) throw ParseError(origin, line, "class count must be positive");
  if (repeat < 1) throw ParseError(origin, line, "repeat must be positive");
  for (int r = 0; r < repeat; ++r) out.push_back(plan);
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& text,
                                     const std::string& origin) {
  ExperimentSpec spec;
  spec.classes.clear();

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError(origin, line_no, "unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section != "root" && section != "classes" && section != "pipeline" &&
          section != "kernel" && section != "svm" && section != "evaluation")
        throw ParseError(origin, line_no, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(origin, line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ParseError(origin, line_no, "key '" + key + "' outside any section");

    if (section == "root") {
      if (key == "kind") {
        if (value == "file") spec.root.kind = RootSpec::Kind::File;
        else if (value == "random") spec.root.kind = RootSpec::Kind::Random;
        else if (value == "contact") spec.root.kind = RootSpec::Kind::Contact;
        else throw ParseError(origin, line_no, "unknown root kind '" + value + "'");
      } else if (key == "path") {
        spec.root.path = value;
      } else if (key == "columns") {
        spec.root.columns = column_order_from_string(value);
      } else if (key == "vertices") {
        const int n = parse_int(value, origin, line_no);
        spec.root.random.n_vertices = n;
        spec.root.contact.n_vertices = n;
      } else if (key == "sparsity") {
        spec.root.random.sparsity = parse_num(value, origin, line_no);
      } else if (key == "edges") {
        spec.root.contact.n_temporal_edges = parse_int(value, origin, line_no);
      } else if (key == "mixing") {
        spec.root.contact.mixing = mixing_from_string(value);
      } else if (key == "mixing_strength") {
        spec.root.contact.mixing_strength = parse_num(value, origin, line_no);
      } else if (key == "t_min") {
        const double t = parse_num(value, origin, line_no);
        spec.root.random.t_min = t;
        spec.root.contact.t_min = t;
      } else if (key == "t_max") {
        const double t = parse_num(value, origin, line_no);
        spec.root.random.t_max = t;
        spec.root.contact.t_max = t;
      } else {
        throw ParseError(origin, line_no, "unknown key '" + key + "' in [root]");
      }
    } else if (section == "classes") {
      if (key == "class") parse_class_line(value, origin, line_no, spec.classes);
      else throw ParseError(origin, line_no, "unknown key '" + key + "' in [classes]");
    } else if (section == "pipeline") {
      if (key == "kind") {
        if (value == "ph") spec.pipeline = PipelineKind::PersistentHomology;
        else if (value == "fwl") spec.pipeline = PipelineKind::FiltrationWl;
        else throw ParseError(origin, line_no, "unknown pipeline '" + value + "'");
      } else if (key == "filtration") {
        spec.filtration = filtration_method_from_string(value);
      } else {
        throw ParseError(origin, line_no, "unknown key '" + key + "' in [pipeline]");
      }
    } else if (section == "kernel") {
      if (key == "sigma") spec.kernel.sigma = parse_num(value, origin, line_no);
      else if (key == "gamma") spec.kernel.gamma = parse_num(value, origin, line_no);
      else if (key == "wl_depth") spec.kernel.wl_depth = parse_int(value, origin, line_no);
      else if (key == "levels") spec.kernel.n_levels = parse_int(value, origin, line_no);
      else if (key == "essential_cap_factor")
        spec.kernel.essential_cap_factor = parse_num(value, origin, line_no);
      else if (key == "essential_cap")
        spec.kernel.essential_cap_override = parse_num(value, origin, line_no);
      else if (key == "persistence_threshold")
        spec.kernel.persistence_threshold = parse_num(value, origin, line_no);
      else if (key == "degree_weights") {
        std::istringstream ws(value);
        std::string part;
        int idx = 0;
        while (std::getline(ws, part, ',')) {
          if (idx >= 3) throw ParseError(origin, line_no, "degree_weights takes 3 values");
          spec.kernel.degree_weights[idx++] = parse_num(trim(part), origin, line_no);
        }
        if (idx != 3) throw ParseError(origin, line_no, "degree_weights takes 3 values");
      } else {
        throw ParseError(origin, line_no, "unknown key '" + key + "' in [kernel]");
      }
    } else if (section == "svm") {
      if (key == "c") spec.svm_c = parse_num(value, origin, line_no);
      else if (key == "grid_search") spec.grid_search = parse_bool(value, origin, line_no);
      else throw ParseError(origin, line_no, "unknown key '" + key + "' in [svm]");
    } else {  // evaluation
      if (key == "test_fraction") spec.test_fraction = parse_num(value, origin, line_no);
      else if (key == "runs") spec.n_runs = parse_int(value, origin, line_no);
      else if (key == "seed") spec.seed = parse_u64(value, origin, line_no);
      else if (key == "regenerate_per_run")
        spec.regenerate_per_run = parse_bool(value, origin, line_no);
      else throw ParseError(origin, line_no, "unknown key '" + key + "' in [evaluation]");
    }
  }

  if (spec.classes.empty())
    throw ParseError(origin, line_no, "no classes defined");
  if (spec.root.kind == RootSpec::Kind::File && spec.root.path.empty())
    throw ParseError(origin, line_no, "root kind 'file' needs a path");
  return spec;
}

std::string format_experiment_spec(const ExperimentSpec& spec) {
  std::ostringstream out;
  out << "[root]\n";
  switch (spec.root.kind) {
    case RootSpec::Kind::File:
      out << "kind = file\npath = " << spec.root.path << "\ncolumns = "
          << (spec.root.columns == ColumnOrder::TUV ? "tuv" : "uvt") << "\n";
      break;
    case RootSpec::Kind::Random:
      out << "kind = random\nvertices = " << spec.root.random.n_vertices
          << "\nsparsity = " << format_double(spec.root.random.sparsity)
          << "\nt_min = " << format_double(spec.root.random.t_min)
          << "\nt_max = " << format_double(spec.root.random.t_max) << "\n";
      break;
    case RootSpec::Kind::Contact:
      out << "kind = contact\nvertices = " << spec.root.contact.n_vertices
          << "\nedges = " << spec.root.contact.n_temporal_edges
          << "\nmixing = " << to_string(spec.root.contact.mixing)
          << "\nmixing_strength = " << format_double(spec.root.contact.mixing_strength)
          << "\nt_min = " << format_double(spec.root.contact.t_min)
          << "\nt_max = " << format_double(spec.root.contact.t_max) << "\n";
      break;
  }
  out << "\n[classes]\n";
  for (const auto& p : spec.classes) {
    out << "class = rep=" << rep_to_string(p.rep) << " pop=" << pop_to_string(p.pop)
        << " count=" << p.count;
    if (p.pop == ClassPlan::Pop::Re) out << " re_steps=" << p.re_steps;
    if (p.pop == ClassPlan::Pop::Ewlss) out << " ewlss_swaps=" << p.ewlss_swaps;
    if (p.pop == ClassPlan::Pop::Tp)
      out << " tp_fraction=" << format_double(p.tp_fraction)
          << " tp_eps_min=" << format_double(p.tp_eps_min)
          << " tp_eps_max=" << format_double(p.tp_eps_max);
    if (p.rep == ClassPlan::Rep::TpShift)
      out << " rep_fraction=" << format_double(p.rep_fraction)
          << " rep_eps_min=" << format_double(p.rep_eps_min)
          << " rep_eps_max=" << format_double(p.rep_eps_max);
    out << "\n";
  }
  out << "\n[pipeline]\nkind = "
      << (spec.pipeline == PipelineKind::PersistentHomology ? "ph" : "fwl")
      << "\nfiltration = " << to_string(spec.filtration) << "\n";
  out << "\n[kernel]\n";
  if (spec.pipeline == PipelineKind::PersistentHomology) {
    out << "sigma = " << format_double(spec.kernel.sigma)
        << "\nessential_cap_factor = " << format_double(spec.kernel.essential_cap_factor);
    if (!std::isnan(spec.kernel.essential_cap_override))
      out << "\nessential_cap = " << format_double(spec.kernel.essential_cap_override);
    out << "\npersistence_threshold = "
        << format_double(spec.kernel.persistence_threshold) << "\ndegree_weights = "
        << format_double(spec.kernel.degree_weights[0]) << ","
        << format_double(spec.kernel.degree_weights[1]) << ","
        << format_double(spec.kernel.degree_weights[2]) << "\n";
  } else {
    out << "gamma = " << format_double(spec.kernel.gamma)
        << "\nwl_depth = " << spec.kernel.wl_depth
        << "\nlevels = " << spec.kernel.n_levels << "\n";
  }
  out << "\n[svm]\nc = " << format_double(spec.svm_c)
      << "\ngrid_search = " << (spec.grid_search ? "true" : "false") << "\n";
  out << "\n[evaluation]\ntest_fraction = " << format_double(spec.test_fraction)
      << "\nruns = " << spec.n_runs << "\nseed = " << spec.seed
      << "\nregenerate_per_run = " << (spec.regenerate_per_run ? "true" : "false")
      << "\n";
  return out.str();
}

namespace {

TemporalGraph make_representative(const TemporalGraph& root,
                                  const ClassPlan& plan, Rng rng) {
  switch (plan.rep) {
    case ClassPlan::Rep::Root:
      return root;
    case ClassPlan::Rep::Cm:
      return cm_rewire(root, rng);
    case ClassPlan::Rep::TpShift: {
      const double eps = rng.range(plan.rep_eps_min, plan.rep_eps_max);
      return tp_perturb(root, plan.rep_fraction, eps, rng);
    }
  }
  throw ValueError("bad representative kind");
}

TemporalGraph make_member(const TemporalGraph& rep, const ClassPlan& plan,
                          Rng rng) {
  switch (plan.pop) {
    case ClassPlan::Pop::Re:
      return re_exchange_steps(rep, plan.re_steps, rng);
    case ClassPlan::Pop::Tp: {
      const double eps = rng.range(plan.tp_eps_min, plan.tp_eps_max);
      return tp_perturb(rep, plan.tp_fraction, eps, rng);
    }
    case ClassPlan::Pop::Ewlss:
      return ewlss_shuffle(rep, plan.ewlss_swaps, rng);
    case ClassPlan::Pop::Cm:
      return cm_rewire(rep, rng);
  }
  throw ValueError("bad population model");
}

}  // namespace

LabeledDataset populate_classes(const TemporalGraph& root,
                                const std::vector<ClassPlan>& plans, Rng rng) {
  LabeledDataset out;
  for (std::size_t c = 0; c < plans.size(); ++c) {
    const auto& plan = plans[c];
    Rng class_rng = rng.derive(c + 1);
    const TemporalGraph rep = make_representative(root, plan, class_rng.derive(0));
    for (int m = 0; m < plan.count; ++m) {
      out.graphs.push_back(make_member(rep, plan, class_rng.derive(m + 1)));
      out.labels.push_back(static_cast<int>(c));
      out.provenance.push_back("class" + std::to_string(c) + "/member" +
                               std::to_string(m));
    }
  }
  return out;
}

std::vector<FilteredGraph> apply_filtration_all(
    const std::vector<TemporalGraph>& graphs, FiltrationMethod method,
    int threads) {
  std::vector<FilteredGraph> out(graphs.size());
  parallel_for(graphs.size(), threads, [&](std::size_t i) {
    out[i] = apply_filtration(graphs[i], method);
  });
  return out;
}

GramMatrix ph_pipeline_gram(const std::vector<FilteredGraph>& filtered,
                            const std::vector<std::string>& ids,
                            const KernelConfig& config, int threads) {
  std::vector<PersistenceDiagram> diagrams(filtered.size());
  parallel_for(filtered.size(), threads, [&](std::size_t i) {
    PersistenceDiagram d = flag_persistence(filtered[i], 2);
    if (config.persistence_threshold > 0.0)
      d = threshold_diagram(d, config.persistence_threshold);
    diagrams[i] = std::move(d);
  });

  const double cap = std::isnan(config.essential_cap_override)
                         ? essential_cap(diagrams, config.essential_cap_factor)
                         : config.essential_cap_override;
  for (auto& d : diagrams) d = substitute_essentials(d, cap);

  PssParams params;
  params.sigma = config.sigma;
  for (int i = 0; i < 3; ++i) params.degree_weights[i] = config.degree_weights[i];
  return pss_gram(diagrams, ids, params, threads);
}

GramMatrix fwl_pipeline_gram(const std::vector<FilteredGraph>& filtered,
                             const std::vector<std::string>& ids,
                             const KernelConfig& config, bool sublevel_input,
                             int threads) {
  FwlParams params;
  params.gamma = config.gamma;
  params.wl_depth = config.wl_depth;
  params.n_levels = config.n_levels;
  return filtration_gram(filtered, ids, params, sublevel_input, threads);
}

namespace {

TemporalGraph make_root(const RootSpec& root, Rng rng, const LogFn& log) {
  switch (root.kind) {
    case RootSpec::Kind::File: {
      const std::string text = read_text_file(root.path);
      return parse_contact_sequence(text, root.columns, root.path);
    }
    case RootSpec::Kind::Random:
      return random_temporal_graph(root.random, rng);
    case RootSpec::Kind::Contact: {
      auto result = synthetic_contact_graph(root.contact, rng);
      if (!result.aggregate_connected && log)
        log("warning: contact root is not connected in aggregate");
      return std::move(result.graph);
    }
  }
  throw ValueError("bad root kind");
}

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

Split stratified_split(const std::vector<int>& labels, double fraction,
                       Rng rng) {
  std::vector<int> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  Split split;
  for (int cls : classes) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) members.push_back(i);
    rng.shuffle(members);

    const auto n_c = members.size();
    auto n_test = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(n_c)));
    if (fraction > 0.0 && n_c >= 2 && n_test == 0) n_test = 1;
    if (n_test >= n_c) n_test = n_c - 1;  // keep at least one training member
    split.test.insert(split.test.end(), members.begin(), members.begin() + n_test);
    split.train.insert(split.train.end(), members.begin() + n_test, members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

GramMatrix slice_gram(const GramMatrix& full,
                      const std::vector<std::size_t>& idx) {
  std::vector<std::string> ids;
  ids.reserve(idx.size());
  for (auto i : idx) ids.push_back(full.ids[i]);
  GramMatrix out = GramMatrix::zeros(ids);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      out.at(a, b) = full.at(idx[a], idx[b]);
  return out;
}

std::vector<std::vector<double>> cross_rows(const GramMatrix& full,
                                            const std::vector<std::size_t>& rows,
                                            const std::vector<std::size_t>& cols) {
  std::vector<std::vector<double>> out(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    out[a].resize(cols.size());
    for (std::size_t b = 0; b < cols.size(); ++b)
      out[a][b] = full.at(rows[a], cols[b]);
  }
  return out;
}

std::vector<int> pick_labels(const std::vector<int>& labels,
                             const std::vector<std::size_t>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(labels[i]);
  return out;
}

double evaluate_split(const GramMatrix& gram, const std::vector<int>& labels,
                      const Split& split, double c, const LogFn& log) {
  const GramMatrix train_gram = slice_gram(gram, split.train);
  const auto train_labels = pick_labels(labels, split.train);
  const auto warn = [&](const std::string& msg) {
    if (log) log("warning: " + msg);
  };
  const SvmModel model = svm_train(train_gram, train_labels, c, 1e-3, warn);
  const auto rows = cross_rows(gram, split.test, split.train);
  const auto predicted = svm_predict(model, rows);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < split.test.size(); ++i)
    if (predicted[i] == labels[split.test[i]]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(split.test.size());
}

// k-fold accuracy on the training block only
double cv_accuracy(const GramMatrix& gram, const std::vector<int>& labels,
                   const std::vector<std::size_t>& train, double c, Rng rng,
                   std::size_t n_folds) {
  std::vector<std::size_t> shuffled = train;
  rng.shuffle(shuffled);
  std::size_t correct = 0, total = 0;
  for (std::size_t f = 0; f < n_folds; ++f) {
    Split fold;
    for (std::size_t i = 0; i < shuffled.size(); ++i)
      (i % n_folds == f ? fold.test : fold.train).push_back(shuffled[i]);
    if (fold.test.empty() || fold.train.empty()) continue;
    std::sort(fold.train.begin(), fold.train.end());
    std::sort(fold.test.begin(), fold.test.end());
    total += fold.test.size();
    try {
      const double acc = evaluate_split(gram, labels, fold, c, nullptr);
      correct += static_cast<std::size_t>(
          std::llround(acc * static_cast<double>(fold.test.size())));
    } catch (const ValueError&) {
      // single-class fold: count its samples as misses
    }
  }
  return total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, int threads,
                                const LogFn& log) {
  if (spec.n_runs < 1) throw ValueError("need at least one run");
  if (spec.test_fraction <= 0.0 || spec.test_fraction >= 1.0)
    throw ValueError("test_fraction must lie in (0, 1)");
  if (spec.classes.size() < 2) throw ValueError("need at least two classes");
  for (const auto& p : spec.classes)
    if (p.count < 1) throw ValueError("class count must be positive");

  Rng master(spec.seed, 0);
  const TemporalGraph root = make_root(spec.root, master.derive(0), log);
  if (log)
    log("root graph: " + std::to_string(root.n_vertices()) + " vertices, " +
        std::to_string(root.edges().size()) + " contacts");

  const bool sublevel = is_sublevel_method(spec.filtration);
  auto build_gram = [&](const LabeledDataset& data, double scale) {
    auto filtered = apply_filtration_all(data.graphs, spec.filtration, threads);
    KernelConfig config = spec.kernel;
    if (spec.pipeline == PipelineKind::PersistentHomology) {
      config.sigma = scale;
      if (!sublevel) {
        // flip descending static values so the flag complex grows upward
        const double top = dataset_max_finite_value(filtered);
        for (auto& g : filtered) g = to_superlevel(g, top);
      }
      return ph_pipeline_gram(filtered, data.provenance, config, threads);
    }
    config.gamma = scale;
    return fwl_pipeline_gram(filtered, data.provenance, config, sublevel, threads);
  };
  const double base_scale = spec.pipeline == PipelineKind::PersistentHomology
                                ? spec.kernel.sigma
                                : spec.kernel.gamma;

  ExperimentResult result;
  result.svm_c = spec.svm_c;
  result.kernel_scale = base_scale;

  LabeledDataset data;
  GramMatrix gram;
  bool built = false;

  for (int run = 0; run < spec.n_runs; ++run) {
    Rng run_rng = master.derive(static_cast<std::uint64_t>(run) + 1);
    if (!built || spec.regenerate_per_run) {
      data = populate_classes(root, spec.classes, run_rng.derive(1));
      gram = build_gram(data, base_scale);
      built = true;
    }
    const Split split =
        stratified_split(data.labels, spec.test_fraction, run_rng.derive(2));
    if (split.test.empty()) throw ValueError("test split is empty");

    double used_c = spec.svm_c;
    double accuracy;
    if (spec.grid_search && split.train.size() >= 4) {
      const double c_grid[] = {0.01, 0.1, 1.0, 10.0, 100.0};
      const double scale_grid[] = {0.1, 1.0, 10.0};
      const std::size_t n_folds = std::min<std::size_t>(5, split.train.size());
      double best_score = -1.0, best_c = spec.svm_c, best_scale = base_scale;
      for (double scale : scale_grid) {
        const GramMatrix g = build_gram(data, scale);
        for (double c : c_grid) {
          const double score =
              cv_accuracy(g, data.labels, split.train, c, run_rng.derive(3), n_folds);
          if (score > best_score) {
            best_score = score;
            best_c = c;
            best_scale = scale;
          }
        }
      }
      used_c = best_c;
      result.svm_c = best_c;
      result.kernel_scale = best_scale;
      const GramMatrix g = build_gram(data, best_scale);
      accuracy = evaluate_split(g, data.labels, split, used_c, log);
      if (log)
        log("run " + std::to_string(run) + ": grid picked c=" +
            format_double(best_c) + " scale=" + format_double(best_scale));
    } else {
      accuracy = evaluate_split(gram, data.labels, split, used_c, log);
    }

    result.run_accuracies.push_back(accuracy);
    if (log)
      log("run " + std::to_string(run) + ": accuracy " + format_double(accuracy));
  }

  double sum = 0.0;
  for (double a : result.run_accuracies) sum += a;
  result.mean = sum / static_cast<double>(result.run_accuracies.size());
  double ss = 0.0;
  for (double a : result.run_accuracies) ss += (a - result.mean) * (a - result.mean);
  result.stdev = result.run_accuracies.size() > 1
                     ? std::sqrt(ss / static_cast<double>(result.run_accuracies.size() - 1))
                     : 0.0;
  return result;
}

}  // namespace tempofilt
