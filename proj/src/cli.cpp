// SPDX-License-Identifier: Apache-2.0
#include "linwidth/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "linwidth/digest.hpp"
#include "linwidth/errors.hpp"
#include "linwidth/fullset.hpp"
#include "linwidth/graph.hpp"
#include "linwidth/linking.hpp"
#include "linwidth/matroid.hpp"
#include "linwidth/obstruct.hpp"

namespace linwidth {

namespace {

using nlohmann::json;

struct Input {
  std::string name;
  std::string text;
};

Input read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return {"<stdin>", os.str()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return {path, os.str()};
}

/// A graph argument is a file when one exists at that path, else graph6.
Input read_graph_arg(const std::string& arg) {
  if (arg == "-" || std::filesystem::is_regular_file(arg)) return read_file(arg);
  return {"graph6", arg};
}

/// Non-empty pieces between separators; spaces are dropped unless kept.
std::vector<std::string> split(const std::string& s, char sep, bool keep_spaces = false) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ' || keep_spaces) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

/// 1-based vertex numbers, comma separated.
Mask vertex_set(const std::string& s, std::size_t n) {
  Mask m = 0;
  for (const auto& tok : split(s, ',')) {
    std::size_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoul(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError("'" + tok + "' is not a vertex number");
    }
    if (v < 1 || v > n) throw InputError("vertex " + tok + " out of range 1.." + std::to_string(n));
    m |= bit(v - 1);
  }
  return m;
}

std::vector<std::size_t> vertices_of(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 32; ++i) {
    if (m >> i & 1) out.push_back(i + 1);
  }
  return out;
}

struct Common {
  std::size_t budget_n = 9;
  unsigned workers = 1;
  std::uint64_t seed = 1;
  int k = 0;
  std::vector<unsigned> field;
};

class Manifest {
 public:
  Manifest(std::string subcommand, const Common& c) : subcommand_(std::move(subcommand)), common_(c) {}
  void input(const Input& in) { inputs_.push_back({{"name", in.name}, {"sha256", sha256_hex(in.text)}}); }
  void budget(const std::string& key, json value) { budgets_[key] = std::move(value); }
  json to_json() const {
    json budgets = budgets_;
    budgets["budget_n"] = common_.budget_n;
    return {{"tool", "linwidth"},
            {"version", kToolVersion},
            {"subcommand", subcommand_},
            {"inputs", inputs_},
            {"budgets", budgets},
            {"seed", common_.seed}};
  }

 private:
  std::string subcommand_;
  const Common& common_;
  json inputs_ = json::array();
  json budgets_ = json::object();
};

SearchOptions search_options(const Common& c) {
  SearchOptions o;
  o.budget = c.budget_n;
  o.workers = c.workers;
  return o;
}

unsigned field_order(const Common& c, unsigned q) {
  if (c.field.empty()) return q;
  if (c.field.size() != 2) throw InputError("--field expects p m");
  return Field::make(c.field[0], c.field[1])->order();
}

void emit(std::ostream& out, json body, const Manifest& m) {
  body["manifest"] = m.to_json();
  out << body.dump(2) << "\n";
}

json labels_json(const std::vector<std::string>& labels, const Layout& layout) {
  json j = json::array();
  for (auto i : layout) j.push_back(labels[i]);
  return j;
}

Layout parse_layout(const std::string& text, const std::vector<std::string>& labels) {
  Layout layout;
  for (const auto& tok : split(text, ',')) {
    auto it = std::find(labels.begin(), labels.end(), tok);
    if (it == labels.end()) throw InputError("unknown element '" + tok + "' in layout");
    layout.push_back(static_cast<std::size_t>(it - labels.begin()));
  }
  validate_layout(layout, labels.size());
  return layout;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear width computations for matroids and graphs", "linwidth"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Common c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--budget-n", c.budget_n, "largest ground set searched exhaustively")->capture_default_str();
    sub->add_option("--workers", c.workers, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    sub->add_option("--seed", c.seed, "seed for randomised orders")->capture_default_str();
  };

  std::string file, graph_arg, layout_text, s_text, t_text, part_text, basis_text, edges_text, out_dir;
  std::string kind_text = "graph";
  bool graph_mode = false, definitional = false;
  unsigned q = 2, h = 0;
  std::size_t ell = 4;
  std::size_t max_rank = 4;
  std::size_t max_size = 0;
  std::string ell_text = "4";

  auto* pathwidth = app.add_subcommand("pathwidth", "path-width of a configuration file");
  pathwidth->add_option("file", file, "configuration file")->required();
  add_common(pathwidth);

  auto* lrw = app.add_subcommand("lrw", "linear rank-width of a graph");
  lrw->add_option("graph", graph_arg, "graph6 string or graph file")->required();
  add_common(lrw);

  auto* linked = app.add_subcommand("linked", "verify or emit a linked optimal layout");
  linked->add_option("input", file, "configuration file, or graph with --graph")->required();
  linked->add_flag("--graph", graph_mode, "input is a graph");
  linked->add_option("--layout", layout_text, "comma-separated layout to verify");
  add_common(linked);

  auto* fullset = app.add_subcommand("fullset", "full set of a part of a configuration");
  fullset->add_option("input", file, "configuration file, or graph with --graph")->required();
  fullset->add_flag("--graph", graph_mode, "use the subspace arrangement of a graph");
  fullset->add_option("--k", c.k, "width bound")->required();
  fullset->add_option("--part", part_text, "comma-separated labels of the part (default: all)");
  fullset->add_option("--basis", basis_text, "basis of B as rows 'x1 x2 ...;...' (default: boundary of the part)");
  fullset->add_flag("--definitional", definitional, "filter all compact trajectories literally");
  add_common(fullset);

  auto* link = app.add_subcommand("link", "linking certificate between S and T");
  link->add_option("input", file, "configuration file, or graph with --graph")->required();
  link->add_flag("--graph", graph_mode, "input is a graph");
  link->add_option("--S", s_text, "comma-separated labels")->required();
  link->add_option("--T", t_text, "comma-separated labels")->required();
  add_common(link);

  auto* pivot_cmd = app.add_subcommand("pivot", "apply a pivot sequence to a graph");
  pivot_cmd->add_option("graph", graph_arg, "graph6 string or graph file")->required();
  pivot_cmd->add_option("--edges", edges_text, "pivot edges 'u-v,u-v' (1-based)")->required();
  add_common(pivot_cmd);

  auto* obstruct = app.add_subcommand("obstruct", "search excluded minors or pivot-minors");
  obstruct->add_option("--kind", kind_text, "graph or matroid")->capture_default_str();
  obstruct->add_option("--k", c.k, "width bound")->required();
  obstruct->add_option("--max-size", max_size, "largest object size")->required();
  obstruct->add_option("--max-rank", max_rank, "ambient dimension for matroids")->capture_default_str();
  obstruct->add_option("--field", c.field, "field p m (matroids: GF(2) only)")->expected(2);
  obstruct->add_option("--out", out_dir, "directory for the certificate database");
  add_common(obstruct);

  auto* bounds = app.add_subcommand("bounds", "exact values of the bound formulas");
  bounds->add_option("--k", c.k, "width bound")->capture_default_str();
  bounds->add_option("--q", q, "field order")->capture_default_str();
  bounds->add_option("--field", c.field, "field p m (overrides --q)")->expected(2);
  bounds->add_option("--ell", ell_text, "ell for the threshold formula")->capture_default_str();
  bounds->add_option("--height", h, "height for the threshold formula")->capture_default_str();
  add_common(bounds);

  auto* reenact = app.add_subcommand("reenact", "run the excluded-minor argument step by step");
  reenact->add_option("input", file, "configuration file, or graph with --graph")->required();
  reenact->add_flag("--graph", graph_mode, "input is a graph");
  reenact->add_option("--k", c.k, "width bound")->required();
  reenact->add_option("--ell", ell, "number of equal cuts requested")->capture_default_str();
  add_common(reenact);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (c.k < 0) throw InputError("--k must be non-negative");
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    Manifest manifest(name, c);

    auto load_config = [&]() {
      const auto in = read_file(file);
      manifest.input(in);
      return parse_configuration(in.text);
    };
    auto load_graph = [&](const std::string& arg) {
      const auto in = read_graph_arg(arg);
      manifest.input(in);
      return parse_graph(in.text);
    };

    if (name == "pathwidth") {
      const auto a = load_config();
      const auto r = path_width(connectivity(a), search_options(c));
      emit(out, {{"pathwidth", r.width}, {"layout", labels_json(a.labels(), r.layout)}}, manifest);
    } else if (name == "lrw") {
      const auto g = load_graph(graph_arg);
      const auto r = linear_rank_width(g, search_options(c));
      emit(out, {{"graph6", to_graph6(g)}, {"lrw", r.width}, {"layout", labels_json(g.labels(), r.layout)}},
           manifest);
    } else if (name == "linked") {
      ConnectivityFunction f;
      if (graph_mode) {
        f = cut_rank_function(load_graph(file));
      } else {
        f = connectivity(load_config());
      }
      json body;
      if (!layout_text.empty()) {
        const auto layout = parse_layout(layout_text, f.labels());
        const int best = path_width(f, search_options(c)).width;
        body = {{"layout", labels_json(f.labels(), layout)},
                {"width", width(f, layout)},
                {"optimal", width(f, layout) == best},
                {"linked", is_linked(f, layout)},
                {"profile", cut_profile(f, layout)}};
      } else {
        const auto layout = find_linked_optimal(f, search_options(c));
        body = {{"layout", labels_json(f.labels(), layout)},
                {"width", width(f, layout)},
                {"optimal", true},
                {"linked", true},
                {"profile", cut_profile(f, layout)}};
      }
      emit(out, body, manifest);
    } else if (name == "fullset") {
      SubspaceArrangement v;
      if (graph_mode) {
        v = arrangement_of(load_graph(file));
      } else {
        v = SubspaceArrangement::from_configuration(load_config());
      }
      Mask part = v.ground();
      if (!part_text.empty()) {
        if (graph_mode) {
          part = vertex_set(part_text, v.size());
        } else {
          part = 0;
          for (const auto& l : split(part_text, ',')) {
            auto it = std::find(v.labels().begin(), v.labels().end(), l);
            if (it == v.labels().end()) throw InputError("unknown element '" + l + "'");
            part |= bit(static_cast<std::size_t>(it - v.labels().begin()));
          }
        }
      }
      Subspace b;
      if (basis_text.empty()) {
        b = boundary(v, part);
      } else {
        std::vector<Vector> rows;
        for (const auto& row : split(basis_text, ';', true)) {
          Vector x;
          std::istringstream is(row);
          long long e = 0;
          while (is >> e) {
            if (e < 0 || !v.field()->contains(static_cast<std::uint64_t>(e))) {
              throw InputError("basis entry " + std::to_string(e) + " is not a field element");
            }
            x.push_back(static_cast<Scalar>(e));
          }
          if (x.size() != v.ambient()) throw InputError("basis rows must have " + std::to_string(v.ambient()) + " entries");
          rows.push_back(x);
        }
        b = Subspace::span(v.field(), v.ambient(), rows);
      }
      FullSetOptions opts;
      opts.layout_budget = c.budget_n;
      opts.definitional = definitional;
      manifest.budget("layout_budget", opts.layout_budget);
      manifest.budget("max_members", opts.max_members);
      const auto fs = full_set(v.restrict(part), b, c.k, opts);
      emit(out, {{"fullset", to_json(fs)}, {"size", fs.members.size()}}, manifest);
    } else if (name == "link") {
      if (graph_mode) {
        const auto g = load_graph(file);
        const Mask s = vertex_set(s_text, g.size()), t = vertex_set(t_text, g.size());
        const auto m = min_connectivity(cut_rank_function(g), s, t);
        const auto w = oum_linking_minor(g, s, t);
        json pivots = json::array();
        for (const auto& [u, x] : w.pivots) pivots.push_back({u + 1, x + 1});
        emit(out,
             {{"k", m.k},
              {"argmin", vertices_of(m.argmin)},
              {"pivots", pivots},
              {"minor", to_graph6(w.h)},
              {"S_in_minor", vertices_of(w.s_in_h)}},
             manifest);
      } else {
        const auto a = load_config();
        const Mask s = a.mask_of(split(s_text, ',')), t = a.mask_of(split(t_text, ','));
        const auto m = min_connectivity(a, s, t);
        const auto w = linking_minor(a, s, t);
        emit(out, linking_certificate(a, m, w), manifest);
      }
    } else if (name == "pivot") {
      Graph g = load_graph(graph_arg);
      json applied = json::array();
      for (const auto& e : split(edges_text, ',')) {
        const auto ends = split(e, '-');
        if (ends.size() != 2) throw InputError("pivot edge '" + e + "' must look like u-v");
        const Mask uv = vertex_set(ends[0] + "," + ends[1], g.size());
        if (popcount(uv) != 2) throw InputError("pivot edge '" + e + "' needs two distinct vertices");
        const auto vs = vertices_of(uv);
        g = pivot(g, vs[0] - 1, vs[1] - 1);
        applied.push_back({vs[0], vs[1]});
      }
      emit(out, {{"pivots", applied}, {"graph6", to_graph6(g)}, {"graph", to_json(g)}}, manifest);
    } else if (name == "obstruct") {
      ObstructionSearch search;
      search.kind = parse_obstruction_kind(kind_text);
      search.k = c.k;
      search.max_size = max_size;
      search.max_rank = max_rank;
      search.workers = c.workers;
      search.seed = c.seed;
      if (search.kind == ObstructionKind::Matroid && field_order(c, 2) != 2) {
        throw InputError("matroid obstruction search supports GF(2) only");
      }
      manifest.budget("max_size", search.max_size);
      if (search.kind == ObstructionKind::Matroid) manifest.budget("max_rank", search.max_rank);
      const auto certs = search_obstructions(search);
      json list = json::array();
      for (const auto& cert : certs) {
        list.push_back({{"id", cert.id()}, {"object", cert.object}, {"size", cert.size}, {"width", cert.width}});
      }
      json body{{"kind", to_string(search.kind)},
                {"k", search.k},
                {"count", certs.size()},
                {"certificates", list},
                {"digest", sha256_hex(certificates_digest_text(certs))}};
      if (!out_dir.empty()) write_certificate_db(out_dir, certs, manifest.to_json());
      emit(out, body, manifest);
    } else if (name == "bounds") {
      const unsigned order = field_order(c, q);
      const auto b = bound_constants(static_cast<unsigned>(c.k), order);
      BigInt ell_value;
      try {
        ell_value = BigInt(ell_text);
      } catch (const std::exception&) {
        throw InputError("--ell must be an integer");
      }
      const auto t = repeated_cuts_threshold(ell_value, h);
      json body = to_json(b);
      body["threshold"] = {{"ell", ell_value.str()}, {"h", h}, {"value", t.str()}};
      emit(out, body, manifest);
    } else if (name == "reenact") {
      PipelineOptions opts;
      opts.ell = ell;
      opts.fullset.layout_budget = c.budget_n;
      opts.scope.seed = c.seed;
      manifest.budget("ell", ell);
      PipelineReport report;
      std::vector<std::string> labels;
      if (graph_mode) {
        const auto g = load_graph(file);
        labels = g.labels();
        report = reenact_graph_pipeline(g, c.k, opts);
      } else {
        const auto a = load_config();
        labels = a.labels();
        report = reenact_main_pipeline(a, c.k, opts);
      }
      auto body = to_json(report);
      body["layout"] = labels_json(labels, report.layout);
      emit(out, body, manifest);
      if (!report.ok()) return kExitInternal;
    }
    return kExitOk;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimensionMismatch& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "file error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace linwidth
