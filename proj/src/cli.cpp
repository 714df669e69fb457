#include "semifact/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "semifact/circuit_matrix.hpp"
#include "semifact/graph_io.hpp"
#include "semifact/labelling.hpp"
#include "semifact/verdict.hpp"
#include "semifact/zlinalg.hpp"

namespace semifact {

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;

DeciderMethod parse_method(const std::string& name) {
  if (name == "prime-forest") return DeciderMethod::PrimeForest;
  if (name == "snf") return DeciderMethod::Snf;
  if (name == "naive") return DeciderMethod::Naive;
  throw ValidationError("unknown method '" + name + "'");
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

void print_verdict_text(std::ostream& out, const Verdict& v) {
  out << "circuit-coprime: " << bool_str(v.circuit_coprime)
      << "; semi-factorial: " << bool_str(v.semi_factorial)
      << "; Néron lft-model: " << bool_str(v.neron_lft_model) << "\n";
  out << "method: " << method_name(v.method) << "\n";
  if (v.failure) {
    out << "witness: p = " << to_string(v.failure->prime) << ", circuit edges:";
    for (const std::string& e : v.failure->edges) out << " " << e;
    out << "\n";
  } else {
    out << "snf diagonal:";
    for (const Int& d : v.snf_diagonal) out << " " << to_string(d);
    out << "\n";
  }
}

int cmd_check(const std::string& file, const std::string& method, bool as_json,
              std::ostream& out) {
  auto t0 = std::chrono::steady_clock::now();
  GraphDocument doc = parse_graph_file(file);
  LabelledGraph g = doc.to_graph();
  Verdict v = decide(g, parse_method(method));
  if (as_json) {
    out << report_entry(file, doc, v, ms_since(t0)).dump(2) << "\n";
  } else {
    out << "graph: " << (doc.name.empty() ? file : doc.name) << "\n";
    print_verdict_text(out, v);
  }
  return kExitOk;
}

int cmd_matrices(const std::string& file, bool fundamental, bool labelled,
                 const std::string& tree_csv, std::ostream& out) {
  GraphDocument doc = parse_graph_file(file);
  LabelledGraph g = doc.to_graph();

  CircuitMatrixBundle bundle;
  if (fundamental || !tree_csv.empty()) {
    SpanningTree t;
    if (!tree_csv.empty()) {
      std::vector<std::string> ids;
      std::stringstream ss(tree_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) ids.push_back(tok);
      t = spanning_tree_from_edges(g, ids);
    } else {
      t = spanning_tree(g);
    }
    bundle = fundamental_circuit_matrix(g, t, labelled);
    out << "# tree:";
    for (Index e : t.tree_edges) out << " " << g.edge(e).id;
    out << "\n# links:";
    for (Index e : t.links) out << " " << g.edge(e).id;
    out << "\n";
  } else {
    bundle = circuit_matrix(g, labelled);
  }

  out << "# edges:";
  for (const std::string& id : bundle.edge_ids) out << " " << id;
  out << "\n";
  for (size_t i = 0; i < bundle.circuits.size(); ++i) {
    out << "# circuit " << i << ":";
    const Circuit& c = bundle.circuits[i];
    for (size_t k = 0; k < c.edges.size(); ++k)
      out << " " << (c.forward[k] ? "+" : "-") << g.edge(c.edges[k]).id;
    out << "\n";
  }
  out << format_matrix_text(bundle.matrix);
  return kExitOk;
}

int cmd_snf(const std::string& graph_file, const std::string& matrix_file, bool full,
            std::ostream& out) {
  IntMatrix m;
  if (!matrix_file.empty()) {
    m = parse_matrix_file(matrix_file);
  } else {
    GraphDocument doc = parse_graph_file(graph_file);
    LabelledGraph g = doc.to_graph();
    auto [gc, vmap] = contract_infinite(g);
    if (gc.nullity() == 0) {
      out << "diagonal:\n";
      return kExitOk;
    }
    m = fundamental_circuit_matrix(gc, spanning_tree(gc), true).matrix;
  }
  SnfDecomposition s = snf(m);
  out << "diagonal:";
  for (const Int& d : s.diagonal) out << " " << to_string(d);
  out << "\n";
  if (full) {
    out << "# left transform\n" << format_matrix_text(s.a);
    out << "# smith form\n" << format_matrix_text(s.d);
    out << "# right transform\n" << format_matrix_text(s.b);
  }
  return kExitOk;
}

int cmd_blowup(const std::string& file, int n, bool total, const std::string& out_path,
               std::ostream& out) {
  GraphDocument doc = parse_graph_file(file);
  LabelledGraph g = doc.to_graph();
  BlowupGraph b = total ? total_blowup(g) : nth_blowup(g, n);
  std::string suffix = total ? "/total" : "/blowup" + std::to_string(n);
  std::string text = serialize_graph_document(
      GraphDocument::from_graph(doc.name.empty() ? suffix : doc.name + suffix, b.graph));
  if (!out_path.empty())
    write_file(out_path, text);
  else
    out << text;
  return kExitOk;
}

int cmd_contract(const std::string& file, std::ostream& out) {
  GraphDocument doc = parse_graph_file(file);
  LabelledGraph g = doc.to_graph();
  auto [gc, vmap] = contract_infinite(g);
  ordered_json j;
  j["graph"] = ordered_json::parse(
      serialize_graph_document(GraphDocument::from_graph(doc.name + "/contracted", gc)));
  j["vertex_map"] = ordered_json::object();
  for (const auto& [from, to] : vmap) j["vertex_map"][from] = to;
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_group(const std::string& file, bool as_json, std::ostream& out) {
  GraphDocument doc = parse_graph_file(file);
  LabelledGraph g = doc.to_graph();
  ComponentGroup h = component_group(g);
  if (as_json) {
    ordered_json j;
    j["free_rank"] = h.free_rank;
    j["torsion"] = ordered_json::array();
    for (const Int& t : h.torsion) j["torsion"].push_back(to_string(t));
    out << j.dump(2) << "\n";
  } else {
    out << "free rank: " << h.free_rank << "\ntorsion:";
    for (const Int& t : h.torsion) out << " " << to_string(t);
    out << "\n";
  }
  return kExitOk;
}

int cmd_descend(const std::string& file, int n, bool total, const std::string& alpha_file,
                std::ostream& out) {
  GraphDocument doc = parse_graph_file(file);
  LabelledGraph g = doc.to_graph();
  BlowupGraph b = total ? total_blowup(g) : nth_blowup(g, n);
  VertexLabelling alpha = parse_labelling_file(alpha_file, b.graph);
  std::optional<VertexLabelling> phi = descent_solve(b, alpha);
  if (!phi) {
    out << "infeasible\n";
    return kExitInfeasible;
  }
  VertexLabelling push = pushforward_multidegree(b, alpha, *phi);
  ordered_json j;
  j["feasible"] = true;
  j["phi"] = ordered_json::parse(serialize_labelling(b.graph, *phi));
  j["pushforward"] = ordered_json::parse(serialize_labelling(b.base, push));
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_batch(const std::string& dir, const std::string& report_path, std::ostream& out) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ValidationError("'" + dir + "' is not a directory");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  ordered_json report;
  report["schema_version"] = "1";
  report["entries"] = ordered_json::array();
  for (const std::string& f : files) {
    auto t0 = std::chrono::steady_clock::now();
    GraphDocument doc = parse_graph_file(f);
    LabelledGraph g = doc.to_graph();
    Verdict v = semifactorial_verdict(g);
    report["entries"].push_back(report_entry(f, doc, v, ms_since(t0)));
  }
  std::string text = report.dump(2) + "\n";
  if (!report_path.empty())
    write_file(report_path, text);
  else
    out << text;
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"semi-factoriality toolkit for labelled dual graphs"};
  app.require_subcommand(1);

  std::string file, method = "prime-forest", tree_csv, matrix_file, out_path, alpha_file, dir,
              report_path;
  bool as_json = false, fundamental = false, labelled = false, full = false, total = false;
  int n = 0;

  CLI::App* check = app.add_subcommand("check", "decide circuit-coprimality / semi-factoriality");
  check->add_option("file", file, "graph JSON document")->required();
  check->add_option("--method", method, "prime-forest|snf|naive")->capture_default_str();
  check->add_flag("--json", as_json, "emit a JSON report entry");

  CLI::App* matrices = app.add_subcommand("matrices", "print circuit matrices");
  matrices->add_option("file", file, "graph JSON document")->required();
  matrices->add_flag("--fundamental", fundamental, "fundamental matrix over a spanning tree");
  matrices->add_flag("--labelled", labelled, "weigh columns by edge labels");
  matrices->add_option("--tree", tree_csv, "comma-separated spanning tree edge ids");

  CLI::App* snf_cmd = app.add_subcommand("snf", "Smith normal form");
  snf_cmd->add_option("file", file, "graph JSON document");
  snf_cmd->add_option("--matrix", matrix_file, "matrix text file instead of a graph");
  snf_cmd->add_flag("--full", full, "print transforms as well");

  CLI::App* blowup = app.add_subcommand("blowup", "blow-up graph");
  blowup->add_option("file", file, "graph JSON document")->required();
  blowup->add_option("--n", n, "blow-up level");
  blowup->add_flag("--total", total, "total blow-up");
  blowup->add_option("-o,--output", out_path, "write the result here");

  CLI::App* contract = app.add_subcommand("contract", "contract infinite edges");
  contract->add_option("file", file, "graph JSON document")->required();

  CLI::App* group = app.add_subcommand("group", "component group of the multidegree operator");
  group->add_option("file", file, "graph JSON document")->required();
  group->add_flag("--json", as_json, "emit JSON");

  CLI::App* descend = app.add_subcommand("descend", "solve the descent system on a blow-up");
  descend->add_option("file", file, "graph JSON document")->required();
  descend->add_option("--n", n, "blow-up level");
  descend->add_flag("--total", total, "use the total blow-up");
  descend->add_option("--alpha", alpha_file, "vertex labelling JSON (id -> integer)")->required();

  CLI::App* batch = app.add_subcommand("batch", "process a directory of graph documents");
  batch->add_option("dir", dir, "directory of *.json graph documents")->required();
  batch->add_option("--report", report_path, "write the JSON report here");

  try {
    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    app.name("semifact");
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (check->parsed()) return cmd_check(file, method, as_json, out);
    if (matrices->parsed()) return cmd_matrices(file, fundamental, labelled, tree_csv, out);
    if (snf_cmd->parsed()) {
      if (file.empty() && matrix_file.empty())
        throw ValidationError("snf needs a graph file or --matrix");
      return cmd_snf(file, matrix_file, full, out);
    }
    if (blowup->parsed()) {
      if (!total && n < 0) throw ValidationError("blow-up level must be >= 0");
      return cmd_blowup(file, n, total, out_path, out);
    }
    if (contract->parsed()) return cmd_contract(file, out);
    if (group->parsed()) return cmd_group(file, as_json, out);
    if (descend->parsed()) {
      if (!total && n < 0) throw ValidationError("blow-up level must be >= 0");
      return cmd_descend(file, n, total, alpha_file, out);
    }
    if (batch->parsed()) return cmd_batch(dir, report_path, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInfeasible;
  }
  err << "error: no subcommand\n";
  return kExitInput;
}

}  // namespace semifact
