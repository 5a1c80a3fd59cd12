#include "cli.hpp"

#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "toybit/binform.hpp"
#include "toybit/interpret.hpp"
#include "toybit/normalform.hpp"
#include "toybit/random.hpp"
#include "toybit/rewrite.hpp"
#include "toybit/textio.hpp"

namespace toybit::cli {

namespace {

/// A parse error with the file name in front: "file:line:column: message".
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Diagram load(const std::string& path, const std::string& format) {
  const std::string text = read_file(path);
  Format f = Format::Text;
  if (format == "tree") {
    f = Format::Tree;
  } else if (format.empty()) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') f = Format::Tree;
  }
  try {
    return parse_diagram(text, f);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
}

int cmd_interpret(const std::string& file, const std::string& format, std::ostream& out) {
  const Diagram d = load(file, format);
  out << interpret(d).to_string();
  return 0;
}

int cmd_normalize(const std::string& file, const std::string& format, bool reduced, std::ostream& out) {
  Diagram d = load(file, format);
  if (d.num_inputs() > 0) {
    out << "# " << d.num_inputs() << " inputs bent to outputs 0.." << d.num_inputs() - 1 << '\n';
    d = bend(d);
  }
  const auto g = to_gslo(d);
  if (!g) {
    out << "ZERO\n";
    return 0;
  }
  out << to_string(reduced ? to_rgslo(*g) : *g);
  return 0;
}

int cmd_eq(const std::string& f1, const std::string& f2, const std::string& format, bool witness, std::ostream& out) {
  const Diagram a = load(f1, format);
  const Diagram b = load(f2, format);
  const auto v = decide_equal(a, b);
  out << (v.equal ? "equal" : "not equal: " + v.reason) << '\n';
  if (witness && v.equal)
    for (const auto& s : v.witness) out << "  " << s << '\n';
  return v.equal ? 0 : 1;
}

int cmd_rules_check(std::size_t legs, std::uint64_t seed, std::ostream& out) {
  bool all = true;
  std::size_t width = 4;
  for (const auto& r : rule_set()) width = std::max(width, r.name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "rule" << "  checks  result\n";
  for (const auto& r : rule_set()) {
    const auto rep = check_soundness(r, legs);
    all = all && rep.ok();
    out << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << std::setw(6) << rep.checked << "  "
        << (rep.ok() ? "PASS" : "FAIL") << '\n';
    for (const auto& f : rep.failures) out << "    failing instance: " << f << '\n';
  }
  // whole diagrams under random rule applications
  std::mt19937_64 rng(seed);
  std::size_t bad = 0;
  const std::size_t trials = 100;
  for (std::size_t i = 0; i < trials; ++i) {
    RandomDiagramOptions o;
    o.inputs = i % 2;
    o.max_nodes = 12;
    Diagram d = random_diagram(rng, o);
    const Relation want = interpret(d);
    for (int step = 0; step < 10; ++step) {
      const std::size_t ri = std::uniform_int_distribution<std::size_t>(0, rule_set().size() - 1)(rng);
      const auto ms = find_matches(d, ri);
      if (ms.empty()) continue;
      Diagram next = apply(d, ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)]);
      if (next.nodes().size() <= 24) d = std::move(next);
    }
    if (!(interpret(d) == want)) ++bad;
  }
  all = all && bad == 0;
  out << "random rewriting, seed " << seed << ": " << trials - bad << "/" << trials << " unchanged  "
      << (bad == 0 ? "PASS" : "FAIL") << '\n';
  return all ? 0 : 1;
}

int cmd_graphstate(const std::string& adj_file, std::ostream& out) {
  const AdjacencyMatrix theta(parse_bit_matrix(read_file(adj_file)));
  const CheckMatrix s = graph_form(theta);
  out << "check matrix (" << s.rows() << " x " << s.cols() << ")\n" << s.str();
  out << "S^T J S = 0: " << ((s.transpose() * symplectic_form(theta.size()) * s).is_zero() ? "yes" : "no") << '\n';
  out << "valid state: " << (validate_state(s) ? "yes" : "no") << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact engine for the toy-bit graphical calculus", "toybit"};
  app.require_subcommand(1);
  std::string format;
  std::uint64_t seed = 1;
  app.add_option("--format", format, "Input format (default: detect)")
      ->check(CLI::IsMember({"text", "tree"}))
      ->option_text("text|tree");
  app.add_option("--seed", seed, "Seed for randomized sweeps");

  std::string file, file2, adj;
  bool reduced = false, witness = false;
  std::size_t legs = 3;

  auto* interp = app.add_subcommand("interpret", "Print the relation a diagram denotes");
  interp->add_option("file", file)->required();
  auto* norm = app.add_subcommand("normalize", "Print a GS-LO form of a diagram");
  norm->add_option("file", file)->required();
  norm->add_flag("--rgslo", reduced, "Reduce to rGS-LO form");
  auto* eq = app.add_subcommand("eq", "Decide whether two diagrams are equal (exit 0 equal, 1 not)");
  eq->add_option("file1", file)->required();
  eq->add_option("file2", file2)->required();
  eq->add_flag("--witness", witness, "Print the rewrite trace or the reason");
  auto* rules = app.add_subcommand("rules", "Rule utilities");
  rules->require_subcommand(1);
  auto* check = rules->add_subcommand("check", "Check every rule against the semantics");
  check->add_option("--legs", legs, "Largest variable leg count")->check(CLI::Range(0, 6));
  auto* gs = app.add_subcommand("graphstate", "Check matrix of a graph state");
  gs->add_option("--adj", adj, "Adjacency matrix file (rows of 0/1)")->required();
  // global flags are also accepted after the subcommand
  for (auto* sc : {interp, norm, eq, check, gs}) {
    sc->add_option("--format", format)->check(CLI::IsMember({"text", "tree"}))->option_text("text|tree");
    sc->add_option("--seed", seed);
  }

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*interp) return cmd_interpret(file, format, out);
    if (*norm) return cmd_normalize(file, format, reduced, out);
    if (*eq) return cmd_eq(file, file2, format, witness, out);
    if (*check) return cmd_rules_check(legs, seed, out);
    if (*gs) return cmd_graphstate(adj, out);
  } catch (const InputError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace toybit::cli
