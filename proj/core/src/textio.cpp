#include "toybit/textio.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace toybit {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#')
      ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

std::optional<std::size_t> slot_index(std::string_view name, std::string_view prefix) {
  if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) return std::nullopt;
  std::size_t value = 0;
  for (char c : name.substr(prefix.size())) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

bool looks_like_slot(std::string_view name) {
  return slot_index(name, "in").has_value() || slot_index(name, "out").has_value();
}

std::size_t parse_count(const Token& t, std::size_t line) {
  if (t.text.empty() || t.text.size() > 6) throw ParseError(line, t.column, "expected a count");
  std::size_t v = 0;
  for (char c : t.text) {
    if (c < '0' || c > '9') throw ParseError(line, t.column, "expected a count, got '" + t.text + "'");
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

// Shared builder for both surface syntaxes.
class Builder {
 public:
  void set_inputs(std::size_t n) { inputs_ = n; }
  void set_outputs(std::size_t n) { outputs_ = n; }

  // Returns an error message or empty.
  std::string add_node(const std::string& id, const std::string& kind, const std::string& phase) {
    if (id.empty()) return "empty node id";
    if (looks_like_slot(id)) return "node id '" + id + "' clashes with boundary slot names";
    if (ids_.count(id)) return "duplicate node id '" + id + "'";
    NodeType type;
    if (kind == "Z") type = NodeType::Green;
    else if (kind == "X") type = NodeType::Red;
    else if (kind == "H") type = NodeType::H;
    else return "unknown node kind '" + kind + "' (expected Z, X or H)";
    Phase p;
    if (type == NodeType::H) {
      if (!phase.empty()) return "H nodes carry no phase";
    } else if (!phase.empty()) {
      try {
        p = Phase::parse(phase);
      } catch (const std::invalid_argument& e) {
        return e.what();
      }
    }
    ids_[id] = nodes_.size();
    nodes_.push_back({type, p, id});
    return {};
  }

  std::string add_edge(const std::string& a, const std::string& b) {
    End ea;
    End eb;
    if (auto err = resolve(a, ea); !err.empty()) return err;
    if (auto err = resolve(b, eb); !err.empty()) return err;
    edges_.push_back({ea, eb});
    return {};
  }

  Diagram finish() const {
    Diagram d(inputs_.value_or(0), outputs_.value_or(0));
    for (const auto& n : nodes_) d.add_node(n.type, n.phase, n.name);
    for (const auto& e : edges_) d.add_edge(e.a, e.b);
    return d;
  }

  bool has_inputs() const { return inputs_.has_value(); }
  bool has_outputs() const { return outputs_.has_value(); }

 private:
  std::string resolve(const std::string& name, End& out) const {
    if (auto k = slot_index(name, "in")) {
      out = End::input(*k);
      return {};
    }
    if (auto k = slot_index(name, "out")) {
      out = End::output(*k);
      return {};
    }
    auto it = ids_.find(name);
    if (it == ids_.end()) return "unknown endpoint '" + name + "'";
    out = End::node(it->second);
    return {};
  }

  std::optional<std::size_t> inputs_;
  std::optional<std::size_t> outputs_;
  std::map<std::string, std::size_t> ids_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

void check_structure(const Diagram& d, std::size_t line) {
  auto errors = validate(d);
  if (errors.empty()) return;
  std::string msg = errors.front();
  for (std::size_t i = 1; i < errors.size(); ++i) msg += "; " + errors[i];
  throw ParseError(line, 1, msg);
}

std::vector<std::string> node_names(const Diagram& d) {
  std::vector<std::string> names(d.nodes().size());
  std::map<std::string, int> seen;
  for (const auto& n : d.nodes())
    if (!n.name.empty()) ++seen[n.name];
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& n = d.node(i).name;
    bool usable = !n.empty() && seen[n] == 1 && !looks_like_slot(n) &&
                  n.find_first_of(" \t#\"") == std::string::npos;
    names[i] = usable ? n : "n" + std::to_string(i);
  }
  // Generated names may collide with user names; fall back to positional names.
  std::map<std::string, int> final_count;
  for (const auto& s : names) ++final_count[s];
  for (const auto& [s, c] : final_count)
    if (c > 1) {
      for (std::size_t i = 0; i < names.size(); ++i) names[i] = "n" + std::to_string(i);
      break;
    }
  return names;
}

std::string end_name(const End& e, const std::vector<std::string>& names) {
  switch (e.kind) {
    case End::Kind::Input: return "in" + std::to_string(e.index);
    case End::Kind::Output: return "out" + std::to_string(e.index);
    case End::Kind::Node: return names.at(e.index);
  }
  return {};
}

std::string kind_name(NodeType t) {
  return t == NodeType::Green ? "Z" : t == NodeType::Red ? "X" : "H";
}

}  // namespace

Diagram parse_text(std::string_view text) {
  Builder b;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::size_t last_line = 1;  // whole-file errors point at the last non-blank line
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    auto toks = tokenize(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (toks.empty()) continue;
    last_line = line_no;
    const auto& kw = toks[0].text;
    auto need = [&](std::size_t lo, std::size_t hi) {
      if (toks.size() < lo || toks.size() > hi)
        throw ParseError(line_no, toks[0].column, "wrong number of fields for '" + kw + "'");
    };
    if (kw == "inputs") {
      need(2, 2);
      if (b.has_inputs()) throw ParseError(line_no, toks[0].column, "duplicate 'inputs' header");
      b.set_inputs(parse_count(toks[1], line_no));
    } else if (kw == "outputs") {
      need(2, 2);
      if (b.has_outputs()) throw ParseError(line_no, toks[0].column, "duplicate 'outputs' header");
      b.set_outputs(parse_count(toks[1], line_no));
    } else if (kw == "node") {
      need(3, 4);
      std::string phase = toks.size() == 4 ? toks[3].text : "";
      if (toks[2].text != "H" && phase.empty()) phase = "00";
      if (auto err = b.add_node(toks[1].text, toks[2].text, phase); !err.empty())
        throw ParseError(line_no, toks[1].column, err);
    } else if (kw == "edge") {
      need(3, 3);
      if (auto err = b.add_edge(toks[1].text, toks[2].text); !err.empty())
        throw ParseError(line_no, toks[1].column, err);
    } else {
      throw ParseError(line_no, toks[0].column, "unknown keyword '" + kw + "'");
    }
  }
  if (!b.has_inputs() || !b.has_outputs())
    throw ParseError(last_line, 1, "missing 'inputs' or 'outputs' header");
  Diagram d = b.finish();
  check_structure(d, last_line);
  return d;
}

std::string to_text(const Diagram& d) {
  const auto names = node_names(d);
  std::ostringstream os;
  os << "inputs " << d.num_inputs() << "\noutputs " << d.num_outputs() << '\n';
  for (std::size_t i = 0; i < d.nodes().size(); ++i) {
    const auto& n = d.node(i);
    os << "node " << names[i] << ' ' << kind_name(n.type);
    if (n.type != NodeType::H) os << ' ' << n.phase.str();
    os << '\n';
  }
  for (const auto& e : d.edges())
    os << "edge " << end_name(e.a, names) << ' ' << end_name(e.b, names) << '\n';
  return os.str();
}

Diagram parse_tree(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte is 1-based and may point one past the end
    const std::size_t at = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    const std::size_t line = 1 + std::count(text.begin(), text.begin() + at, '\n');
    const std::size_t bol = text.rfind('\n', at ? at - 1 : 0);
    const std::size_t column = bol == std::string_view::npos || at == 0 ? at + 1 : at - bol;
    throw ParseError(line, column, e.what());
  }
  auto fail = [](const std::string& msg) -> Diagram { throw ParseError(1, 1, msg); };
  if (!j.is_object()) return fail("tree form must be an object");
  Builder b;
  try {
    b.set_inputs(j.at("inputs").get<std::size_t>());
    b.set_outputs(j.at("outputs").get<std::size_t>());
    for (const auto& n : j.value("nodes", nlohmann::json::array())) {
      const std::string kind = n.at("kind").get<std::string>();
      std::string phase = n.value("phase", kind == "H" ? "" : "00");
      if (auto err = b.add_node(n.at("id").get<std::string>(), kind, phase); !err.empty())
        return fail(err);
    }
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
      if (!e.is_array() || e.size() != 2) return fail("each edge must be a pair of endpoints");
      if (auto err = b.add_edge(e[0].get<std::string>(), e[1].get<std::string>()); !err.empty())
        return fail(err);
    }
  } catch (const nlohmann::json::exception& e) {
    return fail(e.what());
  }
  Diagram d = b.finish();
  check_structure(d, 1);
  return d;
}

std::string to_tree(const Diagram& d) {
  const auto names = node_names(d);
  nlohmann::ordered_json j;
  j["inputs"] = d.num_inputs();
  j["outputs"] = d.num_outputs();
  j["nodes"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < d.nodes().size(); ++i) {
    nlohmann::ordered_json n;
    n["id"] = names[i];
    n["kind"] = kind_name(d.node(i).type);
    if (d.node(i).type != NodeType::H) n["phase"] = d.node(i).phase.str();
    j["nodes"].push_back(n);
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : d.edges())
    j["edges"].push_back({end_name(e.a, names), end_name(e.b, names)});
  return j.dump(2) + "\n";
}

Diagram parse_diagram(std::string_view text, Format f) {
  return f == Format::Tree ? parse_tree(text) : parse_text(text);
}

std::string serialize(const Diagram& d, Format f) {
  return f == Format::Tree ? to_tree(d) : to_text(d);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace toybit
