// Copyright 2026 The netctl Authors.
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

#include "netctl/game_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include "netctl/error.hpp"
#include "netctl/paths.hpp"

namespace netctl {
namespace {

using nlohmann::json;

// Minimal scanner over raw JSON text, used only to map pointers to lines.
class TextScanner {
 public:
  explicit TextScanner(const std::string& text) : text_(text) {}

  std::size_t Find(const std::vector<std::string>& tokens) {
    pos_ = 0;
    SkipSpace();
    for (const std::string& token : tokens) {
      if (!Enter(token)) return std::string::npos;
    }
    return pos_;
  }

 private:
  bool Enter(const std::string& token) {
    SkipSpace();
    if (pos_ >= text_.size()) return false;
    if (text_[pos_] == '{') {
      ++pos_;
      while (true) {
        SkipSpace();
        if (pos_ >= text_.size() || text_[pos_] == '}') return false;
        const std::string key = ReadString();
        SkipSpace();
        if (pos_ >= text_.size() || text_[pos_] != ':') return false;
        ++pos_;
        SkipSpace();
        if (key == token) return true;
        SkipValue();
        SkipSpace();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
      }
    }
    if (text_[pos_] == '[') {
      std::size_t index = 0;
      try {
        index = std::stoul(token);
      } catch (...) {
        return false;
      }
      ++pos_;
      for (std::size_t k = 0;; ++k) {
        SkipSpace();
        if (pos_ >= text_.size() || text_[pos_] == ']') return false;
        if (k == index) return true;
        SkipValue();
        SkipSpace();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
      }
    }
    return false;
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string ReadString() {
    std::string out;
    if (pos_ >= text_.size() || text_[pos_] != '"') return out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void SkipValue() {
    SkipSpace();
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '"') {
      ReadString();
      return;
    }
    if (c == '{' || c == '[') {
      int depth = 0;
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        if (d == '"') {
          ReadString();
          continue;
        }
        if (d == '{' || d == '[') ++depth;
        if (d == '}' || d == ']') --depth;
        ++pos_;
        if (depth == 0) return;
      }
      return;
    }
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' &&
           text_[pos_] != ']') {
      ++pos_;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

class GameParser {
 public:
  GameParser(const std::string& text, std::size_t max_paths)
      : text_(text), max_paths_(max_paths) {}

  GameInstance Parse() {
    json doc;
    try {
      doc = json::parse(text_);
    } catch (const json::parse_error& e) {
      const auto [line, column] = LineColumn(e.byte == 0 ? 0 : e.byte - 1);
      throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ": " + e.what());
    }
    if (!doc.is_object()) Fail("", "top level must be an object");

    GameInstance game;
    ParseNodes(doc, game);
    ParseEdges(doc, game);
    ParsePopulations(doc, game);
    ParseControllers(doc, game);
    ParseTypes(doc, game);
    return game;
  }

 private:
  [[noreturn]] void Fail(const std::string& pointer, const std::string& message,
                         ErrorCode code = ErrorCode::kParse) const {
    const std::size_t line = LineOfPointer(text_, pointer);
    std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
    throw Error(code,
                where + (pointer.empty() ? "/" : pointer) + ": " + message);
  }

  std::pair<std::size_t, std::size_t> LineColumn(std::size_t offset) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < offset && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return {line, column};
  }

  const json& Require(const json& obj, const char* key, const std::string& ptr) const {
    if (!obj.is_object()) Fail(ptr, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) Fail(ptr, std::string("missing key '") + key + "'");
    return *it;
  }

  const json& Array(const json& value, const std::string& ptr) const {
    if (!value.is_array()) Fail(ptr, "expected an array");
    return value;
  }

  std::string String(const json& value, const std::string& ptr) const {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    Fail(ptr, "expected a string");
  }

  double Number(const json& value, const std::string& ptr) const {
    if (!value.is_number()) Fail(ptr, "expected a number");
    return value.get<double>();
  }

  NodeIndex Node(const GameInstance& game, const json& value, const std::string& ptr) const {
    const std::string id = String(value, ptr);
    const std::size_t v = game.network.FindNode(id);
    if (v == Network::npos) Fail(ptr, "unknown node '" + id + "'");
    return v;
  }

  void ParseNodes(const json& doc, GameInstance& game) const {
    const json& nodes = Array(Require(doc, "nodes", ""), "/nodes");
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      game.network.nodes.push_back(String(nodes[k], "/nodes/" + std::to_string(k)));
    }
  }

  void ParseEdges(const json& doc, GameInstance& game) const {
    const json& edges = Array(Require(doc, "edges", ""), "/edges");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string ptr = "/edges/" + std::to_string(k);
      const json& e = edges[k];
      Edge edge;
      edge.id = String(Require(e, "id", ptr), ptr + "/id");
      edge.tail = Node(game, Require(e, "tail", ptr), ptr + "/tail");
      edge.head = Node(game, Require(e, "head", ptr), ptr + "/head");
      if (e.contains("coeffs")) {
        const json& coeffs = Array(e["coeffs"], ptr + "/coeffs");
        std::vector<double> values;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
          values.push_back(Number(coeffs[j], ptr + "/coeffs/" + std::to_string(j)));
        }
        edge.cost = CostPolynomial::FromCoefficients(values);
      } else if (e.contains("terms")) {
        const json& terms = Array(e["terms"], ptr + "/terms");
        std::vector<CostPolynomial::Term> values;
        for (std::size_t j = 0; j < terms.size(); ++j) {
          const std::string tptr = ptr + "/terms/" + std::to_string(j);
          const json& term = Array(terms[j], tptr);
          if (term.size() != 2) Fail(tptr, "a term is [coefficient, exponent]");
          values.push_back({Number(term[0], tptr + "/0"), Number(term[1], tptr + "/1")});
        }
        edge.cost = CostPolynomial::FromTerms(values);
      } else {
        Fail(ptr, "missing key 'coeffs'");
      }
      game.network.edges.push_back(std::move(edge));
    }
  }

  Path ParsePath(const GameInstance& game, const json& value, const std::string& ptr) const {
    const json& ids = Array(value, ptr);
    Path path;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const std::string eptr = ptr + "/" + std::to_string(j);
      const std::string id = String(ids[j], eptr);
      const std::size_t e = game.network.FindEdge(id);
      if (e == Network::npos) Fail(eptr, "unknown edge '" + id + "'");
      path.push_back(e);
    }
    return path;
  }

  void ParsePopulations(const json& doc, GameInstance& game) const {
    const json& pops = Array(Require(doc, "populations", ""), "/populations");
    for (std::size_t k = 0; k < pops.size(); ++k) {
      const std::string ptr = "/populations/" + std::to_string(k);
      const json& p = pops[k];
      Population pop;
      pop.id = String(Require(p, "id", ptr), ptr + "/id");
      pop.origin = Node(game, Require(p, "origin", ptr), ptr + "/origin");
      pop.destination = Node(game, Require(p, "destination", ptr), ptr + "/destination");
      pop.demand = Number(Require(p, "demand", ptr), ptr + "/demand");
      if (p.contains("paths")) {
        const json& paths = Array(p["paths"], ptr + "/paths");
        for (std::size_t s = 0; s < paths.size(); ++s) {
          pop.paths.push_back(ParsePath(game, paths[s], ptr + "/paths/" + std::to_string(s)));
        }
      } else {
        try {
          pop.paths = EnumeratePaths(game.network, pop.origin, pop.destination, max_paths_);
        } catch (const Error& e) {
          Fail(ptr, e.what(), e.code());
        }
      }
      game.populations.push_back(std::move(pop));
    }
  }

  std::size_t PopulationIndex(const GameInstance& game, const std::string& id,
                              const std::string& ptr) const {
    for (std::size_t i = 0; i < game.populations.size(); ++i) {
      if (game.populations[i].id == id) return i;
    }
    Fail(ptr, "unknown population '" + id + "'");
  }

  void ParseControllers(const json& doc, GameInstance& game) const {
    ControlAssignment& a = game.assignment;
    if (!doc.contains("controllers")) {
      a.controllers = {"1"};
      std::vector<double> full;
      for (const Population& pop : game.populations) full.push_back(pop.demand);
      a.shares = {full};
      return;
    }
    const json& controllers = Array(doc["controllers"], "/controllers");
    for (std::size_t k = 0; k < controllers.size(); ++k) {
      const std::string ptr = "/controllers/" + std::to_string(k);
      const json& c = controllers[k];
      a.controllers.push_back(String(Require(c, "id", ptr), ptr + "/id"));
      std::vector<double> row(game.populations.size(), 0.0);
      const json& shares = Require(c, "shares", ptr);
      if (!shares.is_object()) Fail(ptr + "/shares", "expected an object");
      for (auto it = shares.begin(); it != shares.end(); ++it) {
        const std::string sptr = ptr + "/shares/" + it.key();
        row[PopulationIndex(game, it.key(), sptr)] = Number(it.value(), sptr);
      }
      a.shares.push_back(std::move(row));
    }
  }

  void ParseTypes(const json& doc, GameInstance& game) const {
    if (!doc.contains("information_types")) return;
    const json& types = Array(doc["information_types"], "/information_types");
    for (std::size_t k = 0; k < types.size(); ++k) {
      const std::string ptr = "/information_types/" + std::to_string(k);
      const json& t = types[k];
      InformationType type;
      type.id = String(Require(t, "id", ptr), ptr + "/id");
      type.population = PopulationIndex(
          game, String(Require(t, "population", ptr), ptr + "/population"),
          ptr + "/population");
      type.demand = Number(Require(t, "demand", ptr), ptr + "/demand");
      const json& known = Array(Require(t, "paths", ptr), ptr + "/paths");
      const auto& pop_paths = game.populations[type.population].paths;
      for (std::size_t s = 0; s < known.size(); ++s) {
        const std::string kptr = ptr + "/paths/" + std::to_string(s);
        const Path path = ParsePath(game, known[s], kptr);
        const auto it = std::find(pop_paths.begin(), pop_paths.end(), path);
        if (it == pop_paths.end()) Fail(kptr, "not a path of the population");
        type.known_paths.push_back(static_cast<std::size_t>(it - pop_paths.begin()));
      }
      game.information_types.push_back(std::move(type));
    }
  }

  const std::string& text_;
  std::size_t max_paths_;
};

json PathToJson(const GameInstance& game, const Path& path) {
  json ids = json::array();
  for (EdgeIndex e : path) ids.push_back(game.network.edges[e].id);
  return ids;
}

}  // namespace

std::size_t LineOfPointer(const std::string& text, const std::string& pointer) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  if (!pointer.empty() && pointer[0] == '/') start = 1;
  while (start <= pointer.size() && !pointer.empty()) {
    const std::size_t slash = pointer.find('/', start);
    tokens.push_back(pointer.substr(start, slash - start));
    if (slash == std::string::npos) break;
    start = slash + 1;
  }
  const std::size_t pos = TextScanner(text).Find(tokens);
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n'));
}

GameInstance ParseGame(const std::string& text, std::size_t max_paths) {
  return GameParser(text, max_paths).Parse();
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string AnnotateReport(const ValidationReport& report, const std::string& text) {
  static const std::regex kLocation(R"(^([a-z_]+)\[(\d+)\])");
  std::ostringstream out;
  for (const Violation& v : report.violations) {
    std::smatch m;
    std::size_t line = 0;
    if (std::regex_search(v.location, m, kLocation)) {
      line = LineOfPointer(text, "/" + m[1].str() + "/" + m[2].str());
    }
    if (line > 0) out << "line " << line << ": ";
    out << v.invariant << " at " << v.location << ": " << v.message << "\n";
  }
  return out.str();
}

GameInstance LoadGameFile(const std::string& path, std::size_t max_paths) {
  const std::string text = ReadTextFile(path);
  try {
    return ParseGame(text, max_paths);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

json GameToJson(const GameInstance& game) {
  json doc;
  doc["nodes"] = game.network.nodes;
  doc["edges"] = json::array();
  for (const Edge& edge : game.network.edges) {
    json e{{"id", edge.id},
           {"tail", game.network.nodes.at(edge.tail)},
           {"head", game.network.nodes.at(edge.head)}};
    if (const auto coefficients = edge.cost.Coefficients()) {
      e["coeffs"] = *coefficients;
    } else {
      json terms = json::array();
      for (const auto& t : edge.cost.terms()) terms.push_back({t.coefficient, t.exponent});
      e["terms"] = terms;
    }
    doc["edges"].push_back(e);
  }
  doc["populations"] = json::array();
  for (const Population& pop : game.populations) {
    json paths = json::array();
    for (const Path& path : pop.paths) paths.push_back(PathToJson(game, path));
    doc["populations"].push_back({{"id", pop.id},
                                  {"origin", game.network.nodes.at(pop.origin)},
                                  {"destination", game.network.nodes.at(pop.destination)},
                                  {"demand", pop.demand},
                                  {"paths", paths}});
  }
  doc["controllers"] = json::array();
  for (std::size_t r = 0; r < game.assignment.size(); ++r) {
    json shares = json::object();
    for (std::size_t i = 0; i < game.populations.size(); ++i) {
      shares[game.populations[i].id] = game.assignment.shares[r][i];
    }
    doc["controllers"].push_back({{"id", game.assignment.controllers[r]}, {"shares", shares}});
  }
  if (!game.information_types.empty()) {
    doc["information_types"] = json::array();
    for (const InformationType& type : game.information_types) {
      const Population& pop = game.populations.at(type.population);
      json paths = json::array();
      for (std::size_t s : type.known_paths) paths.push_back(PathToJson(game, pop.paths.at(s)));
      doc["information_types"].push_back({{"id", type.id},
                                          {"population", pop.id},
                                          {"demand", type.demand},
                                          {"paths", paths}});
    }
  }
  return doc;
}

json FlowsToJson(const GameInstance& game, const FlowProfile& flows) {
  json out = json::array();
  for (std::size_t r = 0; r < flows.flow.size(); ++r) {
    for (std::size_t i = 0; i < game.populations.size(); ++i) {
      if (game.assignment.shares[r][i] <= 0.0) continue;
      for (std::size_t s = 0; s < game.populations[i].paths.size(); ++s) {
        out.push_back({{"controller", game.assignment.controllers[r]},
                       {"population", game.populations[i].id},
                       {"path", s},
                       {"edges", PathToJson(game, game.populations[i].paths[s])},
                       {"flow", flows.flow[r][i][s]}});
      }
    }
  }
  return out;
}

FlowProfile FlowsFromJson(const GameInstance& game, const json& doc) {
  const auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kParse, "flows: " + msg);
  };
  const json* entries = &doc;
  if (doc.is_object()) {
    if (!doc.contains("flows")) fail("missing key 'flows'");
    entries = &doc["flows"];
  }
  if (!entries->is_array()) fail("expected an array of flow entries");
  FlowProfile flows = FlowProfile::Zero(game);
  for (const json& entry : *entries) {
    try {
      const std::size_t r =
          game.assignment.FindController(entry.at("controller").get<std::string>());
      const std::string pop_id = entry.at("population").get<std::string>();
      std::size_t i = Network::npos;
      for (std::size_t k = 0; k < game.populations.size(); ++k) {
        if (game.populations[k].id == pop_id) i = k;
      }
      const std::size_t s = entry.at("path").get<std::size_t>();
      if (r == Network::npos || i == Network::npos ||
          s >= game.populations[i].paths.size()) {
        fail("entry references an unknown controller, population or path");
      }
      flows.flow[r][i][s] = entry.at("flow").get<double>();
    } catch (const json::exception& e) {
      fail(e.what());
    }
  }
  flows.RecomputeLoads(game);
  return flows;
}

namespace {

json EdgeLoadsToJson(const GameInstance& game, const FlowProfile& flows) {
  json loads = json::object();
  for (std::size_t e = 0; e < game.network.edges.size(); ++e) {
    loads[game.network.edges[e].id] = flows.edge_loads[e];
  }
  return loads;
}

}  // namespace

json ResultToJson(const GameInstance& game, const EquilibriumResult& result,
                  const std::string& kind) {
  json doc;
  doc["kind"] = kind;
  doc["social_cost"] = result.social_cost;
  doc["potential"] = result.potential;
  doc["relative_gap"] = result.relative_gap;
  doc["iterations"] = result.iterations;
  doc["converged"] = result.converged;
  doc["flows"] = FlowsToJson(game, result.flows);
  doc["edge_loads"] = EdgeLoadsToJson(game, result.flows);
  const std::vector<InformationType> types = EffectiveTypes(game);
  doc["type_costs"] = json::array();
  for (std::size_t k = 0; k < types.size(); ++k) {
    json entry{{"type", types[k].id},
               {"population", game.populations[types[k].population].id},
               {"paths", types[k].known_paths},
               {"costs", result.type_path_costs[k]}};
    if (k < result.type_flows.size()) entry["flows"] = result.type_flows[k];
    doc["type_costs"].push_back(std::move(entry));
  }
  return doc;
}

json ResultToJson(const GameInstance& game, const NceResult& result) {
  json doc;
  doc["kind"] = "nce";
  doc["social_cost"] = result.social_cost;
  doc["potential"] = result.potential;
  doc["rounds"] = result.rounds;
  doc["converged"] = result.converged;
  doc["last_improvement"] = result.last_improvement;
  doc["last_flow_change"] = result.last_flow_change;
  doc["flows"] = FlowsToJson(game, result.flows);
  doc["edge_loads"] = EdgeLoadsToJson(game, result.flows);
  doc["controller_costs"] = json::array();
  for (const ControllerCostReport& report : result.controller_costs) {
    doc["controller_costs"].push_back({{"controller", report.id},
                                       {"cost", report.cost},
                                       {"per_population", report.per_population}});
  }
  doc["potential_trace"] = result.potential_trace;
  doc["potential_descent"] = VerifyPotentialDescent(result.potential_trace);
  return doc;
}

}  // namespace netctl
