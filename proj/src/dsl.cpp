#include <array>
#include <cctype>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "fibrato/document.hpp"
#include "fibrato/errors.hpp"

namespace fibrato {

namespace {

using json = nlohmann::ordered_json;

struct Token {
  std::string text;
  std::size_t column; // 1-based
};

[[noreturn]] void syntax_error(std::size_t line, std::size_t column,
                               const std::string &msg) {
  throw Error("SyntaxError", "line " + std::to_string(line) + ", column " +
                                 std::to_string(column) + ": " + msg);
}

std::vector<Token> tokenize(const std::string &line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool valid_name(const std::string &s) {
  if (s.empty())
    return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
      return false;
  }
  return true;
}

} // namespace

std::string dsl_to_json(const std::string &text) {
  std::vector<std::string> objects;
  std::vector<std::array<std::string, 3>> morphisms; // name, src, tgt
  std::vector<std::array<std::string, 3>> compositions;
  std::vector<std::pair<std::string, std::vector<std::size_t>>> generators;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    auto tokens = tokenize(line);
    if (tokens.empty())
      continue;
    const std::string &head = tokens[0].text;

    if (head == "obj") {
      if (tokens.size() < 2)
        syntax_error(line_no, tokens[0].column, "obj needs at least one name");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!valid_name(tokens[i].text))
          syntax_error(line_no, tokens[i].column,
                       "invalid object name " + tokens[i].text);
        objects.push_back(tokens[i].text);
      }
    } else if (head == "mor") {
      // mor f: A -> B  (the colon may be attached to the name or stand alone)
      std::vector<Token> rest(tokens.begin() + 1, tokens.end());
      if (rest.empty())
        syntax_error(line_no, tokens[0].column, "mor needs a declaration");
      std::string name = rest[0].text;
      std::size_t cursor = 1;
      if (!name.empty() && name.back() == ':') {
        name.pop_back();
      } else {
        if (cursor >= rest.size() || rest[cursor].text != ":")
          syntax_error(line_no, rest[0].column, "expected ':' after name");
        ++cursor;
      }
      if (!valid_name(name))
        syntax_error(line_no, rest[0].column, "invalid morphism name " + name);
      if (rest.size() - cursor != 3 || rest[cursor + 1].text != "->")
        syntax_error(line_no, tokens[0].column,
                     "expected 'mor name: src -> tgt'");
      if (!valid_name(rest[cursor].text) || !valid_name(rest[cursor + 2].text))
        syntax_error(line_no, rest[cursor].column, "invalid object name");
      morphisms.push_back({name, rest[cursor].text, rest[cursor + 2].text});
    } else if (head == "cmp") {
      // cmp g.f = h
      if (tokens.size() != 4 || tokens[2].text != "=")
        syntax_error(line_no, tokens[0].column, "expected 'cmp g.f = h'");
      const std::string &pair = tokens[1].text;
      auto dot = pair.find('.');
      if (dot == std::string::npos)
        syntax_error(line_no, tokens[1].column, "expected 'g.f'");
      std::string g = pair.substr(0, dot);
      std::string f = pair.substr(dot + 1);
      if (!valid_name(g) || !valid_name(f) || !valid_name(tokens[3].text))
        syntax_error(line_no, tokens[1].column, "invalid morphism name");
      compositions.push_back({g, f, tokens[3].text});
    } else if (head == "gen") {
      // gen r = (2 3 1)
      if (tokens.size() < 4 || tokens[2].text != "=")
        syntax_error(line_no, tokens[0].column, "expected 'gen r = (2 3 1)'");
      if (!valid_name(tokens[1].text))
        syntax_error(line_no, tokens[1].column, "invalid generator name");
      std::string images;
      for (std::size_t i = 3; i < tokens.size(); ++i)
        images += tokens[i].text + " ";
      if (images.size() < 2 || images.front() != '(')
        syntax_error(line_no, tokens[3].column, "expected '(' before images");
      std::vector<std::size_t> one_line;
      std::string digits;
      for (std::size_t i = 1; i < images.size(); ++i) {
        char ch = images[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
          digits += ch;
        } else if (ch == ' ' || ch == ')') {
          if (!digits.empty()) {
            one_line.push_back(std::stoul(digits));
            digits.clear();
          }
          if (ch == ')')
            break;
        } else {
          syntax_error(line_no, tokens[3].column + i,
                       std::string("unexpected character '") + ch + "'");
        }
      }
      if (one_line.empty())
        syntax_error(line_no, tokens[3].column, "empty permutation");
      generators.push_back({tokens[1].text, std::move(one_line)});
    } else {
      syntax_error(line_no, tokens[0].column, "unknown directive " + head);
    }
  }

  bool is_group = !generators.empty();
  bool is_category = !objects.empty() || !morphisms.empty() || !compositions.empty();
  if (is_group && is_category)
    throw Error("SchemaError",
                "$: a document mixes gen with obj/mor/cmp declarations");

  json j = json::object();
  if (is_group) {
    std::size_t degree = generators[0].second.size();
    for (const auto &[name, imgs] : generators) {
      if (imgs.size() != degree)
        throw Error("SchemaError",
                    "$.generators." + name + ": degrees disagree");
    }
    j["kind"] = "group";
    j["degree"] = degree;
    json gens = json::object();
    for (const auto &[name, imgs] : generators)
      gens[name] = imgs;
    j["generators"] = std::move(gens);
  } else {
    j["kind"] = "category";
    j["objects"] = objects;
    json mors = json::array();
    std::vector<std::string> all_objects = objects;
    for (const auto &[name, src, tgt] : morphisms)
      mors.push_back({{"name", name}, {"src", src}, {"tgt", tgt}});
    json ids = json::object();
    for (const auto &obj : objects) {
      std::string id = "id_" + obj;
      mors.push_back({{"name", id}, {"src", obj}, {"tgt", obj}});
      ids[obj] = id;
    }
    j["morphisms"] = std::move(mors);
    j["identities"] = std::move(ids);
    json comp = json::array();
    for (const auto &[g, f, gf] : compositions)
      comp.push_back({g, f, gf});
    j["compose"] = std::move(comp);
  }
  return j.dump(2) + "\n";
}

} // namespace fibrato
