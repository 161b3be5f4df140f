#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "logfit/chart.hpp"
#include "logfit/classify.hpp"
#include "logfit/expression.hpp"

namespace logfit {

/// Parsed problem file: a morphism of pairs plus optional evaluation data.
struct ProblemFile {
  ChartedPair source;
  ChartedPair target;
  std::vector<Polynomial> components;
  std::optional<RationalPoint> point;
  std::optional<DivisorFiltration> filtration;
  std::vector<Polynomial> target_ideal;

  MorphismOfPairs morphism() const { return MorphismOfPairs(source, target, components); }

  IdealPresentation target_stratum_ideal() const { return IdealPresentation(target.ring(), target_ideal); }

  friend bool operator==(const ProblemFile& a, const ProblemFile& b) {
    auto levels = [](const std::optional<DivisorFiltration>& f) {
      return f ? f->levels : std::vector<std::vector<std::size_t>>{};
    };
    auto coords = [](const std::optional<RationalPoint>& p) {
      return p ? std::optional<std::vector<Rational>>(p->coords) : std::nullopt;
    };
    return a.source == b.source && a.target == b.target && a.components == b.components &&
           coords(a.point) == coords(b.point) && a.filtration.has_value() == b.filtration.has_value() &&
           levels(a.filtration) == levels(b.filtration) && a.target_ideal == b.target_ideal;
  }
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline std::vector<Token> split_words(std::string_view line, std::size_t offset = 0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), offset + start + 1});
  }
  return out;
}

// Pieces between top-level commas, with the column of each piece.
inline std::vector<Token> split_commas(std::string_view text, std::size_t column) {
  std::vector<Token> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.push_back({std::string(text.substr(start, i - start)), column + start});
      start = i + 1;
    }
  }
  return out;
}

inline std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

struct ChartDecl {
  std::vector<std::string> vars;
  std::vector<std::string> divisor;
  std::size_t line;
};

inline ChartDecl parse_chart_decl(const std::vector<Token>& words, std::size_t line) {
  const auto& kw = words[0].text;
  if (words.size() < 2 || words[1].text != "vars")
    throw parse_error("expected 'vars' after '" + kw + "'", line, words.size() < 2 ? words[0].column + kw.size() : words[1].column);
  ChartDecl d{{}, {}, line};
  std::size_t i = 2;
  for (; i < words.size() && words[i].text != "divisor"; ++i) {
    const auto& w = words[i];
    if (!is_identifier(w.text)) throw parse_error("invalid variable name '" + w.text + "'", line, w.column);
    if (std::find(d.vars.begin(), d.vars.end(), w.text) != d.vars.end())
      throw parse_error("duplicate variable '" + w.text + "'", line, w.column);
    d.vars.push_back(w.text);
  }
  if (d.vars.empty()) throw parse_error(kw + " declares no variables", line, words[1].column);
  for (++i; i < words.size(); ++i) {
    const auto& w = words[i];
    if (std::find(d.vars.begin(), d.vars.end(), w.text) == d.vars.end())
      throw parse_error("unknown variable '" + w.text + "' in divisor", line, w.column);
    if (std::find(d.divisor.begin(), d.divisor.end(), w.text) != d.divisor.end())
      throw parse_error("duplicate divisor variable '" + w.text + "'", line, w.column);
    d.divisor.push_back(w.text);
  }
  return d;
}

}  // namespace detail

/// Parses the line-oriented problem format. Errors carry line and column.
inline ProblemFile parse_problem(std::string_view text) {
  struct Line {
    std::size_t number;
    std::string body;
    std::vector<detail::Token> words;
  };
  std::vector<Line> lines;
  {
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string body(text.substr(pos, end - pos));
      ++number;
      if (auto hash = body.find('#'); hash != std::string::npos) body.erase(hash);
      if (!body.empty() && body.back() == '\r') body.pop_back();
      auto words = detail::split_words(body);
      if (!words.empty()) lines.push_back({number, body, std::move(words)});
      pos = end + 1;
    }
  }

  std::optional<detail::ChartDecl> source, target;
  for (const auto& l : lines) {
    const auto& kw = l.words[0].text;
    if (kw != "source" && kw != "target") continue;
    auto& slot = kw == "source" ? source : target;
    if (slot) throw parse_error("duplicate " + kw + " declaration (first on line " + std::to_string(slot->line) + ")",
                                l.number, l.words[0].column);
    slot = detail::parse_chart_decl(l.words, l.number);
  }
  if (!source) throw parse_error("missing source declaration", lines.empty() ? 1 : lines.back().number, 1);
  if (!target) throw parse_error("missing target declaration", lines.back().number, 1);

  ProblemFile p{ChartedPair(source->vars, source->divisor), ChartedPair(target->vars, target->divisor), {}, {}, {}, {}};
  std::vector<std::optional<Polynomial>> maps(p.target.dimension());
  std::map<std::size_t, std::vector<std::size_t>> levels;
  bool seen_ideal = false;

  for (const auto& l : lines) {
    const auto& kw = l.words[0].text;
    const std::size_t after = l.words[0].column - 1 + kw.size();
    std::string_view rest = std::string_view(l.body).substr(after);
    if (kw == "source" || kw == "target") continue;
    if (kw == "map") {
      auto eq = rest.find('=');
      if (eq == std::string_view::npos) throw parse_error("expected '=' in map", l.number, after + rest.size() + 1);
      std::size_t lead = 0;
      auto name = detail::trim(rest.substr(0, eq), &lead);
      const std::size_t name_col = after + lead + 1;
      if (name.empty()) throw parse_error("map needs a target variable", l.number, name_col);
      auto idx = p.target.ring()->find(std::string(name));
      if (!idx) throw parse_error("unknown target variable '" + std::string(name) + "'", l.number, name_col);
      if (maps[*idx]) throw parse_error("duplicate map for '" + std::string(name) + "'", l.number, name_col);
      maps[*idx] = parse_polynomial(rest.substr(eq + 1), p.source.ring(), l.number, after + eq + 2);
    } else if (kw == "point") {
      if (p.point) throw parse_error("duplicate point declaration", l.number, l.words[0].column);
      RationalPoint a;
      for (const auto& piece : detail::split_commas(rest, after + 1)) {
        std::size_t lead = 0;
        auto t = detail::trim(piece.text, &lead);
        auto q = parse_rational(t);
        if (!q) throw parse_error("invalid rational '" + std::string(t) + "'", l.number, piece.column + lead);
        a.coords.push_back(*q);
      }
      if (a.size() != p.source.dimension())
        throw parse_error("point has " + std::to_string(a.size()) + " coordinates, source has " +
                              std::to_string(p.source.dimension()),
                          l.number, l.words[0].column);
      p.point = std::move(a);
    } else if (kw == "filtration") {
      auto colon = rest.find(':');
      if (colon == std::string_view::npos) throw parse_error("expected ':' after filtration level", l.number, after + 1);
      std::size_t lead = 0;
      auto level_text = detail::trim(rest.substr(0, colon), &lead);
      auto level = parse_rational(level_text);
      if (!level || level->get_den() != 1 || *level < 1)
        throw parse_error("filtration level must be a positive integer", l.number, after + lead + 1);
      auto k = static_cast<std::size_t>(level->get_num().get_ui());
      if (levels.count(k)) throw parse_error("duplicate filtration level " + std::to_string(k), l.number, after + lead + 1);
      auto& vars = levels[k];
      for (const auto& w : detail::split_words(rest.substr(colon + 1), after + colon + 1)) {
        auto idx = p.source.ring()->find(w.text);
        if (!idx) throw parse_error("unknown variable '" + w.text + "'", l.number, w.column);
        vars.push_back(*idx);
      }
    } else if (kw == "targetideal") {
      if (seen_ideal) throw parse_error("duplicate targetideal declaration", l.number, l.words[0].column);
      seen_ideal = true;
      for (const auto& piece : detail::split_commas(rest, after + 1))
        p.target_ideal.push_back(parse_polynomial(piece.text, p.target.ring(), l.number, piece.column));
    } else {
      throw parse_error("unknown directive '" + kw + "'", l.number, l.words[0].column);
    }
  }

  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!maps[i]) throw parse_error("missing map for target variable '" + p.target.ring()->name(i) + "'", target->line, 1);
    p.components.push_back(*std::move(maps[i]));
  }
  if (!levels.empty()) {
    DivisorFiltration f;
    std::size_t expect = 1;
    for (auto& [k, vars] : levels) {
      if (k != expect) throw parse_error("filtration levels must be 1, 2, ... without gaps (missing level " +
                                             std::to_string(expect) + ")",
                                         lines.back().number, 1);
      f.levels.push_back(std::move(vars));
      ++expect;
    }
    p.filtration = std::move(f);
  }
  return p;
}

/// Prints a problem in the form parse_problem reads.
inline std::string print_problem(const ProblemFile& p) {
  std::ostringstream out;
  auto chart = [&](const char* kw, const ChartedPair& c) {
    out << kw << " vars";
    for (const auto& v : c.variables()) out << ' ' << v;
    out << " divisor";
    for (const auto& v : c.divisor_names()) out << ' ' << v;
    out << '\n';
  };
  chart("source", p.source);
  chart("target", p.target);
  for (std::size_t i = 0; i < p.components.size(); ++i)
    out << "map " << p.target.ring()->name(i) << " = " << p.components[i].to_string() << '\n';
  if (p.point) out << "point " << p.point->to_string() << '\n';
  if (p.filtration)
    for (std::size_t k = 0; k < p.filtration->levels.size(); ++k) {
      out << "filtration " << k + 1 << ':';
      for (auto v : p.filtration->levels[k]) out << ' ' << p.source.ring()->name(v);
      out << '\n';
    }
  if (!p.target_ideal.empty()) {
    out << "targetideal ";
    for (std::size_t i = 0; i < p.target_ideal.size(); ++i) out << (i ? ", " : "") << p.target_ideal[i].to_string();
    out << '\n';
  }
  return out.str();
}

}  // namespace logfit
