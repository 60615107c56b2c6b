// Copyright 2026 The gct Authors
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

#include "gct/text_format.hpp"

#include <cstdlib>
#include <map>
#include <sstream>
#include <vector>

#include "gct/errors.hpp"

namespace gct {

namespace {

const char* mode_name(DualMode m) {
  switch (m) {
    case DualMode::kNone:
      return "none";
    case DualMode::kFormal:
      return "formal";
    case DualMode::kSelf:
      return "self";
  }
  return "formal";
}

std::string type_list(const std::vector<System>& ts) {
  std::string s;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (i) s += ',';
    s += ts[i].to_string();
  }
  return s;
}

std::string source_text(const Port& p) {
  if (p.is_boundary()) return "in:" + std::to_string(p.slot);
  return std::to_string(p.node) + ".o" + std::to_string(p.slot);
}

std::string target_text(const Port& p) {
  if (p.is_boundary()) return "out:" + std::to_string(p.slot);
  return std::to_string(p.node) + ".i" + std::to_string(p.slot);
}

void collect_systems(const std::vector<System>& ts,
                     std::map<std::string, DualMode>* out) {
  for (const System& s : ts) out->emplace(s.name, s.dual_mode);
}

struct Token {
  std::string text;
  int column;  // 1-based
};

struct Line {
  int number;  // 1-based
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    Line line{number, {}};
    size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) {
        ++i;
      }
      if (i >= raw.size() || raw[i] == '#') break;
      size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') {
        ++i;
      }
      line.tokens.push_back(
          {std::string(raw.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

class Parser {
 public:
  Parser(const std::vector<Line>& lines, size_t start, int last_line)
      : lines_(lines), i_(start), last_line_(last_line) {}

  size_t position() const { return i_; }

  [[noreturn]] void fail(const std::string& msg, const Line& l, int col) const {
    throw ParseError(msg, l.number, col);
  }
  [[noreturn]] void fail_eof(const std::string& msg) const {
    throw ParseError(msg, last_line_ + 1, 1);
  }

  const Line& next(const std::string& expect) {
    if (i_ >= lines_.size()) fail_eof("unexpected end of input, expected " + expect);
    return lines_[i_++];
  }

  const Line* peek() const { return i_ < lines_.size() ? &lines_[i_] : nullptr; }

  void expect_keyword(const Line& l, const std::string& kw, size_t arity) {
    if (l.tokens[0].text != kw) fail("expected '" + kw + "'", l, l.tokens[0].column);
    if (l.tokens.size() != arity + 1) {
      fail("'" + kw + "' takes " + std::to_string(arity) + " argument(s)", l,
           l.tokens[0].column);
    }
  }

  int parse_int(const Line& l, const Token& t, std::string_view s) {
    if (s.empty()) fail("expected an integer", l, t.column);
    std::string tmp(s);
    char* end = nullptr;
    long v = std::strtol(tmp.c_str(), &end, 10);
    if (end != tmp.c_str() + tmp.size() || v < 0) {
      fail("expected a non-negative integer, got '" + tmp + "'", l, t.column);
    }
    return static_cast<int>(v);
  }

  System parse_system(const Line& l, const Token& t, std::string_view s) {
    bool starred = false;
    if (!s.empty() && s.back() == '*') {
      starred = true;
      s.remove_suffix(1);
    }
    auto it = systems_.find(std::string(s));
    if (it == systems_.end()) {
      fail("undeclared system '" + std::string(s) + "'", l, t.column);
    }
    System sys(it->first, it->second);
    if (starred) {
      if (it->second != DualMode::kFormal) {
        fail("system '" + it->first + "' has no starred form", l, t.column);
      }
      sys.starred = true;
    }
    return sys;
  }

  std::vector<System> parse_types(const Line& l, const Token& t,
                                  std::string_view s) {
    std::vector<System> out;
    if (s.empty()) return out;
    size_t start = 0;
    while (true) {
      size_t comma = s.find(',', start);
      out.push_back(parse_system(l, t, s.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }

  Port parse_source(const Line& l, const Token& t) {
    std::string_view s = t.text;
    if (s.rfind("in:", 0) == 0) return Port::boundary(parse_int(l, t, s.substr(3)));
    size_t dot = s.find(".o");
    if (dot == std::string_view::npos) fail("malformed source port", l, t.column);
    return Port::at(parse_int(l, t, s.substr(0, dot)),
                    parse_int(l, t, s.substr(dot + 2)));
  }

  Port parse_target(const Line& l, const Token& t) {
    std::string_view s = t.text;
    if (s.rfind("out:", 0) == 0) {
      return Port::boundary(parse_int(l, t, s.substr(4)));
    }
    size_t dot = s.find(".i");
    if (dot == std::string_view::npos) fail("malformed target port", l, t.column);
    return Port::at(parse_int(l, t, s.substr(0, dot)),
                    parse_int(l, t, s.substr(dot + 2)));
  }

  Node parse_node(const Line& l, int expected_id) {
    if (l.tokens.size() < 4) fail("node needs an id, a kind and a label", l, 1);
    const Token& idt = l.tokens[1];
    if (parse_int(l, idt, idt.text) != expected_id) {
      fail("node ids must be consecutive from 0", l, idt.column);
    }
    const std::string& kind = l.tokens[2].text;
    std::map<std::string, const Token*> attrs;
    for (size_t k = 4; k < l.tokens.size(); ++k) {
      const Token& t = l.tokens[k];
      size_t eq = t.text.find('=');
      if (eq == std::string::npos) fail("expected key=value", l, t.column);
      if (!attrs.emplace(t.text.substr(0, eq), &t).second) {
        fail("duplicate attribute", l, t.column);
      }
    }
    auto value = [&](const std::string& key) -> std::string_view {
      return std::string_view(attrs.at(key)->text).substr(key.size() + 1);
    };
    auto require = [&](const std::string& key) {
      if (!attrs.count(key)) {
        fail("missing attribute '" + key + "'", l, l.tokens[2].column);
      }
    };
    auto allow_only = [&](std::initializer_list<const char*> keys) {
      for (auto& [k, t] : attrs) {
        bool ok = false;
        for (const char* a : keys) ok = ok || k == a;
        if (!ok) fail("unknown attribute '" + k + "'", l, t->column);
      }
    };
    auto phase_of = [&]() {
      try {
        return Phase::parse(value("phase"));
      } catch (const ParseError&) {
        throw;
      } catch (const GctError& e) {
        fail(e.what(), l, attrs.at("phase")->column);
      }
    };
    const std::string& label = l.tokens[3].text;
    if (kind == "box") {
      allow_only({"in", "out", "phase", "dagger"});
      require("in");
      require("out");
      auto ins = parse_types(l, *attrs.at("in"), value("in"));
      auto outs = parse_types(l, *attrs.at("out"), value("out"));
      std::string dag = attrs.count("dagger") ? std::string(value("dagger")) : "";
      if (attrs.count("phase")) {
        return Node::phased_box(label, phase_of(), ins, outs, dag);
      }
      return Node::box(label, ins, outs, dag);
    }
    if (kind == "spider") {
      allow_only({"sys", "in", "out", "phase"});
      require("sys");
      require("in");
      require("out");
      require("phase");
      System sys = parse_system(l, *attrs.at("sys"), value("sys"));
      return Node::spider(label, sys, parse_int(l, *attrs.at("in"), value("in")),
                          parse_int(l, *attrs.at("out"), value("out")), phase_of());
    }
    if (kind == "cup" || kind == "cap") {
      allow_only({"sys"});
      require("sys");
      if (label != kind) fail("label must repeat the kind", l, l.tokens[3].column);
      System sys = parse_system(l, *attrs.at("sys"), value("sys"));
      try {
        return kind == "cup" ? Node::cup(sys) : Node::cap(sys);
      } catch (const GctError& e) {
        fail(e.what(), l, attrs.at("sys")->column);
      }
    }
    fail("unknown node kind '" + kind + "'", l, l.tokens[2].column);
  }

  ParsedDiagram parse() {
    ParsedDiagram out;
    const Line& h = next("header");
    if (h.tokens[0].text != "gct-diagram") {
      fail("expected 'gct-diagram' header", h, h.tokens[0].column);
    }
    expect_keyword(h, "gct-diagram", 1);
    if (parse_int(h, h.tokens[1], h.tokens[1].text) != kFormatVersion) {
      fail("unsupported format version", h, h.tokens[1].column);
    }
    const Line& sig = next("signature");
    expect_keyword(sig, "signature", 1);
    out.signature = sig.tokens[1].text;

    while (peek() && peek()->tokens[0].text == "system") {
      const Line& l = next("system");
      expect_keyword(l, "system", 2);
      const std::string& m = l.tokens[2].text;
      DualMode mode = DualMode::kFormal;
      if (m == "self") {
        mode = DualMode::kSelf;
      } else if (m == "none") {
        mode = DualMode::kNone;
      } else if (m != "formal") {
        fail("dual mode must be self, formal or none", l, l.tokens[2].column);
      }
      if (!systems_.emplace(l.tokens[1].text, mode).second) {
        fail("system declared twice", l, l.tokens[1].column);
      }
    }
    auto boundary = [&](const char* kw) {
      const Line& l = next(kw);
      if (l.tokens[0].text != kw) {
        fail(std::string("expected '") + kw + "'", l, l.tokens[0].column);
      }
      if (l.tokens.size() > 2) fail("too many tokens", l, l.tokens[2].column);
      if (l.tokens.size() == 1) return std::vector<System>{};
      return parse_types(l, l.tokens[1], l.tokens[1].text);
    };
    std::vector<System> ins = boundary("inputs");
    std::vector<System> outs = boundary("outputs");
    DiagramBuilder b(ins, outs);
    int next_id = 0;
    while (peek() && peek()->tokens[0].text == "node") {
      const Line& l = next("node");
      b.add(parse_node(l, next_id++));
    }
    const Line* last = nullptr;
    while (peek() && peek()->tokens[0].text == "wire") {
      const Line& l = next("wire");
      expect_keyword(l, "wire", 2);
      b.wire(parse_source(l, l.tokens[1]), parse_target(l, l.tokens[2]));
      last = &l;
    }
    const Line& e = next("end");
    expect_keyword(e, "end", 0);
    try {
      out.diagram = b.build();
    } catch (const ParseError&) {
      throw;
    } catch (const GctError& err) {
      fail(std::string("invalid diagram: ") + err.what(), last ? *last : e, 1);
    }
    return out;
  }

 private:
  const std::vector<Line>& lines_;
  size_t i_;
  int last_line_;
  std::map<std::string, DualMode> systems_;
};

int last_line_number(std::string_view text) {
  int n = 1;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

std::string print_diagram(const Diagram& d, const std::string& signature) {
  std::ostringstream os;
  os << "gct-diagram " << kFormatVersion << '\n';
  os << "signature " << signature << '\n';
  std::map<std::string, DualMode> systems;
  collect_systems(d.inputs(), &systems);
  collect_systems(d.outputs(), &systems);
  for (const Node& n : d.nodes()) {
    collect_systems(n.inputs, &systems);
    collect_systems(n.outputs, &systems);
    if (n.kind != NodeKind::kBox) collect_systems({n.carrier}, &systems);
  }
  for (const auto& [name, mode] : systems) {
    os << "system " << name << ' ' << mode_name(mode) << '\n';
  }
  os << "inputs";
  if (!d.inputs().empty()) os << ' ' << type_list(d.inputs());
  os << "\noutputs";
  if (!d.outputs().empty()) os << ' ' << type_list(d.outputs());
  os << '\n';
  for (int v = 0; v < d.node_count(); ++v) {
    const Node& n = d.node(v);
    os << "node " << v << ' ';
    switch (n.kind) {
      case NodeKind::kBox:
        os << "box " << n.label;
        if (n.has_phase) os << " phase=" << n.phase.to_string();
        os << " in=" << type_list(n.inputs) << " out=" << type_list(n.outputs);
        if (!n.dagger_label.empty()) os << " dagger=" << n.dagger_label;
        break;
      case NodeKind::kSpider:
        os << "spider " << n.label << " sys=" << n.carrier.to_string()
           << " in=" << n.n_in() << " out=" << n.n_out()
           << " phase=" << n.phase.to_string();
        break;
      case NodeKind::kCup:
        os << "cup cup sys=" << n.carrier.to_string();
        break;
      case NodeKind::kCap:
        os << "cap cap sys=" << n.carrier.to_string();
        break;
    }
    os << '\n';
  }
  for (const Wire& w : d.wires()) {
    os << "wire " << source_text(w.source) << ' ' << target_text(w.target)
       << '\n';
  }
  os << "end\n";
  return os.str();
}

ParsedDiagram parse_diagram(std::string_view text) {
  std::vector<Line> lines = tokenize(text);
  Parser p(lines, 0, last_line_number(text));
  ParsedDiagram out = p.parse();
  if (p.position() != lines.size()) {
    const Line& l = lines[p.position()];
    throw ParseError("trailing content after 'end'", l.number, l.tokens[0].column);
  }
  return out;
}

std::string print_rule(const RewriteRule& rule, const std::string& signature) {
  std::ostringstream os;
  os << "gct-rule " << kFormatVersion << '\n';
  os << "name " << rule.name << '\n';
  os << "spider-aware " << (rule.spider_aware ? "yes" : "no") << '\n';
  os << "lhs\n" << print_diagram(rule.lhs, signature);
  os << "rhs\n" << print_diagram(rule.rhs, signature);
  os << "end-rule\n";
  return os.str();
}

RewriteRule parse_rule(std::string_view text) {
  std::vector<Line> lines = tokenize(text);
  const int last = last_line_number(text);
  auto at = [&](size_t i, const std::string& what) -> const Line& {
    if (i >= lines.size()) {
      throw ParseError("unexpected end of input, expected " + what, last + 1, 1);
    }
    return lines[i];
  };
  auto keyword = [&](const Line& l, const std::string& kw, size_t arity) {
    if (l.tokens[0].text != kw || l.tokens.size() != arity + 1) {
      throw ParseError("expected '" + kw + "'", l.number, l.tokens[0].column);
    }
  };
  const Line& h = at(0, "header");
  keyword(h, "gct-rule", 1);
  if (h.tokens[1].text != std::to_string(kFormatVersion)) {
    throw ParseError("unsupported format version", h.number, h.tokens[1].column);
  }
  const Line& n = at(1, "name");
  keyword(n, "name", 1);
  const Line& sa = at(2, "spider-aware");
  keyword(sa, "spider-aware", 1);
  if (sa.tokens[1].text != "yes" && sa.tokens[1].text != "no") {
    throw ParseError("spider-aware must be yes or no", sa.number,
                     sa.tokens[1].column);
  }
  keyword(at(3, "lhs"), "lhs", 0);
  Parser pl(lines, 4, last);
  Diagram lhs = pl.parse().diagram;
  size_t i = pl.position();
  keyword(at(i, "rhs"), "rhs", 0);
  Parser pr(lines, i + 1, last);
  Diagram rhs = pr.parse().diagram;
  i = pr.position();
  const Line& e = at(i, "end-rule");
  keyword(e, "end-rule", 0);
  if (i + 1 != lines.size()) {
    throw ParseError("trailing content after 'end-rule'", lines[i + 1].number, 1);
  }
  try {
    return RewriteRule::make(n.tokens[1].text, lhs, rhs,
                             sa.tokens[1].text == "yes");
  } catch (const TypeMismatchError& err) {
    throw ParseError(err.what(), n.number, n.tokens[1].column);
  }
}

}  // namespace gct
