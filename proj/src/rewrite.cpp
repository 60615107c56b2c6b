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

#include "gct/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "gct/errors.hpp"

namespace gct {

std::vector<int> Matching::image() const {
  std::vector<int> out = node_map;
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool is_spider(const Node& n) { return n.kind == NodeKind::kSpider; }

bool wider(const Node& pattern, const Node& host) {
  return host.n_in() != pattern.n_in() || host.n_out() != pattern.n_out();
}

// Host leg bookkeeping while a matching is assembled.
struct LegUse {
  std::set<Port> outs;  // (node, out slot)
  std::set<Port> ins;   // (node, in slot)
};

std::optional<Matching> build_matching(const Diagram& pattern,
                                       const Diagram& host,
                                       const std::vector<int>& map) {
  Matching m;
  m.node_map = map;
  const std::vector<Wire> pw = pattern.wires();
  m.wire_map.assign(pw.size(), Wire{Matching::kUnattached, Matching::kUnattached});
  m.input_sources.assign(pattern.inputs().size(), Matching::kUnattached);
  m.output_targets.assign(pattern.outputs().size(), Matching::kUnattached);
  LegUse used;

  // Internal wires first, so boundary legs take whatever remains.
  for (size_t k = 0; k < pw.size(); ++k) {
    const Wire& w = pw[k];
    if (w.source.is_boundary() || w.target.is_boundary()) continue;
    const Node& pu = pattern.node(w.source.node);
    const Node& pv = pattern.node(w.target.node);
    const int hu = map[w.source.node];
    const int hv = map[w.target.node];
    const Node& nu = host.node(hu);
    bool found = false;
    for (int s = 0; s < nu.n_out() && !found; ++s) {
      if (!pu.symmetric_legs() && s != w.source.slot) continue;
      const Port src = Port::at(hu, s);
      if (used.outs.count(src)) continue;
      if (nu.outputs[s] != pu.outputs[w.source.slot]) continue;
      const Port dst = host.target_of(src);
      if (dst.node != hv || used.ins.count(dst)) continue;
      if (!pv.symmetric_legs() && dst.slot != w.target.slot) continue;
      used.outs.insert(src);
      used.ins.insert(dst);
      m.wire_map[k] = Wire{src, dst};
      found = true;
    }
    if (!found) return std::nullopt;
  }
  for (size_t k = 0; k < pw.size(); ++k) {
    const Wire& w = pw[k];
    const bool sb = w.source.is_boundary();
    const bool tb = w.target.is_boundary();
    if (!sb && !tb) continue;
    if (sb && tb) continue;  // bare pattern wire, left unattached
    if (sb) {
      const Node& pv = pattern.node(w.target.node);
      const int hv = map[w.target.node];
      const Node& nv = host.node(hv);
      bool found = false;
      for (int t = 0; t < nv.n_in() && !found; ++t) {
        if (!pv.symmetric_legs() && t != w.target.slot) continue;
        const Port dst = Port::at(hv, t);
        if (used.ins.count(dst)) continue;
        if (nv.inputs[t] != pv.inputs[w.target.slot]) continue;
        used.ins.insert(dst);
        const Port src = host.source_of(dst);
        m.wire_map[k] = Wire{src, dst};
        m.input_sources[w.source.slot] = src;
        found = true;
      }
      if (!found) return std::nullopt;
    } else {
      const Node& pu = pattern.node(w.source.node);
      const int hu = map[w.source.node];
      const Node& nu = host.node(hu);
      bool found = false;
      for (int s = 0; s < nu.n_out() && !found; ++s) {
        if (!pu.symmetric_legs() && s != w.source.slot) continue;
        const Port src = Port::at(hu, s);
        if (used.outs.count(src)) continue;
        if (nu.outputs[s] != pu.outputs[w.source.slot]) continue;
        used.outs.insert(src);
        const Port dst = host.target_of(src);
        m.wire_map[k] = Wire{src, dst};
        m.output_targets[w.target.slot] = dst;
        found = true;
      }
      if (!found) return std::nullopt;
    }
  }
  return m;
}

bool has_bare_wire(const Diagram& d) {
  for (const Wire& w : d.wires()) {
    if (w.source.is_boundary() && w.target.is_boundary()) return true;
  }
  return false;
}

void check_fresh(const RewriteRule& rule, const Diagram& host,
                 const Matching& at) {
  const Diagram& p = rule.lhs;
  auto stale = [](const std::string& why) {
    throw StaleMatchingError("matching is stale: " + why);
  };
  if (static_cast<int>(at.node_map.size()) != p.node_count()) stale("node count");
  std::set<int> seen;
  for (int v = 0; v < p.node_count(); ++v) {
    const int h = at.node_map[v];
    if (h < 0 || h >= host.node_count()) stale("node out of range");
    if (!seen.insert(h).second) stale("node map not injective");
    const Node& a = p.node(v);
    const Node& b = host.node(h);
    if (a.kind != b.kind || a.label != b.label || a.has_phase != b.has_phase ||
        (a.has_phase && a.phase != b.phase)) {
      stale("node " + std::to_string(h) + " differs");
    }
    if (wider(a, b) && !(rule.spider_aware && is_spider(a) &&
                         b.n_in() >= a.n_in() && b.n_out() >= a.n_out())) {
      stale("arity of node " + std::to_string(h));
    }
  }
  const std::vector<Wire> pw = p.wires();
  if (at.wire_map.size() != pw.size() ||
      at.input_sources.size() != p.inputs().size() ||
      at.output_targets.size() != p.outputs().size()) {
    stale("boundary shape");
  }
  int internal = 0;
  for (size_t k = 0; k < pw.size(); ++k) {
    const Wire& w = pw[k];
    const Wire& h = at.wire_map[k];
    if (w.source.is_boundary() && w.target.is_boundary()) continue;
    try {
      if (host.target_of(h.source) != h.target) stale("wire moved");
    } catch (const GctError&) {
      stale("wire endpoint out of range");
    }
    if (!w.source.is_boundary() && h.source.node != at.node_map[w.source.node]) {
      stale("wire source");
    }
    if (!w.target.is_boundary() && h.target.node != at.node_map[w.target.node]) {
      stale("wire target");
    }
    if (w.source.is_boundary() && at.input_sources[w.source.slot] != h.source) {
      stale("input attachment");
    }
    if (w.target.is_boundary() && at.output_targets[w.target.slot] != h.target) {
      stale("output attachment");
    }
    if (!w.source.is_boundary() && !w.target.is_boundary()) ++internal;
  }
  int host_internal = 0;
  for (const Wire& w : host.wires()) {
    if (!w.source.is_boundary() && !w.target.is_boundary() &&
        seen.count(w.source.node) && seen.count(w.target.node)) {
      ++host_internal;
    }
  }
  if (host_internal != internal) stale("extra wires inside the image");
}

// Merges spider v into spider u where u feeds v directly. Returns the new
// diagram and the old -> new node id map (both u and v map to the merged
// node).
std::pair<Diagram, std::vector<int>> merge_spiders(const Diagram& d, int u,
                                                   int v) {
  const Node& nu = d.node(u);
  const Node& nv = d.node(v);
  std::vector<int> in_from_v;   // v's input slots not fed by u
  std::vector<int> out_from_u;  // u's output slots not feeding v
  for (int t = 0; t < nv.n_in(); ++t) {
    if (d.source_of(Port::at(v, t)).node != u) in_from_v.push_back(t);
  }
  for (int s = 0; s < nu.n_out(); ++s) {
    if (d.target_of(Port::at(u, s)).node != v) out_from_u.push_back(s);
  }
  const int n_in = nu.n_in() + static_cast<int>(in_from_v.size());
  const int n_out = static_cast<int>(out_from_u.size()) + nv.n_out();
  Node merged = Node::spider(nu.label, nu.carrier, n_in, n_out, nu.phase + nv.phase);

  std::vector<int> ids(d.node_count(), -1);
  DiagramBuilder b(d.inputs(), d.outputs());
  const int lo = std::min(u, v);
  for (int x = 0; x < d.node_count(); ++x) {
    if (x == u || x == v) {
      if (x == lo) ids[u] = ids[v] = b.add(merged);
      continue;
    }
    ids[x] = b.add(d.node(x));
  }
  auto map_in = [&](const Port& p) {
    if (p.is_boundary()) return p;
    if (p.node == u) return Port::at(ids[u], p.slot);
    if (p.node == v) {
      const int k = static_cast<int>(
          std::find(in_from_v.begin(), in_from_v.end(), p.slot) - in_from_v.begin());
      return Port::at(ids[v], nu.n_in() + k);
    }
    return Port::at(ids[p.node], p.slot);
  };
  auto map_out = [&](const Port& p) {
    if (p.is_boundary()) return p;
    if (p.node == u) {
      const int k = static_cast<int>(
          std::find(out_from_u.begin(), out_from_u.end(), p.slot) - out_from_u.begin());
      return Port::at(ids[u], k);
    }
    if (p.node == v) {
      return Port::at(ids[v], static_cast<int>(out_from_u.size()) + p.slot);
    }
    return Port::at(ids[p.node], p.slot);
  };
  for (const Wire& w : d.wires()) {
    if (w.source.node == u && w.target.node == v && !w.source.is_boundary()) continue;
    b.wire(map_out(w.source), map_in(w.target));
  }
  return {b.build(), ids};
}

// Whether v is reachable from u through some node other than a direct wire.
bool indirect_path(const Diagram& d, int u, int v) {
  std::vector<bool> seen(d.node_count(), false);
  std::queue<int> q;
  for (int s = 0; s < d.node(u).n_out(); ++s) {
    const Port t = d.target_of(Port::at(u, s));
    if (t.is_boundary() || t.node == v || seen[t.node]) continue;
    seen[t.node] = true;
    q.push(t.node);
  }
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    if (x == v) return true;
    for (int s = 0; s < d.node(x).n_out(); ++s) {
      const Port t = d.target_of(Port::at(x, s));
      if (t.is_boundary() || seen[t.node]) continue;
      seen[t.node] = true;
      q.push(t.node);
    }
  }
  return false;
}

bool fusable(const Node& a, const Node& b) {
  return is_spider(a) && is_spider(b) && a.label == b.label &&
         a.carrier == b.carrier;
}

}  // namespace

std::vector<Matching> find_matchings(const Diagram& pattern, const Diagram& host,
                                     bool spider_aware, size_t limit) {
  EmbeddingOptions opts;
  opts.spider_aware = spider_aware;
  std::vector<Matching> out;
  for (const std::vector<int>& map : find_node_maps(pattern, host, opts)) {
    if (std::optional<Matching> m = build_matching(pattern, host, map)) {
      out.push_back(std::move(*m));
      if (limit != 0 && out.size() >= limit) break;
    }
  }
  return out;
}

std::vector<Matching> find_matchings(const RewriteRule& rule, const Diagram& host,
                                     size_t limit) {
  return find_matchings(rule.lhs, host, rule.spider_aware, limit);
}

Diagram apply_rule(const RewriteRule& rule, const Diagram& host,
                   const Matching& at) {
  if (has_bare_wire(rule.lhs)) {
    throw PreconditionError("rule " + rule.name +
                            " has a bare wire on its left-hand side");
  }
  check_fresh(rule, host, at);
  const Diagram& lhs = rule.lhs;
  const Diagram& rhs = rule.rhs;
  std::vector<int> pattern_of(host.node_count(), -1);
  for (int v = 0; v < lhs.node_count(); ++v) pattern_of[at.node_map[v]] = v;

  DiagramBuilder b(host.inputs(), host.outputs());
  std::vector<int> kept(host.node_count(), -1);
  for (int x = 0; x < host.node_count(); ++x) {
    if (pattern_of[x] < 0) kept[x] = b.add(host.node(x));
  }
  auto outer_source = [&](const Port& p) {
    return p.is_boundary() ? p : Port::at(kept[p.node], p.slot);
  };
  auto outer_target = [&](const Port& p) {
    return p.is_boundary() ? p : Port::at(kept[p.node], p.slot);
  };
  std::vector<Port> in_src(lhs.inputs().size());
  std::vector<Port> out_dst(lhs.outputs().size());
  for (size_t i = 0; i < in_src.size(); ++i) in_src[i] = outer_source(at.input_sources[i]);
  for (size_t j = 0; j < out_dst.size(); ++j) out_dst[j] = outer_target(at.output_targets[j]);

  // Surplus legs of wide host spiders go to a fresh zero-phase spider that
  // takes over one of the pattern spider's boundary legs.
  std::vector<std::pair<int, bool>> residuals;  // new id, attached on input
  const std::vector<Wire> pw = lhs.wires();
  for (int v = 0; v < lhs.node_count(); ++v) {
    const Node& pn = lhs.node(v);
    const int h = at.node_map[v];
    const Node& hn = host.node(h);
    if (!wider(pn, hn)) continue;
    std::set<int> used_in, used_out;
    int attach_input = -1, attach_output = -1;
    for (size_t k = 0; k < pw.size(); ++k) {
      const Wire& hw = at.wire_map[k];
      if (hw.target.node == h) used_in.insert(hw.target.slot);
      if (hw.source.node == h) used_out.insert(hw.source.slot);
      if (pw[k].source.is_boundary() && pw[k].target.node == v && attach_input < 0) {
        attach_input = pw[k].source.slot;
      }
      if (pw[k].target.is_boundary() && pw[k].source.node == v && attach_output < 0) {
        attach_output = pw[k].target.slot;
      }
    }
    std::vector<Port> extra_src, extra_dst;
    for (int t = 0; t < hn.n_in(); ++t) {
      if (!used_in.count(t)) extra_src.push_back(outer_source(host.source_of(Port::at(h, t))));
    }
    for (int s = 0; s < hn.n_out(); ++s) {
      if (!used_out.count(s)) extra_dst.push_back(outer_target(host.target_of(Port::at(h, s))));
    }
    const int r = b.add(Node::spider(hn.label, hn.carrier,
                                     1 + static_cast<int>(extra_src.size()),
                                     1 + static_cast<int>(extra_dst.size())));
    if (attach_input >= 0) {
      b.wire(in_src[attach_input], Port::at(r, 0));
      in_src[attach_input] = Port::at(r, 0);
      residuals.push_back({r, true});
    } else {
      b.wire(Port::at(r, 0), out_dst[attach_output]);
      out_dst[attach_output] = Port::at(r, 0);
      residuals.push_back({r, false});
    }
    for (size_t k = 0; k < extra_src.size(); ++k) {
      b.wire(extra_src[k], Port::at(r, 1 + static_cast<int>(k)));
    }
    for (size_t k = 0; k < extra_dst.size(); ++k) {
      b.wire(Port::at(r, 1 + static_cast<int>(k)), extra_dst[k]);
    }
  }

  std::vector<int> placed(rhs.node_count());
  for (int v = 0; v < rhs.node_count(); ++v) placed[v] = b.add(rhs.node(v));
  for (const Wire& w : host.wires()) {
    const bool s_in = !w.source.is_boundary() && pattern_of[w.source.node] >= 0;
    const bool t_in = !w.target.is_boundary() && pattern_of[w.target.node] >= 0;
    if (s_in || t_in) continue;
    b.wire(outer_source(w.source), outer_target(w.target));
  }
  for (const Wire& w : rhs.wires()) {
    const Port s = w.source.is_boundary() ? in_src[w.source.slot]
                                          : Port::at(placed[w.source.node], w.source.slot);
    const Port t = w.target.is_boundary() ? out_dst[w.target.slot]
                                          : Port::at(placed[w.target.node], w.target.slot);
    b.wire(s, t);
  }
  Diagram out;
  try {
    out = b.build();
  } catch (const GctError& e) {
    throw StaleMatchingError(std::string("matching is not a convex occurrence: ") +
                             e.what());
  }

  // Fold each residual spider back into the replacement spider it touches.
  for (size_t k = 0; k < residuals.size(); ++k) {
    const auto [r, on_input] = residuals[k];
    const Port far = on_input ? out.target_of(Port::at(r, 0))
                              : out.source_of(Port::at(r, 0));
    if (far.is_boundary() || !fusable(out.node(r), out.node(far.node))) continue;
    const int u = on_input ? r : far.node;
    const int v = on_input ? far.node : r;
    if (indirect_path(out, u, v)) continue;
    auto [merged, ids] = merge_spiders(out, u, v);
    out = std::move(merged);
    for (size_t j = k + 1; j < residuals.size(); ++j) {
      residuals[j].first = ids[residuals[j].first];
    }
  }
  return out;
}

RewriteRule reversed(const RewriteRule& rule) {
  RewriteRule r = rule;
  std::swap(r.lhs, r.rhs);
  return r;
}

namespace {

struct Candidate {
  std::vector<int> key;
  size_t rule = 0;
  Matching matching;
};

std::optional<Candidate> leftmost(const std::vector<RewriteRule>& rules,
                                  const Diagram& host) {
  const std::vector<int> order = host.topological_order();
  std::vector<int> pos(host.node_count());
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::optional<Candidate> best;
  for (size_t r = 0; r < rules.size(); ++r) {
    if (rules[r].lhs.node_count() == 0 || has_bare_wire(rules[r].lhs)) continue;
    for (Matching& m : find_matchings(rules[r], host)) {
      std::vector<int> key;
      for (int h : m.node_map) key.push_back(pos[h]);
      std::sort(key.begin(), key.end());
      if (!best || key < best->key) best = Candidate{key, r, std::move(m)};
    }
  }
  return best;
}

}  // namespace

std::optional<RewriteResult> rewrite_once(const std::vector<RewriteRule>& rules,
                                          const Diagram& host) {
  std::optional<Candidate> c = leftmost(rules, host);
  if (!c) return std::nullopt;
  RewriteResult out;
  out.diagram = apply_rule(rules[c->rule], host, c->matching);
  out.steps.push_back({rules[c->rule].name, false, c->matching.image()});
  return out;
}

RewriteResult normalize(const std::vector<RewriteRule>& rules,
                        const Diagram& host, int budget) {
  RewriteResult out;
  out.diagram = host;
  for (int step = 0;; ++step) {
    std::optional<Candidate> c = leftmost(rules, out.diagram);
    if (!c) return out;
    if (step >= budget) {
      out.budget_exhausted = true;
      return out;
    }
    out.diagram = apply_rule(rules[c->rule], out.diagram, c->matching);
    out.steps.push_back({rules[c->rule].name, false, c->matching.image()});
  }
}

namespace {

// Cheap isomorphism invariant used to bucket visited diagrams.
std::string shape_key(const Diagram& d) {
  std::vector<std::string> parts;
  for (const Node& n : d.nodes()) {
    std::ostringstream os;
    os << static_cast<int>(n.kind) << ':' << n.label << ':' << n.n_in() << ':'
       << n.n_out() << ':' << (n.has_phase ? n.phase.to_string() : "-");
    parts.push_back(os.str());
  }
  std::sort(parts.begin(), parts.end());
  std::ostringstream os;
  os << d.inputs().size() << '/' << d.outputs().size();
  for (const std::string& p : parts) os << '|' << p;
  return os.str();
}

struct SearchSide {
  std::vector<Diagram> seen;
  std::vector<int> parent;
  std::unordered_map<std::string, std::vector<int>> buckets;
  std::deque<int> frontier;

  int find(const Diagram& d) const {
    auto it = buckets.find(shape_key(d));
    if (it == buckets.end()) return -1;
    for (int i : it->second) {
      if (iso_equal(seen[i], d)) return i;
    }
    return -1;
  }
  int add(Diagram d, int from) {
    const int id = static_cast<int>(seen.size());
    buckets[shape_key(d)].push_back(id);
    seen.push_back(std::move(d));
    parent.push_back(from);
    frontier.push_back(id);
    return id;
  }
  std::vector<Diagram> chain(int id) const {
    std::vector<Diagram> out;
    for (int i = id; i >= 0; i = parent[i]) out.push_back(seen[i]);
    return out;  // id back to the root
  }
};

}  // namespace

EquivalenceResult equivalent_under(const std::vector<RewriteRule>& rules,
                                   const Diagram& a, const Diagram& b,
                                   int budget) {
  EquivalenceResult res;
  if (iso_equal(a, b)) {
    res.equivalent = true;
    res.path = {a};
    return res;
  }
  std::vector<RewriteRule> both;
  for (const RewriteRule& r : rules) {
    both.push_back(r);
    both.push_back(reversed(r));
  }
  SearchSide sides[2];
  sides[0].add(a, -1);
  sides[1].add(b, -1);
  while (res.explored < budget) {
    const int s = sides[0].frontier.size() <= sides[1].frontier.size() ? 0 : 1;
    SearchSide& me = sides[s];
    SearchSide& other = sides[1 - s];
    if (me.frontier.empty()) {
      if (other.frontier.empty()) break;
      continue;
    }
    const int id = me.frontier.front();
    me.frontier.pop_front();
    ++res.explored;
    const Diagram cur = me.seen[id];
    for (const RewriteRule& r : both) {
      if (r.lhs.node_count() == 0 || has_bare_wire(r.lhs)) continue;
      for (const Matching& m : find_matchings(r, cur)) {
        Diagram next = apply_rule(r, cur, m);
        if (me.find(next) >= 0) continue;
        const int meet = other.find(next);
        const int mine = me.add(std::move(next), id);
        if (meet >= 0) {
          std::vector<Diagram> left = sides[s].chain(mine);
          std::vector<Diagram> right = other.chain(meet);
          if (s == 1) std::swap(left, right);
          // left runs from the meet back to a, right from the meet to b.
          std::reverse(left.begin(), left.end());
          res.path = left;
          res.path.insert(res.path.end(), right.begin() + 1, right.end());
          res.equivalent = true;
          return res;
        }
      }
    }
  }
  return res;
}

Diagram spider_fuse(const Diagram& d) {
  Diagram cur = d;
  for (;;) {
    bool merged = false;
    for (const Wire& w : cur.wires()) {
      if (w.source.is_boundary() || w.target.is_boundary()) continue;
      const int u = w.source.node;
      const int v = w.target.node;
      if (!fusable(cur.node(u), cur.node(v)) || indirect_path(cur, u, v)) continue;
      cur = merge_spiders(cur, u, v).first;
      merged = true;
      break;
    }
    if (!merged) return cur;
  }
}

std::string CharacteristicMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows; ++i) {
    if (i) os << ',';
    os << '[';
    for (int j = 0; j < cols; ++j) {
      if (j) os << ',';
      os << entries[i][j];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

CharacteristicMatrix characteristic_matrix(const Diagram& d,
                                           const std::string& white,
                                           const std::string& gray) {
  for (int v = 0; v < d.node_count(); ++v) {
    const Node& n = d.node(v);
    const bool ok = is_spider(n) && n.phase.is_zero() &&
                    ((n.label == gray && n.n_out() == 1) ||
                     (n.label == white && n.n_in() == 1));
    if (!ok) {
      throw UnsupportedFragmentError("node " + std::to_string(v) + " (" +
                                     n.label +
                                     ") is outside the bialgebra fragment");
    }
  }
  CharacteristicMatrix chi;
  chi.rows = static_cast<int>(d.inputs().size());
  chi.cols = static_cast<int>(d.outputs().size());
  std::vector<std::vector<long long>> paths(d.node_count(),
                                            std::vector<long long>(chi.rows, 0));
  auto arriving = [&](const Port& src, int i) -> long long {
    if (src.is_boundary()) return src.slot == i ? 1 : 0;
    return paths[src.node][i];
  };
  for (int v : d.topological_order()) {
    for (int t = 0; t < d.node(v).n_in(); ++t) {
      const Port src = d.source_of(Port::at(v, t));
      for (int i = 0; i < chi.rows; ++i) paths[v][i] += arriving(src, i);
    }
  }
  chi.entries.assign(chi.rows, std::vector<long long>(chi.cols, 0));
  for (int j = 0; j < chi.cols; ++j) {
    const Port src = d.source_of(Port::boundary(j));
    for (int i = 0; i < chi.rows; ++i) chi.entries[i][j] = arriving(src, i);
  }
  return chi;
}

Diagram normal_form_of(const CharacteristicMatrix& chi, const System& carrier,
                       const std::string& white, const std::string& gray) {
  std::vector<int> row_sum(chi.rows, 0), col_sum(chi.cols, 0);
  for (int i = 0; i < chi.rows; ++i) {
    for (int j = 0; j < chi.cols; ++j) {
      if (chi.at(i, j) < 0) throw PreconditionError("negative path count");
      row_sum[i] += static_cast<int>(chi.at(i, j));
      col_sum[j] += static_cast<int>(chi.at(i, j));
    }
  }
  DiagramBuilder b(std::vector<System>(chi.rows, carrier),
                   std::vector<System>(chi.cols, carrier));
  for (int i = 0; i < chi.rows; ++i) b.add(Node::spider(white, carrier, 1, row_sum[i]));
  for (int j = 0; j < chi.cols; ++j) b.add(Node::spider(gray, carrier, col_sum[j], 1));
  for (int i = 0; i < chi.rows; ++i) b.wire(Port::boundary(i), Port::at(i, 0));
  for (int j = 0; j < chi.cols; ++j) {
    b.wire(Port::at(chi.rows + j, 0), Port::boundary(j));
  }
  std::vector<int> next_out(chi.rows, 0), next_in(chi.cols, 0);
  for (int i = 0; i < chi.rows; ++i) {
    for (int j = 0; j < chi.cols; ++j) {
      for (long long k = 0; k < chi.at(i, j); ++k) {
        b.wire(Port::at(i, next_out[i]++), Port::at(chi.rows + j, next_in[j]++));
      }
    }
  }
  return b.build();
}

Diagram bialg_normal_form(const Diagram& d, const std::string& white,
                          const std::string& gray) {
  const CharacteristicMatrix chi = characteristic_matrix(d, white, gray);
  std::vector<System> boundary = d.inputs();
  boundary.insert(boundary.end(), d.outputs().begin(), d.outputs().end());
  System carrier;
  if (!boundary.empty()) carrier = boundary[0];
  for (const System& s : boundary) {
    if (s != carrier) {
      throw UnsupportedFragmentError("bialgebra fragment mixes systems " +
                                     carrier.to_string() + " and " + s.to_string());
    }
  }
  return normal_form_of(chi, carrier, white, gray);
}

ModelBinding pair_model(const ObservablePair& pair, const System& system) {
  ModelBinding m;
  m.name = "pair";
  m.semiring = pair.white.semiring();
  m.dims[system.name] = pair.dim();
  m.observables["white"] = pair.white;
  m.observables["gray"] = pair.gray;
  m.set_generator("S", pair.antipode);
  return m;
}

ObservablePair z2_bialgebra_pair() {
  const Semiring s = Semiring::kComplex;
  ObservableStructure white = standard_copy("white", s, 2);
  Tensor mu(s, {2}, {2, 2});
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) mu.at(x ^ y, 2 * x + y) = 1.0;
  }
  ObservableStructure gray =
      ObservableStructure::from_algebra("gray", mu, Tensor::point(s, {1.0, 0.0}));
  return ObservablePair::make(std::move(white), std::move(gray));
}

namespace {

Complex measured_scalar(const RewriteRule& r, const ModelBinding& m) {
  Complex lambda;
  if (!find_scalar_ratio(interpret(r.lhs, m), interpret(r.rhs, m), &lambda,
                         default_tolerance())) {
    throw PreconditionError("rule " + r.name +
                            " does not hold up to a scalar in this model");
  }
  return lambda;
}

}  // namespace

CollapseResult collapse_bipartite(const Diagram& d, const ObservablePair& pair,
                                  std::vector<int> region) {
  if (region.empty()) {
    region.resize(d.node_count());
    std::iota(region.begin(), region.end(), 0);
  }
  std::sort(region.begin(), region.end());
  region.erase(std::unique(region.begin(), region.end()), region.end());
  if (region.empty()) throw PreconditionError("empty region");
  std::set<int> in_region(region.begin(), region.end());
  for (int v : region) {
    if (v < 0 || v >= d.node_count()) throw IndexError("region node out of range");
  }

  // Connectivity of the region through its own wires.
  std::map<int, int> comp;
  for (int v : region) comp[v] = v;
  std::function<int(int)> root = [&](int x) {
    return comp[x] == x ? x : comp[x] = root(comp[x]);
  };
  for (const Wire& w : d.wires()) {
    if (w.source.is_boundary() || w.target.is_boundary()) continue;
    if (in_region.count(w.source.node) && in_region.count(w.target.node)) {
      comp[root(w.source.node)] = root(w.target.node);
    }
  }
  for (int v : region) {
    if (root(v) != root(region[0])) throw PreconditionError("region is not connected");
  }

  std::vector<int> whites, grays;
  for (int v : region) {
    const Node& n = d.node(v);
    if (!is_spider(n) || !n.phase.is_zero()) {
      throw PreconditionError("region node " + std::to_string(v) +
                              " is not a zero-phase spider");
    }
    if (n.label == "white") {
      whites.push_back(v);
    } else if (n.label == "gray") {
      grays.push_back(v);
    } else {
      throw PreconditionError("region node " + std::to_string(v) +
                              " has colour " + n.label);
    }
  }
  const int m = static_cast<int>(whites.size());
  const int n = static_cast<int>(grays.size());
  auto not_bipartite = [] {
    throw PreconditionError(
        "region is not a complete bipartite graph of white copies into gray "
        "merges");
  };
  if (m == 0 || n == 0) not_bipartite();
  const System carrier = d.node(region[0]).carrier;
  for (int w : whites) {
    const Node& nw = d.node(w);
    if (nw.carrier != carrier || nw.n_in() != 1 || nw.n_out() != n) not_bipartite();
    const Port src = d.source_of(Port::at(w, 0));
    if (!src.is_boundary() && in_region.count(src.node)) not_bipartite();
    std::set<int> targets;
    for (int s = 0; s < n; ++s) {
      const Port t = d.target_of(Port::at(w, s));
      if (t.is_boundary() || d.node(t.node).label != "gray" ||
          !in_region.count(t.node)) {
        not_bipartite();
      }
      targets.insert(t.node);
    }
    if (static_cast<int>(targets.size()) != n) not_bipartite();
  }
  for (int g : grays) {
    const Node& ng = d.node(g);
    if (ng.carrier != carrier || ng.n_out() != 1 || ng.n_in() != m) not_bipartite();
    const Port t = d.target_of(Port::at(g, 0));
    if (!t.is_boundary() && in_region.count(t.node)) not_bipartite();
  }

  const std::vector<System> ins(m, carrier), outs(n, carrier);
  DiagramBuilder lb(ins, outs);
  for (int i = 0; i < m; ++i) lb.add(Node::spider("white", carrier, 1, n));
  for (int j = 0; j < n; ++j) lb.add(Node::spider("gray", carrier, m, 1));
  for (int i = 0; i < m; ++i) {
    lb.wire(Port::boundary(i), Port::at(i, 0));
    for (int j = 0; j < n; ++j) lb.wire(Port::at(i, j), Port::at(m + j, i));
  }
  for (int j = 0; j < n; ++j) lb.wire(Port::at(m + j, 0), Port::boundary(j));
  DiagramBuilder rb(ins, outs);
  const int g = rb.add(Node::spider("gray", carrier, m, 1));
  const int w = rb.add(Node::spider("white", carrier, 1, n));
  for (int i = 0; i < m; ++i) rb.wire(Port::boundary(i), Port::at(g, i));
  rb.wire(Port::at(g, 0), Port::at(w, 0));
  for (int j = 0; j < n; ++j) rb.wire(Port::at(w, j), Port::boundary(j));
  const RewriteRule rule = RewriteRule::make("collapse", lb.build(), rb.build());

  CollapseResult out;
  out.scalar = measured_scalar(rule, pair_model(pair, carrier));
  for (const Matching& mt : find_matchings(rule, d)) {
    if (mt.image() == region) {
      out.diagram = apply_rule(rule, d, mt);
      return out;
    }
  }
  // The shape checks above guarantee an occurrence unless the region is
  // not convex in d.
  throw PreconditionError("region is not a convex occurrence");
}

std::vector<std::string> builtin_rule_names() {
  return {"fuse", "bialg", "hopf", "yank", "copy"};
}

BuiltinRule builtin_rule(const std::string& name, const ObservablePair& pair,
                         const System& x) {
  auto white = [&](int a, int b) { return Node::spider("white", x, a, b); };
  auto gray = [&](int a, int b) { return Node::spider("gray", x, a, b); };
  RewriteRule r;
  if (name == "fuse") {
    DiagramBuilder l({x}, {x});
    const int a = l.add(white(1, 1));
    const int c = l.add(white(1, 1));
    l.wire(Port::boundary(0), Port::at(a, 0));
    l.wire(Port::at(a, 0), Port::at(c, 0));
    l.wire(Port::at(c, 0), Port::boundary(0));
    r = RewriteRule::make(name, l.build(), Diagram::generator(white(1, 1)), true);
  } else if (name == "bialg") {
    DiagramBuilder l({x, x}, {x, x});
    const int mu = l.add(gray(2, 1));
    const int de = l.add(white(1, 2));
    l.wire(Port::boundary(0), Port::at(mu, 0));
    l.wire(Port::boundary(1), Port::at(mu, 1));
    l.wire(Port::at(mu, 0), Port::at(de, 0));
    l.wire(Port::at(de, 0), Port::boundary(0));
    l.wire(Port::at(de, 1), Port::boundary(1));
    DiagramBuilder rb({x, x}, {x, x});
    const int d0 = rb.add(white(1, 2));
    const int d1 = rb.add(white(1, 2));
    const int m0 = rb.add(gray(2, 1));
    const int m1 = rb.add(gray(2, 1));
    rb.wire(Port::boundary(0), Port::at(d0, 0));
    rb.wire(Port::boundary(1), Port::at(d1, 0));
    rb.wire(Port::at(d0, 0), Port::at(m0, 0));
    rb.wire(Port::at(d0, 1), Port::at(m1, 0));
    rb.wire(Port::at(d1, 0), Port::at(m0, 1));
    rb.wire(Port::at(d1, 1), Port::at(m1, 1));
    rb.wire(Port::at(m0, 0), Port::boundary(0));
    rb.wire(Port::at(m1, 0), Port::boundary(1));
    r = RewriteRule::make(name, l.build(), rb.build());
  } else if (name == "hopf") {
    DiagramBuilder l({x}, {x});
    const int de = l.add(white(1, 2));
    const int s = l.add(Node::box("S", {x}, {x}, "S"));
    const int mu = l.add(gray(2, 1));
    l.wire(Port::boundary(0), Port::at(de, 0));
    l.wire(Port::at(de, 0), Port::at(mu, 0));
    l.wire(Port::at(de, 1), Port::at(s, 0));
    l.wire(Port::at(s, 0), Port::at(mu, 1));
    l.wire(Port::at(mu, 0), Port::boundary(0));
    DiagramBuilder rb({x}, {x});
    const int ep = rb.add(white(1, 0));
    const int et = rb.add(gray(0, 1));
    rb.wire(Port::boundary(0), Port::at(ep, 0));
    rb.wire(Port::at(et, 0), Port::boundary(0));
    r = RewriteRule::make(name, l.build(), rb.build());
  } else if (name == "yank") {
    DiagramBuilder l({x}, {x});
    const int cup = l.add(Node::cup(x));
    const int cap = l.add(Node::cap(x));
    l.wire(Port::boundary(0), Port::at(cap, 0));
    l.wire(Port::at(cup, 0), Port::at(cap, 1));
    l.wire(Port::at(cup, 1), Port::boundary(0));
    r = RewriteRule::make(name, l.build(), Diagram::identity({x}));
  } else if (name == "copy") {
    DiagramBuilder l({}, {x, x});
    const int et = l.add(gray(0, 1));
    const int de = l.add(white(1, 2));
    l.wire(Port::at(et, 0), Port::at(de, 0));
    l.wire(Port::at(de, 0), Port::boundary(0));
    l.wire(Port::at(de, 1), Port::boundary(1));
    r = RewriteRule::make(name, l.build(),
                          tensor(Diagram::generator(gray(0, 1)),
                                 Diagram::generator(gray(0, 1))));
  } else {
    throw PreconditionError("unknown builtin rule '" + name + "'");
  }
  return BuiltinRule{r, measured_scalar(r, pair_model(pair, x))};
}

}  // namespace gct
