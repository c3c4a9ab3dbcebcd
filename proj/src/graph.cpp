#include "shiftlab/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "shiftlab/errors.hpp"

namespace shiftlab {

FiniteGraph::FiniteGraph(Alphabet alphabet, std::vector<Edge> edges)
    : alphabet_(std::move(alphabet)), edges_(std::move(edges)) {
  const auto n = alphabet_.size();
  for (const auto& [u, v] : edges_) {
    if (u >= n || v >= n)
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") references a vertex outside the alphabet");
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw InputError("duplicate edge " + alphabet_.name(dup->first) + "->" +
                     alphabet_.name(dup->second));
  succ_.assign(n, {});
  pred_.assign(n, {});
  for (const auto& [u, v] : edges_) {
    succ_[u].push_back(v);
    pred_[v].push_back(u);
  }
  for (auto& p : pred_) std::sort(p.begin(), p.end());
}

bool FiniteGraph::has_edge(Symbol u, Symbol v) const {
  if (u >= succ_.size()) return false;
  const auto& s = succ_[u];
  return std::binary_search(s.begin(), s.end(), v);
}

bool FiniteGraph::is_word(const Word& w) const {
  for (Symbol s : w)
    if (s >= vertex_count()) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (!has_edge(w[i], w[i + 1])) return false;
  return true;
}

std::vector<Word> FiniteGraph::words(std::size_t n) const {
  std::vector<Word> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  Word w;
  w.reserve(n);
  std::function<void()> extend = [&] {
    if (w.size() == n) {
      out.push_back(w);
      return;
    }
    for (Symbol s : successors(w.back())) {
      w.push_back(s);
      extend();
      w.pop_back();
    }
  };
  for (Symbol v = 0; v < vertex_count(); ++v) {
    w.assign(1, v);
    extend();
  }
  return out;
}

std::vector<std::vector<Symbol>> strongly_connected_components(const FiniteGraph& g) {
  const auto n = g.vertex_count();
  // Kosaraju: finishing order on g, then sweep the reverse graph.
  std::vector<Symbol> order;
  std::vector<char> seen(n, 0);
  for (Symbol root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<Symbol, std::size_t>> stack{{root, 0}};
    seen[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      const auto& succ = g.successors(v);
      if (i < succ.size()) {
        Symbol w = succ[i++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<Symbol>> comps;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<Symbol> stack{*it};
    comp[*it] = id;
    while (!stack.empty()) {
      Symbol v = stack.back();
      stack.pop_back();
      comps[id].push_back(v);
      for (Symbol u : g.predecessors(v)) {
        if (comp[u] < 0) {
          comp[u] = id;
          stack.push_back(u);
        }
      }
    }
  }
  for (auto& c : comps) std::sort(c.begin(), c.end());
  std::sort(comps.begin(), comps.end());
  return comps;
}

Irreducibility irreducible_and_period(const FiniteGraph& g) {
  Irreducibility r;
  if (g.vertex_count() == 0 || g.edge_count() == 0) return r;
  if (strongly_connected_components(g).size() != 1) return r;
  std::vector<long> level(g.vertex_count(), -1);
  std::queue<Symbol> q;
  level[0] = 0;
  q.push(0);
  while (!q.empty()) {
    Symbol v = q.front();
    q.pop();
    for (Symbol w : g.successors(v)) {
      if (level[w] < 0) {
        level[w] = level[v] + 1;
        q.push(w);
      }
    }
  }
  long d = 0;
  for (const auto& [u, v] : g.edges()) d = std::gcd(d, std::labs(level[u] + 1 - level[v]));
  r.irreducible = true;
  r.period = static_cast<unsigned>(d);
  return r;
}

GraphBuild build_graph(std::vector<std::string> names, std::vector<Edge> edges) {
  if (edges.empty()) throw InputError("graph has no edges");
  FiniteGraph raw(Alphabet(std::move(names)), std::move(edges));
  return build_graph(raw);
}

GraphBuild build_graph(const FiniteGraph& raw) {
  const auto n = raw.vertex_count();
  if (raw.edge_count() == 0) throw InputError("graph has no edges");
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
  for (const auto& [u, v] : raw.edges()) {
    ++outdeg[u];
    ++indeg[v];
  }
  std::queue<Symbol> dead;
  for (Symbol v = 0; v < n; ++v)
    if (indeg[v] == 0 || outdeg[v] == 0) dead.push(v);
  while (!dead.empty()) {
    Symbol v = dead.front();
    dead.pop();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (Symbol w : raw.successors(v))
      if (alive[w] && --indeg[w] == 0) dead.push(w);
    for (Symbol u : raw.predecessors(v))
      if (alive[u] && --outdeg[u] == 0) dead.push(u);
  }

  GraphBuild out;
  std::vector<Symbol> remap(n, 0);
  std::vector<std::string> kept;
  for (Symbol v = 0; v < n; ++v) {
    if (alive[v]) {
      remap[v] = static_cast<Symbol>(kept.size());
      kept.push_back(raw.alphabet().name(v));
    } else {
      out.pruned.push_back(raw.alphabet().name(v));
    }
  }
  if (kept.empty()) throw InputError("graph is empty after pruning");
  std::vector<Edge> kept_edges;
  for (const auto& [u, v] : raw.edges())
    if (alive[u] && alive[v]) kept_edges.emplace_back(remap[u], remap[v]);
  out.graph = FiniteGraph(Alphabet(std::move(kept)), std::move(kept_edges));

  auto comps = strongly_connected_components(out.graph);
  if (comps.size() != 1) {
    std::vector<std::vector<std::string>> named;
    std::string msg = "graph is not irreducible; components:";
    for (const auto& c : comps) {
      named.emplace_back();
      msg += " {";
      for (std::size_t i = 0; i < c.size(); ++i) {
        named.back().push_back(out.graph.alphabet().name(c[i]));
        msg += (i ? "," : "") + named.back().back();
      }
      msg += "}";
    }
    throw NotIrreducible(msg, std::move(named));
  }
  out.period = irreducible_and_period(out.graph).period;
  return out;
}

bool for_each_periodic(const FiniteGraph& g, std::size_t n, const Word& prefix,
                       const std::function<void(const Word&)>& visit) {
  if (n == 0) throw InputError("period must be at least 1");
  if (!g.is_word(prefix)) return false;
  if (prefix.size() > n) {
    // x[0, |prefix|-1] of an n-periodic point repeats its first n symbols.
    for (std::size_t i = n; i < prefix.size(); ++i)
      if (prefix[i] != prefix[i - n]) return true;
    visit(Word(prefix.begin(), prefix.begin() + static_cast<long>(n)));
    return true;
  }
  Word w;
  w.reserve(n);
  auto close = [&] {
    if (g.has_edge(w.back(), w.front())) visit(w);
  };
  std::function<void()> extend = [&] {
    if (w.size() == n) {
      close();
      return;
    }
    for (Symbol s : g.successors(w.back())) {
      w.push_back(s);
      extend();
      w.pop_back();
    }
  };
  if (prefix.empty()) {
    for (Symbol v = 0; v < g.vertex_count(); ++v) {
      w.assign(1, v);
      extend();
    }
  } else {
    w = prefix;
    extend();
  }
  return true;
}

PeriodicEnumeration enumerate_periodic(const FiniteGraph& g, std::size_t n, const Word& prefix) {
  PeriodicEnumeration out;
  out.prefix_admissible =
      for_each_periodic(g, n, prefix, [&](const Word& w) { out.points.push_back({w}); });
  return out;
}

Symbol HigherBlock::vertex_of(const Word& block) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), block);
  if (it == blocks.end() || *it != block) throw InputError("not an admissible block");
  return static_cast<Symbol>(it - blocks.begin());
}

HigherBlock higher_block(const FiniteGraph& g, std::size_t n) {
  if (n == 0) throw InputError("block length must be at least 1");
  HigherBlock hb;
  hb.block_length = n;
  hb.blocks = g.words(n);
  if (hb.blocks.empty()) throw InputError("no admissible words of the requested length");
  std::vector<std::string> names;
  names.reserve(hb.blocks.size());
  for (const auto& b : hb.blocks) {
    if (g.alphabet().compact() || n == 1) {
      names.push_back(g.format(b));
    } else {
      std::string s;
      for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "." : "") + g.alphabet().name(b[i]);
      names.push_back(s);
    }
    hb.label.push_back(b.front());
  }
  std::vector<Edge> edges;
  for (Symbol u = 0; u < hb.blocks.size(); ++u) {
    Word next(hb.blocks[u].begin() + 1, hb.blocks[u].end());
    next.push_back(0);
    for (Symbol s : g.successors(hb.blocks[u].back())) {
      next.back() = s;
      edges.emplace_back(u, hb.vertex_of(next));
    }
  }
  hb.graph = FiniteGraph(Alphabet(std::move(names)), std::move(edges));
  return hb;
}

}  // namespace shiftlab
