#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "shiftlab/alphabet.hpp"

namespace shiftlab {

using Edge = std::pair<Symbol, Symbol>;

/// A finite directed graph on a named vertex set; its bi-infinite vertex
/// paths form the Markov shift.  Edges are kept sorted so every traversal
/// visits successors in increasing symbol order.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  // Throws InputError on duplicate or out-of-range edges.  Does not prune.
  FiniteGraph(Alphabet alphabet, std::vector<Edge> edges);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t vertex_count() const noexcept { return alphabet_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Symbol>& successors(Symbol v) const { return succ_.at(v); }
  const std::vector<Symbol>& predecessors(Symbol v) const { return pred_.at(v); }
  bool has_edge(Symbol u, Symbol v) const;

  // A word is admissible when consecutive symbols are joined by edges.  The
  // empty word is admissible.
  bool is_word(const Word& w) const;

  // Words of length n, lexicographic.
  std::vector<Word> words(std::size_t n) const;

  Word parse_word(std::string_view text) const { return alphabet_.parse_word(text); }
  std::string format(const Word& w) const { return alphabet_.format(w); }

  bool operator==(const FiniteGraph& other) const {
    return alphabet_ == other.alphabet_ && edges_ == other.edges_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Symbol>> succ_;
  std::vector<std::vector<Symbol>> pred_;
};

struct GraphBuild {
  FiniteGraph graph;
  std::vector<std::string> pruned;  // names of removed vertices
  unsigned period = 0;
};

/// Validates a raw description, prunes vertices with no bi-infinite
/// continuation and checks irreducibility.  Throws InputError for an empty
/// or duplicate-edge description and NotIrreducible (carrying the strongly
/// connected components) otherwise.
GraphBuild build_graph(std::vector<std::string> names, std::vector<Edge> edges);
GraphBuild build_graph(const FiniteGraph& raw);

struct Irreducibility {
  bool irreducible = false;
  unsigned period = 0;  // gcd of cycle lengths; 0 when not irreducible
  bool mixing() const noexcept { return irreducible && period == 1; }
};

Irreducibility irreducible_and_period(const FiniteGraph& g);

// Strongly connected components in order of their smallest vertex.
std::vector<std::vector<Symbol>> strongly_connected_components(const FiniteGraph& g);

struct PeriodicPoint {
  Word word;  // word[i] -> word[(i+1) % n] are edges
  std::size_t period() const noexcept { return word.size(); }
};

struct PeriodicEnumeration {
  std::vector<PeriodicPoint> points;
  bool prefix_admissible = true;
};

/// The n-periodic points x with x[0, |prefix|-1] = prefix, in lexicographic
/// order of their length-n words.  A prefix longer than n is matched
/// cyclically.
PeriodicEnumeration enumerate_periodic(const FiniteGraph& g, std::size_t n,
                                       const Word& prefix = {});

// Visitor form of enumerate_periodic; same order, no materialization.
// Returns false when the prefix is not admissible.
bool for_each_periodic(const FiniteGraph& g, std::size_t n, const Word& prefix,
                       const std::function<void(const Word&)>& visit);

/// N-block presentation: vertices are the admissible N-words (in
/// lexicographic order), u0..u_{N-1} -> u1..u_N whenever u0..u_N is a word,
/// and `label` sends each block to its first symbol.
struct HigherBlock {
  FiniteGraph graph;
  std::vector<Word> blocks;
  std::vector<Symbol> label;
  std::size_t block_length = 1;

  // Vertex of an admissible block; throws InputError otherwise.
  Symbol vertex_of(const Word& block) const;
};

HigherBlock higher_block(const FiniteGraph& g, std::size_t n);


}  // namespace shiftlab
