#include "shiftlab/induction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

// Ambient (N+1)-word carried by the block-graph edge u -> v.
Word edge_word(const HigherBlock& hb, Symbol u, Symbol v) {
  Word w = hb.blocks[u];
  w.push_back(hb.blocks[v].back());
  return w;
}

bool is_base(const InducedPresentation& ind, Symbol v) {
  return std::find(ind.base_vertices.begin(), ind.base_vertices.end(), v) != ind.base_vertices.end();
}

// Transfer tails for returns longer than maxlen; `weight` gives the
// multiplicative weight of a block-graph edge.
std::vector<LoopTail> transfer_tails(const InducedPresentation& ind,
                                     const std::function<double(Symbol, Symbol)>& weight) {
  const auto& hb = ind.blocks;
  const auto n = static_cast<Eigen::Index>(hb.blocks.size());
  Eigen::MatrixXd body = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : hb.graph.edges())
    if (!is_base(ind, u) && !is_base(ind, v)) body(u, v) = weight(u, v);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t j = 1; j < ind.maxlen; ++j) power = power * body;

  const auto b = ind.base_vertices.size();
  std::vector<LoopTail> tails(b * b);
  for (std::size_t i = 0; i < b; ++i) {
    Eigen::VectorXd entry = Eigen::VectorXd::Zero(n);
    for (Symbol u : hb.graph.successors(ind.base_vertices[i]))
      if (!is_base(ind, u)) entry[u] = weight(ind.base_vertices[i], u);
    const Eigen::VectorXd shifted = power.transpose() * entry;
    for (std::size_t j = 0; j < b; ++j) {
      Eigen::VectorXd exit = Eigen::VectorXd::Zero(n);
      for (Symbol v : hb.graph.predecessors(ind.base_vertices[j]))
        if (!is_base(ind, v)) exit[v] = weight(v, ind.base_vertices[j]);
      LoopTail t;
      t.kind = LoopTail::Kind::transfer;
      t.start = ind.maxlen + 1;
      t.transfer = {shifted, body, exit};
      tails[i * b + j] = t.vanishes() ? LoopTail::zero() : t;
    }
  }
  return tails;
}

std::size_t base_index(const InducedPresentation& ind, Symbol v) {
  return static_cast<std::size_t>(
      std::find(ind.base_vertices.begin(), ind.base_vertices.end(), v) - ind.base_vertices.begin());
}

}  // namespace

InducedPresentation induce(const FiniteGraph& g, const Word& w1, const Word& w2, std::size_t maxlen) {
  if (w1.empty() || w2.empty()) throw InputError("source words must be nonempty");
  if (w1.size() != w2.size()) throw InputError("source words must have a common length");
  if (!g.is_word(w1)) throw InputError("source word " + g.format(w1) + " is not admissible");
  if (!g.is_word(w2)) throw InputError("source word " + g.format(w2) + " is not admissible");
  if (maxlen < w1.size()) throw InputError("maxlen must be at least the source word length");

  InducedPresentation ind;
  ind.ambient = g;
  ind.N = w1.size();
  ind.maxlen = maxlen;
  ind.blocks = higher_block(g, ind.N);
  ind.source_words.push_back(w1);
  ind.base_vertices.push_back(ind.blocks.vertex_of(w1));
  if (w2 != w1) {
    ind.source_words.push_back(w2);
    ind.base_vertices.push_back(ind.blocks.vertex_of(w2));
  }
  ind.M = static_cast<unsigned>(ind.N - 1);

  auto& ls = ind.loops;
  for (const auto& w : ind.source_words) ls.base.push_back(g.format(w));
  ls.labels = g.alphabet();

  const auto& hb = ind.blocks;
  std::vector<Symbol> path;
  std::function<void(unsigned)> extend = [&](unsigned from) {
    for (Symbol v : hb.graph.successors(path.back())) {
      if (is_base(ind, v)) {
        Loop l;
        l.length = path.size();
        l.from = from;
        l.to = static_cast<unsigned>(base_index(ind, v));
        Word label;
        for (Symbol p : path) label.push_back(hb.label[p]);
        l.label = std::move(label);
        ls.loops.push_back(std::move(l));
      } else if (path.size() < maxlen) {
        path.push_back(v);
        extend(from);
        path.pop_back();
      }
    }
  };
  for (unsigned i = 0; i < ind.base_vertices.size(); ++i) {
    path = {ind.base_vertices[i]};
    extend(i);
  }
  std::sort(ls.loops.begin(), ls.loops.end(), [](const Loop& a, const Loop& b) {
    return std::tie(a.from, a.to, a.length, *a.label) < std::tie(b.from, b.to, b.length, *b.label);
  });
  if (ls.loops.empty())
    throw InputError("no return to the source words within maxlen = " + std::to_string(maxlen));
  ls.tails = transfer_tails(ind, [](Symbol, Symbol) { return 1.0; });
  validate(ls);
  return ind;
}

SourceWords choose_source_words(const FiniteGraph& g, const Word& w1, const Word& w2,
                                std::size_t max_extra) {
  if (w1.empty() || w1.size() != w2.size())
    throw InputError("words must be nonempty and of a common length (pad the shorter one)");
  if (!g.is_word(w1) || !g.is_word(w2)) throw InputError("words must be admissible");

  // First (a, b) with |a| + |b| = total, ordered by |a| then lexicographically.
  auto completion = [&](const Word& w, std::size_t total) -> std::optional<std::pair<Word, Word>> {
    for (std::size_t la = 1; la < total; ++la) {
      const auto as = g.words(la);
      const auto bs = g.words(total - la);
      for (const auto& a : as) {
        Word head = w;
        head.insert(head.end(), a.begin(), a.end());
        head.insert(head.end(), w.begin(), w.end());
        if (!g.is_word(head)) continue;
        for (const auto& b : bs) {
          if (!g.has_edge(head.back(), b.front())) continue;
          return std::make_pair(a, b);
        }
      }
    }
    return std::nullopt;
  };
  for (std::size_t total = 2; total <= max_extra; ++total) {
    auto c1 = completion(w1, total);
    auto c2 = completion(w2, total);
    if (!c1 || !c2) continue;
    SourceWords s;
    s.w1 = w1;
    s.w2 = w2;
    std::tie(s.a1, s.b1) = *c1;
    std::tie(s.a2, s.b2) = *c2;
    auto join = [](const Word& w, const Word& a, const Word& b) {
      Word out = w;
      out.insert(out.end(), a.begin(), a.end());
      out.insert(out.end(), w.begin(), w.end());
      out.insert(out.end(), b.begin(), b.end());
      return out;
    };
    s.W1 = join(w1, s.a1, s.b1);
    s.W2 = join(w2, s.a2, s.b2);
    s.L = static_cast<unsigned>(w1.size());
    const std::size_t N = s.W1.size();
    s.M = static_cast<unsigned>(std::max(N - s.b1.size() - s.L - 1, N - s.b2.size() - s.L - 1));
    return s;
  }
  throw InputError("no completion w a w b of common length within " + std::to_string(max_extra) +
                   " extra symbols");
}

InducedPresentation induce_from_words(const FiniteGraph& g, const SourceWords& s, std::size_t maxlen) {
  auto ind = induce(g, s.W1, s.W2, maxlen);
  ind.direct = false;
  ind.L = s.L;
  ind.M = s.M;
  return ind;
}

LiftedPotential lift_potential(const InducedPresentation& ind, const FiniteRangePotential& f,
                               const std::optional<VariationCertificate>& cert) {
  if (!(f.graph() == ind.ambient)) throw InputError("potential is defined over a different graph");
  const unsigned m = f.left_range();
  const unsigned r = f.right_range();
  LiftedPotential out;
  out.shift = ind.direct ? m : ind.L;
  const unsigned s = out.shift;
  if (s < m || s + r > ind.N + 1)
    throw InputError("potential window does not fit the return context: needs left range <= " +
                     std::to_string(s) + " and shift + right range <= " + std::to_string(ind.N + 1));

  // The summand at step i reads positions i+s-m .. i+s+r-1 of label . W_target.
  auto window = [&](const Word& context, std::size_t i) {
    const auto b = context.begin() + static_cast<long>(i + s - m);
    return Word(b, b + static_cast<long>(m + r));
  };
  out.loops = ind.loops;
  for (auto& l : out.loops.loops) {
    Word context = *l.label;
    const auto& target = ind.source_words[l.to];
    context.insert(context.end(), target.begin(), target.end());
    double sum = 0.0;
    std::optional<Rational> exact = f.is_exact() ? std::optional<Rational>(0) : std::nullopt;
    for (std::size_t i = 0; i < l.length; ++i) {
      const auto idx = f.index(window(context, i));
      sum += f.values()[idx];
      if (exact) *exact += f.exact_at(idx);
    }
    l.log_weight = exact ? to_double(*exact) : sum;
    l.exact_log_weight = exact;
  }
  out.loops.tails = transfer_tails(ind, [&](Symbol u, Symbol v) {
    return std::exp(f.value(window(edge_word(ind.blocks, u, v), 0)));
  });
  if (cert) {
    validate_certificate_for(f, *cert);
    out.certificate = lift_variation(*cert, s, ind.M);
  }
  return out;
}

CoincidenceReport verify_zn_coincidence(const FiniteGraph& g, const FiniteRangePotential& f,
                                        const InducedPresentation& ind, std::size_t n_max) {
  return verify_zn_coincidence(g, f, ind, lift_potential(ind, f).loops, n_max);
}

CoincidenceReport verify_zn_coincidence(const FiniteGraph& g, const FiniteRangePotential& f,
                                        const InducedPresentation& ind, const LoopSystem& lifted,
                                        std::size_t n_max) {
  validate(lifted);
  const auto b = lifted.base_count();
  const auto left = partition_function(g, f, ind.source_words[0], n_max);
  if (left.truncated) throw InputError("enumeration budget exceeded on the ambient side");

  bool exact = std::all_of(lifted.loops.begin(), lifted.loops.end(),
                           [](const Loop& l) { return l.exact_log_weight.has_value(); });
  std::size_t tail_start = std::numeric_limits<std::size_t>::max();
  for (const auto& t : lifted.tails)
    if (!t.vanishes()) tail_start = std::min(tail_start, t.start);

  // paths[n][j]: weight of loop sequences from base 0 to base j of length n.
  std::vector<std::vector<double>> paths(n_max + 1, std::vector<double>(b, 0.0));
  std::vector<std::vector<ExpSum>> exact_paths(n_max + 1, std::vector<ExpSum>(b));
  paths[0][0] = 1.0;
  exact_paths[0][0] = ExpSum::one();
  std::map<std::tuple<std::size_t, unsigned, unsigned>, ExpSum> loop_terms;
  for (const auto& l : lifted.loops)
    if (l.exact_log_weight) loop_terms[{l.length, l.from, l.to}].add(*l.exact_log_weight, l.count);

  CoincidenceReport report;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (unsigned j = 0; j < b; ++j) {
      double total = 0.0;
      for (std::size_t k = 1; k <= n; ++k)
        for (unsigned i = 0; i < b; ++i)
          if (paths[n - k][i] != 0.0) total += paths[n - k][i] * lifted.weight(k, i, j);
      paths[n][j] = total;
      if (exact) {
        ExpSum s;
        for (const auto& [key, terms] : loop_terms) {
          const auto& [k, i, jj] = key;
          if (jj != j || k > n) continue;
          s += exact_paths[n - k][i] * terms;
        }
        exact_paths[n][j] = std::move(s);
      }
    }
    CoincidenceRow row;
    row.n = n;
    const auto& z = left.at(n);
    row.left = z.value;
    row.left_exact = z.exact;
    row.right = paths[n][0];
    row.lower_bound = lifted.truncated;
    if (exact && n < tail_start) row.right_exact = exact_paths[n][0];
    if (row.left_exact && row.right_exact) {
      row.holds = *row.left_exact == *row.right_exact;
    } else {
      const double tol = 1e-9 * std::max(std::abs(row.left), std::abs(row.right)) + z.error;
      row.holds = row.lower_bound ? row.right <= row.left + tol : std::abs(row.left - row.right) <= tol;
    }
    if (!row.holds && report.holds) {
      report.holds = false;
      report.first_mismatch = n;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

InjectivityReport check_injectivity(const InducedPresentation& ind, std::size_t n_max) {
  if (n_max > ind.maxlen) throw InputError("injectivity check needs n_max <= maxlen");
  InjectivityReport report;
  const auto& loops = ind.loops.loops;
  std::vector<std::set<Word>> seen(n_max + 1);
  Word word;
  std::function<void(unsigned)> extend = [&](unsigned at) {
    if (at == 0 && !word.empty()) {
      ++report.points_checked;
      if (!seen[word.size()].insert(word).second && report.injective) {
        report.injective = false;
        report.collision = word;
      }
    }
    for (const auto& l : loops) {
      if (l.from != at || word.size() + l.length > n_max) continue;
      word.insert(word.end(), l.label->begin(), l.label->end());
      extend(l.to);
      word.resize(word.size() - l.length);
    }
  };
  extend(0);
  return report;
}

}  // namespace shiftlab
