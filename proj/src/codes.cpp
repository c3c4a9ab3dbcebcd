#include "shiftlab/codes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "decode.hpp"
#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

std::vector<std::vector<Symbol>> fibers(const OneBlockCode& c) {
  std::vector<std::vector<Symbol>> out(c.target.vertex_count());
  for (Symbol s = 0; s < c.map.size(); ++s) out[c.map[s]].push_back(s);
  return out;
}

// Source paths of length before + |pattern| + after whose image on the
// middle positions is `pattern`, in lexicographic order.  The visitor
// returns false to stop.
void for_each_presenting(const OneBlockCode& c, const std::vector<std::vector<Symbol>>& fib,
                         const Word& pattern, std::size_t before, std::size_t after,
                         const std::function<bool(const Word&)>& visit) {
  const std::size_t total = before + pattern.size() + after;
  auto allowed = [&](std::size_t j, Symbol s) {
    return j < before || j >= before + pattern.size() || c.map[s] == pattern[j - before];
  };
  Word path;
  bool stop = false;
  std::function<void()> extend = [&] {
    if (stop) return;
    if (path.size() == total) {
      if (!visit(path)) stop = true;
      return;
    }
    const std::size_t j = path.size();
    auto step = [&](Symbol s) {
      if (stop || !allowed(j, s)) return;
      path.push_back(s);
      extend();
      path.pop_back();
    };
    if (path.empty()) {
      if (j >= before && j < before + pattern.size()) {
        for (Symbol s : fib[pattern[j - before]]) step(s);
      } else {
        for (Symbol s = 0; s < c.source.vertex_count(); ++s) step(s);
      }
    } else {
      for (Symbol s : c.source.successors(path.back())) step(s);
    }
  };
  if (total > 0) extend();
}

Word primitive_root(const Word& w) {
  for (std::size_t p = 1; p <= w.size(); ++p) {
    if (w.size() % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return Word(w.begin(), w.begin() + static_cast<long>(p));
  }
  return w;
}

std::optional<Word> closure(const FiniteGraph& g, const Word& path) {
  if (path.empty() || !g.has_edge(path.back(), path.front())) return std::nullopt;
  return primitive_root(path);
}

// Closed source paths of length |u| through the fiber of the cyclic target
// word u, starting at s.
std::optional<Word> closed_lift(const OneBlockCode& c, const Word& u, Symbol s) {
  Word path{s};
  std::function<bool()> extend = [&]() -> bool {
    if (path.size() == u.size()) return c.source.has_edge(path.back(), s);
    for (Symbol t : c.source.successors(path.back())) {
      if (c.map[t] != u[path.size()]) continue;
      path.push_back(t);
      if (extend()) return true;
      path.pop_back();
    }
    return false;
  };
  if (extend()) return path;
  return std::nullopt;
}

// Condition (1) and injectivity for the target periodic word u.
// Returns a refutation or nothing.
std::optional<MagicRefutation> check_periodic(const OneBlockCode& c,
                                              const std::vector<std::vector<Symbol>>& fib,
                                              const Word& u) {
  const auto& start = fib[u[0]];
  const std::size_t k = start.size();
  const std::size_t V = c.source.vertex_count();
  // rel[a][b]: a path over one period of u from start[a] to start[b].
  std::vector<std::vector<char>> rel(k, std::vector<char>(k, 0));
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<char> cur(V, 0);
    cur[start[a]] = 1;
    for (std::size_t i = 1; i <= u.size(); ++i) {
      const Symbol label = u[i % u.size()];
      std::vector<char> next(V, 0);
      for (Symbol s = 0; s < V; ++s)
        if (cur[s])
          for (Symbol t : c.source.successors(s))
            if (c.map[t] == label) next[t] = 1;
      cur = std::move(next);
    }
    for (std::size_t b = 0; b < k; ++b) rel[a][b] = cur[start[b]];
  }
  std::vector<std::size_t> fixed;
  for (std::size_t a = 0; a < k; ++a)
    if (rel[a][a]) fixed.push_back(a);
  if (fixed.size() >= 2) {
    MagicRefutation r;
    r.condition = "injectivity";
    r.presented = u;
    r.x = *closed_lift(c, u, start[fixed[0]]);
    r.x_prime = *closed_lift(c, u, start[fixed[1]]);
    r.periodic_x = primitive_root(r.x);
    r.periodic_x_prime = primitive_root(r.x_prime);
    return r;
  }
  if (!fixed.empty()) return std::nullopt;
  // A preimage of the periodic point exists iff the relation has a cycle.
  std::vector<int> colour(k, 0);
  std::function<bool(std::size_t)> cyclic = [&](std::size_t a) {
    colour[a] = 1;
    for (std::size_t b = 0; b < k; ++b) {
      if (!rel[a][b]) continue;
      if (colour[b] == 1 || (colour[b] == 0 && cyclic(b))) return true;
    }
    colour[a] = 2;
    return false;
  };
  for (std::size_t a = 0; a < k; ++a)
    if (colour[a] == 0 && cyclic(a)) return std::nullopt;
  MagicRefutation r;
  r.condition = "existence";
  r.presented = u;
  return r;
}

std::vector<std::uint64_t> periodic_counts(const FiniteGraph& g, std::size_t n_max) {
  const std::size_t V = g.vertex_count();
  std::vector<std::vector<std::uint64_t>> a(V, std::vector<std::uint64_t>(V, 0)), p = a;
  for (const auto& [u, v] : g.edges()) a[u][v] = 1;
  for (std::size_t i = 0; i < V; ++i) p[i][i] = 1;
  std::vector<std::uint64_t> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<std::vector<std::uint64_t>> q(V, std::vector<std::uint64_t>(V, 0));
    for (std::size_t i = 0; i < V; ++i)
      for (std::size_t k = 0; k < V; ++k)
        if (p[i][k])
          for (std::size_t j = 0; j < V; ++j) q[i][j] += p[i][k] * a[k][j];
    p = std::move(q);
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < V; ++i) t += p[i][i];
    out.push_back(t);
  }
  return out;
}

}  // namespace

namespace detail {

const Word& MagicDecoder::segment(const Word& c) {
  auto it = cache_.find(c);
  if (it != cache_.end()) return it->second;
  Word pattern = w_;
  pattern.insert(pattern.end(), c.begin(), c.end());
  pattern.insert(pattern.end(), w_.begin(), w_.end());
  const long len = static_cast<long>(w_.size() + c.size());
  const long lo = std::min(0L, I_);
  const long hi = std::max(static_cast<long>(pattern.size()), I_ + len);
  const auto before = static_cast<std::size_t>(-lo);
  const auto after = static_cast<std::size_t>(hi - static_cast<long>(pattern.size()));
  const auto fib = fibers(code_);
  std::optional<Word> found;
  bool conflict = false;
  for_each_presenting(code_, fib, pattern, before, after, [&](const Word& path) {
    const auto b = path.begin() + (I_ - lo);
    Word window(b, b + len);
    if (!found) {
      found = std::move(window);
    } else if (*found != window) {
      conflict = true;
      return false;
    }
    return true;
  });
  if (!found) throw InputError("the word " + code_.target.format(pattern) + " has no preimage");
  if (conflict)
    throw InputError("preimages of " + code_.target.format(pattern) + " disagree on the magic window");
  return cache_.emplace(c, std::move(*found)).first->second;
}

Word MagicDecoder::decode(const std::function<Symbol(long)>& at, long scan_from, long scan_to,
                          long from, long to) {
  const long n = static_cast<long>(w_.size());
  std::vector<long> occ;
  for (long i = scan_from; i + n <= scan_to; ++i) {
    bool match = true;
    for (long j = 0; j < n && match; ++j) match = at(i + j) == w_[static_cast<std::size_t>(j)];
    if (match) occ.push_back(i);
  }
  Word out;
  for (long i = from; i < to; ++i) {
    auto up = std::upper_bound(occ.begin(), occ.end(), i - I_);
    if (up == occ.begin()) throw InputError("no occurrence of the magic word before the decoded position");
    const long n1 = *(up - 1);
    const long need = std::max(n1 + n, i - I_ + 1);
    auto n2_it = std::lower_bound(occ.begin(), occ.end(), need);
    if (n2_it == occ.end()) throw InputError("no occurrence of the magic word after the decoded position");
    const long n2 = *n2_it;
    Word c;
    for (long j = n1 + n; j < n2; ++j) c.push_back(at(j));
    out.push_back(segment(c)[static_cast<std::size_t>(i - n1 - I_)]);
  }
  return out;
}

}  // namespace detail

OneBlockCode make_code(FiniteGraph source, FiniteGraph target, std::vector<Symbol> map) {
  if (map.size() != source.vertex_count())
    throw InputError("code must map every source symbol");
  for (Symbol t : map)
    if (t >= target.vertex_count()) throw InputError("code maps to a symbol outside the target alphabet");
  for (const auto& [u, v] : source.edges())
    if (!target.has_edge(map[u], map[v]))
      throw InputError("source edge " + source.format({u, v}) + " maps to a non-edge " +
                       target.format({map[u], map[v]}));
  return {std::move(source), std::move(target), std::move(map)};
}

OneBlockCode identity_code(const FiniteGraph& g) {
  std::vector<Symbol> map(g.vertex_count());
  std::iota(map.begin(), map.end(), 0);
  return make_code(g, g, std::move(map));
}

OneBlockCode block_code(const HigherBlock& hb, const FiniteGraph& base) {
  return make_code(hb.graph, base, hb.label);
}

Word apply_code(const OneBlockCode& c, const Word& x) {
  if (!c.source.is_word(x)) throw InputError("input is not a source word");
  Word out;
  for (Symbol s : x) out.push_back(c.map[s]);
  return out;
}

PeriodicPoint apply_code(const OneBlockCode& c, const PeriodicPoint& x) {
  if (x.word.empty() || !c.source.has_edge(x.word.back(), x.word.front()) || !c.source.is_word(x.word))
    throw InputError("input is not a periodic point of the source");
  return {apply_code(c, x.word)};
}

EventuallyPeriodicPoint apply_code(const OneBlockCode& c, const EventuallyPeriodicPoint& x) {
  if (!x.admissible(c.source)) throw InputError("input is not a point of the source");
  auto image = [&](const Word& w) {
    Word out;
    for (Symbol s : w) out.push_back(c.map[s]);
    return out;
  };
  return {image(x.left), image(x.core), image(x.right), x.core_start};
}

std::string to_string(MagicStatus s) {
  switch (s) {
    case MagicStatus::certified:
      return "certified";
    case MagicStatus::refuted:
      return "refuted";
    case MagicStatus::budget_exceeded:
      return "budget_exceeded";
  }
  return "refuted";
}

MagicWordCertificate verify_magic(const OneBlockCode& c, const Word& w, long I, std::size_t depth,
                                  const MagicOptions& options) {
  if (w.empty() || !c.target.is_word(w)) throw InputError("magic word must be a nonempty target word");
  MagicWordCertificate cert;
  cert.word = w;
  cert.I = I;
  cert.depth = depth;
  const auto fib = fibers(c);

  // Condition (2): source windows at I agree for every presentation of W C W.
  for (std::size_t len = 0; len <= depth; ++len) {
    Word cw;
    bool done = false;
    std::function<void()> next_c = [&] {
      if (done) return;
      if (cw.size() == len) {
        Word pattern = w;
        pattern.insert(pattern.end(), cw.begin(), cw.end());
        pattern.insert(pattern.end(), w.begin(), w.end());
        if (!c.target.is_word(pattern)) return;
        ++cert.words_checked;
        const long span = static_cast<long>(w.size() + len);
        const long lo = std::min(0L, I);
        const long hi = std::max(static_cast<long>(pattern.size()), I + span);
        std::optional<Word> first, first_window, other, other_window;
        for_each_presenting(c, fib, pattern, static_cast<std::size_t>(-lo),
                            static_cast<std::size_t>(hi - static_cast<long>(pattern.size())),
                            [&](const Word& path) {
                              ++cert.paths_checked;
                              const auto b = path.begin() + (I - lo);
                              Word window(b, b + span);
                              if (!first) {
                                first = path;
                                first_window = std::move(window);
                              } else if (window != *first_window) {
                                other = path;
                                other_window = std::move(window);
                              }
                              return cert.paths_checked <= options.path_budget;
                            });
        if (cert.paths_checked > options.path_budget) {
          cert.status = MagicStatus::budget_exceeded;
          done = true;
        } else if (other) {
          MagicRefutation r;
          r.condition = "uniqueness";
          r.presented = pattern;
          r.span_start = lo;
          r.x = *first;
          r.x_prime = *other;
          r.window_x = *first_window;
          r.window_x_prime = *other_window;
          r.periodic_x = closure(c.source, r.x);
          r.periodic_x_prime = closure(c.source, r.x_prime);
          cert.status = MagicStatus::refuted;
          cert.refutation = std::move(r);
          done = true;
        }
        return;
      }
      const auto candidates = cw.empty() ? c.target.successors(w.back()) : c.target.successors(cw.back());
      for (Symbol s : candidates) {
        cw.push_back(s);
        next_c();
        cw.pop_back();
        if (done) return;
      }
    };
    next_c();
    if (done) {
      if (cert.status == MagicStatus::budget_exceeded) cert.depth_reached = len == 0 ? 0 : len - 1;
      return cert;
    }
    cert.depth_reached = len;
  }

  // Condition (1) and injectivity on target periodic points through W.
  cert.periodic_cap = depth + 2 * w.size();
  for (std::size_t p = 1; p <= cert.periodic_cap; ++p) {
    std::optional<MagicRefutation> bad;
    for_each_periodic(c.target, p, {}, [&](const Word& u) {
      if (bad || !occurs_cyclically(u, w)) return;
      bad = check_periodic(c, fib, u);
    });
    if (bad) {
      if (bad->condition == "injectivity") cert.injective_on_periodic = false;
      cert.status = MagicStatus::refuted;
      cert.refutation = std::move(bad);
      return cert;
    }
  }
  return cert;
}

std::optional<InverseWindow> conjugacy_window(const OneBlockCode& c, unsigned max_window,
                                              std::size_t periods) {
  if (periodic_counts(c.source, periods) != periodic_counts(c.target, periods)) return std::nullopt;
  for (unsigned width = 0; width <= max_window; ++width) {
    const auto paths = c.source.words(width + 1);
    for (unsigned memory = 0; memory <= width; ++memory) {
      InverseWindow inv{memory, width - memory, {}};
      bool ok = true;
      for (const auto& p : paths) {
        Word image;
        for (Symbol s : p) image.push_back(c.map[s]);
        auto [it, fresh] = inv.table.emplace(image, p[memory]);
        if (!fresh && it->second != p[memory]) {
          ok = false;
          break;
        }
      }
      if (ok) return inv;
    }
  }
  return std::nullopt;
}

AlmostIsomorphism assemble_ai(OneBlockCode to_s, OneBlockCode to_t, MagicWordCertificate magic_s,
                              MagicWordCertificate magic_t) {
  if (!(to_s.source == to_t.source)) throw InputError("the two legs must share their source shift");
  auto check = [](const MagicWordCertificate& m, const char* leg) {
    if (m.status != MagicStatus::certified)
      throw InputError(std::string("magic word of the ") + leg + " leg is " + to_string(m.status));
    if (m.depth_reached < m.depth)
      throw InputError(std::string("magic word of the ") + leg + " leg is certified below its declared depth");
  };
  check(magic_s, "S");
  check(magic_t, "T");
  if (!to_s.target.is_word(magic_s.word)) throw InputError("S magic word is not an S-word");
  if (!to_t.target.is_word(magic_t.word)) throw InputError("T magic word is not a T-word");
  AlmostIsomorphism ai;
  ai.inverse_s = conjugacy_window(to_s);
  ai.inverse_t = conjugacy_window(to_t);
  ai.to_s = std::move(to_s);
  ai.to_t = std::move(to_t);
  ai.magic_s = std::move(magic_s);
  ai.magic_t = std::move(magic_t);
  return ai;
}

EventuallyPeriodicPoint lift_to_common(const AlmostIsomorphism& ai, const EventuallyPeriodicPoint& x) {
  const auto& w = ai.magic_s.word;
  if (!x.admissible(ai.s())) throw InputError("point is not admissible in S");
  if (!occurs_cyclically(x.left, w) || !occurs_cyclically(x.right, w))
    throw InputError("point is outside S_W: the magic word " + ai.s().format(w) +
                     " does not recur in both tails");
  const long I = ai.magic_s.I;
  const long n = static_cast<long>(w.size());
  const long pl = static_cast<long>(x.left.size());
  const long pr = static_cast<long>(x.right.size());
  // Decoding position i reads x on [i - I - p - |W|, i - I + 3|W| + p]; past
  // these margins the decoded tails repeat with the periods of x.
  const long gl = std::abs(I) + 3 * n + pl + 2;
  const long gr = std::abs(I) + 3 * n + pr + 2;
  const long cl = x.core_start - gl;
  const long cr = x.core_end() + gr;
  detail::MagicDecoder decoder(ai.to_s, w, I);
  auto at = [&](long i) { return x.at(i); };
  const Word r = decoder.decode(at, cl - pl - gl, cr + pr + gr, cl - pl, cr + pr);
  EventuallyPeriodicPoint out;
  out.left.assign(r.begin(), r.begin() + pl);
  out.core.assign(r.begin() + pl, r.end() - pr);
  out.right.assign(r.end() - pr, r.end());
  out.core_start = cl;
  return out;
}

EventuallyPeriodicPoint gamma_on_point(const AlmostIsomorphism& ai, const EventuallyPeriodicPoint& x) {
  return apply_code(ai.to_t, lift_to_common(ai, x));
}

FiniteRangePotential pushforward_potential(const AlmostIsomorphism& ai, const FiniteRangePotential& f) {
  if (!ai.conjugacy()) throw InputError("pushforward of potentials needs both legs to be conjugacies");
  if (!(f.graph() == ai.s())) throw InputError("potential is not defined over S");
  const auto& inv = *ai.inverse_t;
  const unsigned m = f.left_range();
  const unsigned r = f.right_range();
  const unsigned a = inv.memory;
  const unsigned b = inv.anticipation;
  return FiniteRangePotential::from_function(ai.t(), m + a, r + b, [&](const Word& u) {
    Word x;
    for (unsigned j = 0; j < m + r; ++j) {
      const Word key(u.begin() + j, u.begin() + j + a + b + 1);
      auto it = inv.table.find(key);
      if (it == inv.table.end()) throw InputError("T-word " + ai.t().format(key) + " is not in the code's image");
      x.push_back(ai.to_s.map[it->second]);
    }
    return f.weight(x);
  });
}

}  // namespace shiftlab
