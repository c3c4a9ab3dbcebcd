#include "shiftlab/alphabet.hpp"

#include <sstream>

#include "shiftlab/errors.hpp"

namespace shiftlab {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty()) throw InputError("empty symbol name");
    if (n.find_first_of(" \t\n") != std::string::npos)
      throw InputError("symbol name contains whitespace: '" + n + "'");
    if (!index_.emplace(n, static_cast<Symbol>(i)).second)
      throw InputError("duplicate symbol name: '" + n + "'");
    if (n.size() != 1) compact_ = false;
  }
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word w;
  auto lookup = [&](std::string_view tok) {
    auto s = find(tok);
    if (!s) throw InputError("unknown symbol '" + std::string(tok) + "'");
    w.push_back(*s);
  };
  if (text.find_first_of(" \t") != std::string_view::npos) {
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) lookup(tok);
    return w;
  }
  if (text.empty()) return w;
  if (compact_) {
    for (char c : text) lookup(std::string_view(&c, 1));
    return w;
  }
  lookup(text);
  return w;
}

std::string Alphabet::format(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !compact_) out += ' ';
    out += name(w[i]);
  }
  return out;
}

}  // namespace shiftlab
