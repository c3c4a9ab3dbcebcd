#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shiftlab {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Symbol names for a vertex set. Ids are dense 0..size()-1.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(s); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Symbol> find(std::string_view name) const;

  // True when every name is a single character, in which case words are
  // written without separators ("0110"); otherwise names are space separated.
  bool compact() const noexcept { return compact_; }

  Word parse_word(std::string_view text) const;
  std::string format(const Word& w) const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Symbol, std::less<>> index_;
  bool compact_ = true;
};

}  // namespace shiftlab
