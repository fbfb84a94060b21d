#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace hypermachine {

using SymbolId = std::uint8_t;
inline constexpr SymbolId kBlank = 0;

// A tape that is blank everywhere except a finite stored core. The core grows
// on demand in both directions; writing a blank outside the core is a no-op,
// so a head wandering over blanks never allocates.
class Tape {
 public:
  Tape() = default;

  SymbolId read(std::int64_t pos) const {
    const std::int64_t i = pos - origin_;
    if (i < 0 || i >= static_cast<std::int64_t>(cells_.size())) return kBlank;
    return cells_[static_cast<std::size_t>(i)];
  }

  void write(std::int64_t pos, SymbolId symbol) {
    const std::int64_t i = pos - origin_;
    if (i >= 0 && i < static_cast<std::int64_t>(cells_.size())) {
      cells_[static_cast<std::size_t>(i)] = symbol;
    } else if (symbol != kBlank) {
      grow_to(pos);
      cells_[static_cast<std::size_t>(pos - origin_)] = symbol;
    }
  }

  // Every non-blank cell lies in [stored_begin(), stored_end()).
  std::int64_t stored_begin() const { return origin_; }
  std::int64_t stored_end() const {
    return origin_ + static_cast<std::int64_t>(cells_.size());
  }

  // Exact inclusive bounds of the non-blank cells, or nullopt for a blank tape.
  std::optional<std::pair<std::int64_t, std::int64_t>> extent() const;

  // Semantic equality: same symbol at every coordinate.
  bool operator==(const Tape& other) const;

  std::size_t hash() const;

 private:
  void grow_to(std::int64_t pos);

  std::vector<SymbolId> cells_;
  std::int64_t origin_ = 0;  // coordinate of cells_[0]
};

}  // namespace hypermachine
