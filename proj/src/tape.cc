#include "hypermachine/tape.h"

#include <algorithm>

namespace hypermachine {

std::optional<std::pair<std::int64_t, std::int64_t>> Tape::extent() const {
  auto first = std::find_if(cells_.begin(), cells_.end(),
                            [](SymbolId s) { return s != kBlank; });
  if (first == cells_.end()) return std::nullopt;
  auto last = std::find_if(cells_.rbegin(), cells_.rend(),
                           [](SymbolId s) { return s != kBlank; });
  const std::int64_t lo = origin_ + (first - cells_.begin());
  const std::int64_t hi =
      origin_ + static_cast<std::int64_t>(cells_.size()) - 1 - (last - cells_.rbegin());
  return std::make_pair(lo, hi);
}

bool Tape::operator==(const Tape& other) const {
  const std::int64_t lo = std::min(stored_begin(), other.stored_begin());
  const std::int64_t hi = std::max(stored_end(), other.stored_end());
  for (std::int64_t pos = lo; pos < hi; ++pos) {
    if (read(pos) != other.read(pos)) return false;
  }
  return true;
}

std::size_t Tape::hash() const {
  auto span = extent();
  if (!span) return 0x9e3779b97f4a7c15ull;
  std::size_t h = static_cast<std::size_t>(span->first) * 0x100000001b3ull;
  for (std::int64_t pos = span->first; pos <= span->second; ++pos) {
    h = (h ^ read(pos)) * 0x100000001b3ull;
  }
  return h;
}

void Tape::grow_to(std::int64_t pos) {
  const auto size = static_cast<std::int64_t>(cells_.size());
  if (cells_.empty()) {
    cells_.assign(16, kBlank);
    origin_ = pos - 8;
    return;
  }
  if (pos < origin_) {
    const std::int64_t need = origin_ - pos;
    const std::int64_t extra = std::max(need, std::max<std::int64_t>(size, 16));
    cells_.insert(cells_.begin(), static_cast<std::size_t>(extra), kBlank);
    origin_ -= extra;
  } else {
    const std::int64_t need = pos - (origin_ + size) + 1;
    const std::int64_t extra = std::max(need, std::max<std::int64_t>(size, 16));
    cells_.resize(static_cast<std::size_t>(size + extra), kBlank);
  }
}

}  // namespace hypermachine
