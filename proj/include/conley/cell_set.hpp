#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace conley {

using CellId = std::uint32_t;

/// A subset of the cells {0, ..., universe-1} of a finite space.
///
/// Stored as a bitset; iteration and members() always run in increasing
/// cell order, which is the tie-breaking order used throughout the library.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(std::size_t universe);
  CellSet(std::size_t universe, std::initializer_list<CellId> cells);
  CellSet(std::size_t universe, std::span<const CellId> cells);

  static CellSet full(std::size_t universe);

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_full() const { return bits_.all(); }

  bool contains(CellId c) const { return c < bits_.size() && bits_.test(c); }
  void insert(CellId c);
  void erase(CellId c);
  void clear() { bits_.reset(); }

  std::vector<CellId> members() const;
  std::optional<CellId> first() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) {
      fn(static_cast<CellId>(i));
    }
  }

  bool is_subset_of(const CellSet& other) const;
  bool intersects(const CellSet& other) const;

  CellSet& operator|=(const CellSet& other);
  CellSet& operator&=(const CellSet& other);
  CellSet& operator-=(const CellSet& other);
  CellSet complement() const;

  friend CellSet operator|(CellSet a, const CellSet& b) { return a |= b; }
  friend CellSet operator&(CellSet a, const CellSet& b) { return a &= b; }
  friend CellSet operator-(CellSet a, const CellSet& b) { return a -= b; }
  friend bool operator==(const CellSet& a, const CellSet& b) {
    return a.bits_ == b.bits_;
  }
  friend bool operator<(const CellSet& a, const CellSet& b);

 private:
  using Bits = boost::dynamic_bitset<std::uint64_t>;
  void require_same_universe(const CellSet& other) const;

  Bits bits_;
};

std::ostream& operator<<(std::ostream& os, const CellSet& s);

}  // namespace conley
