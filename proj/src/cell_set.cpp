#include "conley/cell_set.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace conley {

CellSet::CellSet(std::size_t universe) : bits_(universe) {}

CellSet::CellSet(std::size_t universe, std::initializer_list<CellId> cells)
    : bits_(universe) {
  for (CellId c : cells) insert(c);
}

CellSet::CellSet(std::size_t universe, std::span<const CellId> cells)
    : bits_(universe) {
  for (CellId c : cells) insert(c);
}

CellSet CellSet::full(std::size_t universe) {
  CellSet s(universe);
  s.bits_.set();
  return s;
}

void CellSet::insert(CellId c) {
  if (c >= bits_.size()) {
    throw std::out_of_range("cell " + std::to_string(c) +
                            " outside universe of size " +
                            std::to_string(bits_.size()));
  }
  bits_.set(c);
}

void CellSet::erase(CellId c) {
  if (c < bits_.size()) bits_.reset(c);
}

std::vector<CellId> CellSet::members() const {
  std::vector<CellId> out;
  out.reserve(size());
  for_each([&](CellId c) { out.push_back(c); });
  return out;
}

std::optional<CellId> CellSet::first() const {
  auto i = bits_.find_first();
  if (i == Bits::npos) return std::nullopt;
  return static_cast<CellId>(i);
}

void CellSet::require_same_universe(const CellSet& other) const {
  if (other.universe() != universe()) {
    throw std::invalid_argument("cell sets live on different spaces (" +
                                std::to_string(universe()) + " vs " +
                                std::to_string(other.universe()) + " cells)");
  }
}

bool CellSet::is_subset_of(const CellSet& other) const {
  require_same_universe(other);
  return bits_.is_subset_of(other.bits_);
}

bool CellSet::intersects(const CellSet& other) const {
  require_same_universe(other);
  return bits_.intersects(other.bits_);
}

CellSet& CellSet::operator|=(const CellSet& other) {
  require_same_universe(other);
  bits_ |= other.bits_;
  return *this;
}

CellSet& CellSet::operator&=(const CellSet& other) {
  require_same_universe(other);
  bits_ &= other.bits_;
  return *this;
}

CellSet& CellSet::operator-=(const CellSet& other) {
  require_same_universe(other);
  bits_ -= other.bits_;
  return *this;
}

CellSet CellSet::complement() const {
  CellSet out = *this;
  out.bits_.flip();
  return out;
}

bool operator<(const CellSet& a, const CellSet& b) {
  // Lexicographic on the sorted member lists.
  auto ia = a.bits_.find_first();
  auto ib = b.bits_.find_first();
  while (ia != CellSet::Bits::npos && ib != CellSet::Bits::npos) {
    if (ia != ib) return ia < ib;
    ia = a.bits_.find_next(ia);
    ib = b.bits_.find_next(ib);
  }
  return ia == CellSet::Bits::npos && ib != CellSet::Bits::npos;
}

std::ostream& operator<<(std::ostream& os, const CellSet& s) {
  os << '{';
  bool first = true;
  s.for_each([&](CellId c) {
    if (!first) os << ',';
    os << c;
    first = false;
  });
  return os << '}';
}

}  // namespace conley
