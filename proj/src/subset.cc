// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sfmlb/subset.h"

#include <bit>
#include <sstream>

#include "sfmlb/errors.h"

namespace sfmlb {

GroundConfig::GroundConfig(std::size_t n, std::size_t r) : n_(n), r_(r) {
  if (n > kMaxGroundSize) {
    throw UsageError("ground size " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxGroundSize));
  }
  if (r == 0 || 2 * r > n) {
    throw UsageError("need 1 <= r <= n/2, got n=" + std::to_string(n) +
                     " r=" + std::to_string(r));
  }
}

const char* RelationName(Relation relation) {
  switch (relation) {
    case Relation::kEqual:
      return "equal";
    case Relation::kStrictSubset:
      return "strict_subset";
    case Relation::kStrictSuperset:
      return "strict_superset";
    case Relation::kIncomparable:
      return "incomparable";
  }
  return "?";
}

Subset::Subset(std::size_t ground_size)
    : size_(static_cast<std::uint16_t>(ground_size)) {
  if (ground_size > kMaxGroundSize) {
    throw UsageError("ground size " + std::to_string(ground_size) +
                     " exceeds " + std::to_string(kMaxGroundSize));
  }
}

Subset Subset::Full(std::size_t ground_size) {
  return Prefix(ground_size, ground_size);
}

Subset Subset::FromBits(std::size_t ground_size, std::uint64_t bits) {
  if (ground_size > 64) throw UsageError("FromBits needs ground size <= 64");
  if (ground_size < 64 && (bits >> ground_size) != 0) {
    throw UsageError("bits outside the ground set");
  }
  Subset s(ground_size);
  s.words_[0] = bits;
  return s;
}

Subset Subset::FromIndices(std::size_t ground_size,
                           std::span<const std::size_t> indices) {
  Subset s(ground_size);
  for (std::size_t i : indices) s.insert(i);
  return s;
}

Subset Subset::FromIndices(std::size_t ground_size,
                           std::initializer_list<std::size_t> indices) {
  return FromIndices(ground_size,
                     std::span<const std::size_t>(indices.begin(),
                                                  indices.size()));
}

Subset Subset::Prefix(std::size_t ground_size, std::size_t count) {
  if (count > ground_size) throw UsageError("prefix longer than ground set");
  Subset s(ground_size);
  std::size_t full = count / 64;
  for (std::size_t w = 0; w < full; ++w) s.words_[w] = ~std::uint64_t{0};
  if (count % 64 != 0) s.words_[full] = (std::uint64_t{1} << (count % 64)) - 1;
  return s;
}

std::size_t Subset::cardinality() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < used_words(); ++w) {
    total += static_cast<std::size_t>(std::popcount(words_[w]));
  }
  return total;
}

bool Subset::empty() const {
  for (std::size_t w = 0; w < used_words(); ++w) {
    if (words_[w] != 0) return false;
  }
  return true;
}

bool Subset::contains(std::size_t element) const {
  if (element >= size_) return false;
  return (words_[element / 64] >> (element % 64)) & 1u;
}

void Subset::insert(std::size_t element) {
  if (element >= size_) {
    throw UsageError("element " + std::to_string(element) +
                     " outside ground set of size " + std::to_string(size_));
  }
  words_[element / 64] |= std::uint64_t{1} << (element % 64);
}

void Subset::erase(std::size_t element) {
  if (element >= size_) return;
  words_[element / 64] &= ~(std::uint64_t{1} << (element % 64));
}

std::vector<std::size_t> Subset::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < used_words(); ++w) {
    std::uint64_t word = words_[w];
    while (word != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::vector<std::size_t> Subset::lowest(std::size_t count) const {
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t w = 0; w < used_words() && out.size() < count; ++w) {
    std::uint64_t word = words_[w];
    while (word != 0 && out.size() < count) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  if (out.size() < count) {
    throw UsageError("subset has fewer than " + std::to_string(count) +
                     " elements");
  }
  return out;
}

bool Subset::is_subset_of(const Subset& other) const {
  CheckSameGround(other);
  for (std::size_t w = 0; w < used_words(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool Subset::intersects(const Subset& other) const {
  CheckSameGround(other);
  for (std::size_t w = 0; w < used_words(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

Subset& Subset::operator&=(const Subset& other) {
  CheckSameGround(other);
  for (std::size_t w = 0; w < used_words(); ++w) words_[w] &= other.words_[w];
  return *this;
}

Subset& Subset::operator|=(const Subset& other) {
  CheckSameGround(other);
  for (std::size_t w = 0; w < used_words(); ++w) words_[w] |= other.words_[w];
  return *this;
}

Subset& Subset::operator-=(const Subset& other) {
  CheckSameGround(other);
  for (std::size_t w = 0; w < used_words(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

bool operator==(const Subset& a, const Subset& b) {
  a.CheckSameGround(b);
  for (std::size_t w = 0; w < a.used_words(); ++w) {
    if (a.words_[w] != b.words_[w]) return false;
  }
  return true;
}

bool operator<(const Subset& a, const Subset& b) {
  a.CheckSameGround(b);
  for (std::size_t w = a.used_words(); w-- > 0;) {
    if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
  }
  return false;
}

std::string Subset::ToString() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (std::size_t i : indices()) {
    if (!first) out << ',';
    out << i;
    first = false;
  }
  out << '}';
  return out.str();
}

void Subset::CheckSameGround(const Subset& other) const {
  if (size_ != other.size_) {
    throw UsageError("mismatched ground sizes " + std::to_string(size_) +
                     " and " + std::to_string(other.size_));
  }
}

Relation Relate(const Subset& s, const Subset& t) {
  bool s_in_t = s.is_subset_of(t);
  bool t_in_s = t.is_subset_of(s);
  if (s_in_t && t_in_s) return Relation::kEqual;
  if (s_in_t) return Relation::kStrictSubset;
  if (t_in_s) return Relation::kStrictSuperset;
  return Relation::kIncomparable;
}

SubsetRange::SubsetRange(std::size_t n) : n_(n) {
  if (n > kMaxEnumerableSize) {
    throw UsageError("refusing to enumerate 2^" + std::to_string(n) +
                     " subsets (cap is n=" +
                     std::to_string(kMaxEnumerableSize) + ")");
  }
}

SubsetRange EnumerateSubsets(std::size_t n) { return SubsetRange(n); }

SubsetRange EnumerateSubsets(const GroundConfig& config) {
  return SubsetRange(config.n());
}

}  // namespace sfmlb
