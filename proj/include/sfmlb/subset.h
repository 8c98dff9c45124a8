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

#ifndef SFMLB_SUBSET_H_
#define SFMLB_SUBSET_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace sfmlb {

inline constexpr std::size_t kMaxGroundSize = 1024;
inline constexpr std::size_t kMaxEnumerableSize = 24;

// Ground set V = {0, ..., n-1} together with the layer half-width r.
// Elements beyond effective_size() are dummies that never affect values.
class GroundConfig {
 public:
  // Throws UsageError unless 1 <= r <= n/2 and n <= kMaxGroundSize.
  GroundConfig(std::size_t n, std::size_t r);

  std::size_t n() const { return n_; }
  std::size_t r() const { return r_; }
  std::size_t ell() const { return n_ / (2 * r_); }
  std::size_t effective_size() const { return 2 * r_ * ell(); }
  bool has_dummies() const { return effective_size() != n_; }

  friend bool operator==(const GroundConfig&, const GroundConfig&) = default;

 private:
  std::size_t n_;
  std::size_t r_;
};

enum class Relation { kEqual, kStrictSubset, kStrictSuperset, kIncomparable };

const char* RelationName(Relation relation);

// Fixed-capacity bit vector over the ground set {0, ..., size-1}.
class Subset {
 public:
  static constexpr std::size_t kWords = kMaxGroundSize / 64;

  Subset() = default;
  explicit Subset(std::size_t ground_size);

  static Subset Full(std::size_t ground_size);
  // Bit i of bits is membership of element i. Requires ground_size <= 64.
  static Subset FromBits(std::size_t ground_size, std::uint64_t bits);
  static Subset FromIndices(std::size_t ground_size,
                            std::span<const std::size_t> indices);
  static Subset FromIndices(std::size_t ground_size,
                            std::initializer_list<std::size_t> indices);
  // First count elements {0, ..., count-1}.
  static Subset Prefix(std::size_t ground_size, std::size_t count);

  std::size_t ground_size() const { return size_; }
  std::size_t cardinality() const;
  bool empty() const;
  bool contains(std::size_t element) const;
  void insert(std::size_t element);
  void erase(std::size_t element);

  // Low 64 bits; exact for ground sizes up to 64.
  std::uint64_t low_bits() const { return words_[0]; }
  std::vector<std::size_t> indices() const;
  // The count lowest-index members. Throws UsageError if fewer exist.
  std::vector<std::size_t> lowest(std::size_t count) const;

  bool is_subset_of(const Subset& other) const;
  bool intersects(const Subset& other) const;

  Subset& operator&=(const Subset& other);
  Subset& operator|=(const Subset& other);
  Subset& operator-=(const Subset& other);
  friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
  friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
  friend Subset operator-(Subset a, const Subset& b) { return a -= b; }

  friend bool operator==(const Subset& a, const Subset& b);
  // Orders by integer encoding (element n-1 most significant).
  friend bool operator<(const Subset& a, const Subset& b);

  std::string ToString() const;

 private:
  void CheckSameGround(const Subset& other) const;
  std::size_t used_words() const { return (size_ + 63) / 64; }

  std::array<std::uint64_t, kWords> words_{};
  std::uint16_t size_ = 0;
};

Relation Relate(const Subset& s, const Subset& t);

// All 2^n subsets in increasing integer-encoding order. Refuses n above
// kMaxEnumerableSize.
class SubsetRange {
 public:
  class Iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Subset;
    using difference_type = std::ptrdiff_t;

    Iterator() = default;
    Iterator(std::size_t n, std::uint64_t code) : n_(n), code_(code) {}
    Subset operator*() const { return Subset::FromBits(n_, code_); }
    Iterator& operator++() {
      ++code_;
      return *this;
    }
    Iterator operator++(int) {
      Iterator copy = *this;
      ++code_;
      return copy;
    }
    friend bool operator==(const Iterator& a, const Iterator& b) {
      return a.code_ == b.code_;
    }

   private:
    std::size_t n_ = 0;
    std::uint64_t code_ = 0;
  };

  explicit SubsetRange(std::size_t n);
  Iterator begin() const { return Iterator(n_, 0); }
  Iterator end() const { return Iterator(n_, std::uint64_t{1} << n_); }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

 private:
  std::size_t n_;
};

SubsetRange EnumerateSubsets(std::size_t n);
SubsetRange EnumerateSubsets(const GroundConfig& config);

}  // namespace sfmlb

#endif  // SFMLB_SUBSET_H_
