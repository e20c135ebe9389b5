// Copyright 2026 The surfpeel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "surfpeel/error.hpp"

namespace surfpeel {

/// Dense GF(2) indicator over a fixed index space [0, size).
///
/// The tag parameter keeps edge sets and vertex sets from being mixed up;
/// the group operation is symmetric difference (`^`).
template <typename Tag>
class IndexSet {
   public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    IndexSet() = default;
    explicit IndexSet(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}
    IndexSet(std::size_t size, std::initializer_list<std::size_t> members) : IndexSet(size) {
        for (auto i : members) insert(i);
    }

    template <typename Range>
    static IndexSet from_indices(std::size_t size, const Range& members) {
        IndexSet s(size);
        for (auto i : members) s.insert(static_cast<std::size_t>(i));
        return s;
    }

    std::size_t size() const noexcept { return size_; }

    bool contains(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void insert(std::size_t i) {
        check(i);
        words_[i / kWordBits] |= Word{1} << (i % kWordBits);
    }
    void erase(std::size_t i) {
        check(i);
        words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
    }
    void flip(std::size_t i) {
        check(i);
        words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
    }
    void set(std::size_t i, bool value) { value ? insert(i) : erase(i); }
    void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

    std::size_t count() const noexcept {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    bool empty() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
    }

    /// Parity of |this ∩ other|.
    bool intersection_parity(const IndexSet& other) const {
        same_space(other);
        Word acc = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
        return std::popcount(acc) & 1;
    }

    bool is_subset_of(const IndexSet& other) const {
        same_space(other);
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if (words_[k] & ~other.words_[k]) return false;
        }
        return true;
    }

    /// Calls fn(index) for every member in ascending order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            Word w = words_[k];
            while (w) {
                fn(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> to_vector() const {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    IndexSet& operator^=(const IndexSet& o) {
        same_space(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
        return *this;
    }
    IndexSet& operator&=(const IndexSet& o) {
        same_space(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    IndexSet& operator|=(const IndexSet& o) {
        same_space(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    friend IndexSet operator^(IndexSet a, const IndexSet& b) { return a ^= b; }
    friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
    friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
    friend bool operator==(const IndexSet&, const IndexSet&) = default;

    const std::vector<Word>& words() const noexcept { return words_; }

    /// Same bits over the same index space, viewed under another tag.
    template <typename OtherTag>
    IndexSet<OtherTag> retag() const {
        IndexSet<OtherTag> out(size_);
        for_each([&](std::size_t i) { out.insert(i); });
        return out;
    }

   private:
    void check(std::size_t i) const {
        if (i >= size_) {
            throw Error(ErrorKind::kIndexRange,
                        "index " + std::to_string(i) + " outside [0, " + std::to_string(size_) + ")");
        }
    }
    void same_space(const IndexSet& o) const {
        if (o.size_ != size_) {
            throw Error(ErrorKind::kIndexRange, "set sizes differ: " + std::to_string(size_) + " vs " +
                                                    std::to_string(o.size_));
        }
    }

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

struct EdgeTag {};
struct VertexTag {};
struct LogicalTag {};

using EdgeSet = IndexSet<EdgeTag>;
using VertexSet = IndexSet<VertexTag>;

}  // namespace surfpeel
