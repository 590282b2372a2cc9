// Copyright 2026 The aggad Authors. All Rights Reserved.
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <type_traits>
#include <vector>

#include "aggad/config.hpp"

namespace aggad {

inline constexpr std::size_t kDefaultChunkBytes = std::size_t{2} << 20;

/// Growable stack made of fixed-size chunks. A reservation of n items is
/// always contiguous, so a statement's data never straddles two chunks and can
/// be read back with a single pointer during reversal.
template <class T>
class ChunkedStack {
  static_assert(std::is_trivially_copyable_v<T>);

  struct Chunk {
    std::unique_ptr<T[]> data;
    std::size_t capacity = 0;
    std::size_t used = 0;
  };

 public:
  explicit ChunkedStack(std::size_t chunk_bytes = kDefaultChunkBytes)
      : items_per_chunk_(std::max<std::size_t>(1, chunk_bytes / sizeof(T))) {}

  /// Returns storage for n contiguous items at the top of the stack.
  T* reserve(std::size_t n) {
    if (chunks_.empty()) {
      chunks_.push_back(make_chunk(n));
      current_ = 0;
    } else if (chunks_[current_].used + n > chunks_[current_].capacity) {
      ++current_;
      if (current_ == chunks_.size()) {
        chunks_.push_back(make_chunk(n));
      } else if (chunks_[current_].capacity < n) {
        chunks_[current_] = make_chunk(n);
      }
    }
    Chunk& chunk = chunks_[current_];
    T* out = chunk.data.get() + chunk.used;
    chunk.used += n;
    size_ += n;
    return out;
  }

  void push(const T& value) { *reserve(1) = value; }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  std::size_t reserved_bytes() const {
    std::size_t total = 0;
    for (const Chunk& c : chunks_) total += c.capacity * sizeof(T);
    return total;
  }

  /// Keeps allocated chunks for the next recording.
  void clear() {
    for (Chunk& c : chunks_) c.used = 0;
    current_ = 0;
    size_ = 0;
  }

  /// Walks the stack from the top, handing out the blocks in the order
  /// opposite to how they were reserved.
  class ReverseCursor {
   public:
    explicit ReverseCursor(const ChunkedStack& stack) : stack_(&stack) {
      if (!stack.chunks_.empty()) {
        chunk_ = stack.current_;
        pos_ = stack.chunks_[chunk_].used;
      }
    }

    const T* take_back(std::size_t n) {
      if (n == 0) return nullptr;
      while (pos_ == 0 && chunk_ > 0) {
        --chunk_;
        pos_ = stack_->chunks_[chunk_].used;
      }
      AGGAD_EXPECTS(pos_ >= n, "reverse read past the start of a chunked stack");
      pos_ -= n;
      return stack_->chunks_[chunk_].data.get() + pos_;
    }

    bool at_begin() const {
      if (pos_ != 0) return false;
      for (std::size_t c = 0; c < chunk_; ++c)
        if (stack_->chunks_[c].used != 0) return false;
      return true;
    }

   private:
    const ChunkedStack* stack_;
    std::size_t chunk_ = 0;
    std::size_t pos_ = 0;
  };

  ReverseCursor reverse_cursor() const { return ReverseCursor(*this); }

 private:
  Chunk make_chunk(std::size_t min_items) const {
    Chunk c;
    c.capacity = std::max(items_per_chunk_, min_items);
    c.data = std::make_unique_for_overwrite<T[]>(c.capacity);
    return c;
  }

  std::size_t items_per_chunk_;
  std::vector<Chunk> chunks_;
  std::size_t current_ = 0;
  std::size_t size_ = 0;
};

}  // namespace aggad
