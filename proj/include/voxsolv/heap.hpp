#pragma once

#include <cstdint>
#include <vector>

#include "voxsolv/common.hpp"

namespace voxsolv {

// Binary min-heap over cell indices whose keys live in an external array.
// A position map gives O(log n) insert, update, and delete by cell index.
// Ties break toward the smaller cell index so extraction order is
// reproducible. Callers must re-sift (update) a contained cell immediately
// after changing its key.
class IndexedMinHeap {
 public:
  IndexedMinHeap(const double* keys, std::size_t cells)
      : keys_(keys), pos_(cells, -1) {}

  bool contains(std::size_t cell) const { return pos_[cell] >= 0; }
  std::size_t size() const { return heap_.size(); }
  bool empty() const { return heap_.empty(); }
  std::size_t top() const { return heap_.front(); }

  void insert(std::size_t cell) {
    pos_[cell] = static_cast<int64_t>(heap_.size());
    heap_.push_back(cell);
    bubble_up(heap_.size() - 1);
  }

  void update(std::size_t cell) {
    const std::size_t at = static_cast<std::size_t>(pos_[cell]);
    bubble_up(at);
    trickle_down(static_cast<std::size_t>(pos_[cell]));
  }

  void remove(std::size_t cell) {
    const std::size_t at = static_cast<std::size_t>(pos_[cell]);
    pos_[cell] = -1;
    const std::size_t last = heap_.size() - 1;
    if (at == last) {
      heap_.pop_back();
      return;
    }
    const std::size_t moved = heap_[last];
    heap_.pop_back();
    heap_[at] = moved;
    pos_[moved] = static_cast<int64_t>(at);
    bubble_up(at);
    trickle_down(static_cast<std::size_t>(pos_[moved]));
  }

  std::size_t pop() {
    const std::size_t cell = heap_.front();
    remove(cell);
    return cell;
  }

 private:
  bool less(std::size_t a, std::size_t b) const {
    if (keys_[a] != keys_[b]) return keys_[a] < keys_[b];
    return a < b;
  }

  void bubble_up(std::size_t at) {
    const std::size_t cell = heap_[at];
    while (at > 0) {
      const std::size_t parent = (at - 1) / 2;
      if (!less(cell, heap_[parent])) break;
      heap_[at] = heap_[parent];
      pos_[heap_[at]] = static_cast<int64_t>(at);
      at = parent;
    }
    heap_[at] = cell;
    pos_[cell] = static_cast<int64_t>(at);
  }

  void trickle_down(std::size_t at) {
    const std::size_t cell = heap_[at];
    const std::size_t count = heap_.size();
    while (true) {
      std::size_t child = 2 * at + 1;
      if (child >= count) break;
      if (child + 1 < count && less(heap_[child + 1], heap_[child])) ++child;
      if (!less(heap_[child], cell)) break;
      heap_[at] = heap_[child];
      pos_[heap_[at]] = static_cast<int64_t>(at);
      at = child;
    }
    heap_[at] = cell;
    pos_[cell] = static_cast<int64_t>(at);
  }

  const double* keys_;
  std::vector<std::size_t> heap_;   // heap slot -> cell
  std::vector<int64_t> pos_;        // cell -> heap slot, -1 if absent
};

}  // namespace voxsolv
