#pragma once

#include <memory>
#include <mutex>

namespace hsearch::index {

/// Holds the current immutable snapshot of T. Readers take a shared_ptr and
/// keep using it even if a rebuild swaps in a new one meanwhile.
template <typename T>
class Snapshot {
  public:
    explicit Snapshot(std::shared_ptr<const T> initial = nullptr) : current_(std::move(initial)) {}

    std::shared_ptr<const T> get() const {
        std::lock_guard lock(mutex_);
        return current_;
    }

    void swap(std::shared_ptr<const T> next) {
        std::lock_guard lock(mutex_);
        current_.swap(next);
    }

  private:
    mutable std::mutex mutex_;
    std::shared_ptr<const T> current_;
};

}  // namespace hsearch::index
