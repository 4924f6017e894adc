#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace cascade_ner {

/// 0 means auto (hardware concurrency, at least 1).
int resolve_thread_count(int requested);

/// Runs fn(i) for i in [0, n) across `threads` workers in contiguous chunks.
/// fn must be safe to call concurrently for distinct i.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

/// Throws kInvalidArgument when the file cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cascade_ner
