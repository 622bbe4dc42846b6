#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "globus/error.hpp"

namespace globus {

/// Parses GLOBUS_THREADS. Unset means hardware concurrency; anything other
/// than a positive integer is an InvalidArgument error.
inline unsigned thread_count_from_env(const char* value) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (value == nullptr || *value == '\0') return hw;
  std::string_view s(value);
  unsigned n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc{} || ptr != s.data() + s.size() || n == 0)
    throw Error(ErrorKind::InvalidArgument,
                "GLOBUS_THREADS must be a positive integer (got '" + std::string(s) + "')");
  return n;
}

inline unsigned thread_count_from_env() { return thread_count_from_env(std::getenv("GLOBUS_THREADS")); }

/// Runs fn(i) for i in [0, n) on up to `threads` workers. If any call
/// throws, the exception from the lowest index is rethrown after all
/// workers finish, so failures are reported identically to a sequential run.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto body = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) body(i);
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace globus
