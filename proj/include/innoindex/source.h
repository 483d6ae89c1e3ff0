// Copyright 2026 The innoindex Authors
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

#ifndef INNOINDEX_SOURCE_H
#define INNOINDEX_SOURCE_H

#include "innoindex/corpus.h"
#include "innoindex/error.h"

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <string>

namespace innoindex {

struct SourceCapabilities {
  /// Requests per minute the engine tolerates; 0 means unlimited.
  double max_requests_per_minute = 0.0;
  /// True when `frequency` is a user-query frequency rather than a proxy.
  bool reports_query_frequency = false;
  /// True when `execute_query` may be called from several threads at once.
  bool thread_safe = false;
};

/// Raised by adapters for failures worth retrying (timeouts, throttling).
class TransientSourceError : public Error {
 public:
  explicit TransientSourceError(std::string const& message)
      : Error(ErrorCode::kSourceUnavailable, message) {}
};

/// A search engine that answers boolean queries with hit counts.
///
/// Remote engines implement this interface; the measurement driver takes
/// care of rate limiting and retries. Any exception other than
/// TransientSourceError is treated as a permanent failure of that request.
class EvidenceSource {
 public:
  virtual ~EvidenceSource() = default;

  virtual std::string const& id() const = 0;
  virtual SourceCapabilities capabilities() const = 0;
  virtual HitResult execute_query(Query const& query, DateWindow const& window) = 0;
};

/// The bundled file-backed engine.
class CorpusSource final : public EvidenceSource {
 public:
  CorpusSource(std::string id, std::shared_ptr<Corpus const> corpus);

  std::string const& id() const override { return id_; }
  SourceCapabilities capabilities() const override;
  HitResult execute_query(Query const& query, DateWindow const& window) override;

  Corpus const& corpus() const { return *corpus_; }

 private:
  std::string id_;
  std::shared_ptr<Corpus const> corpus_;
};

using SteadyClock = std::function<std::chrono::steady_clock::time_point()>;
using Sleeper = std::function<void(std::chrono::nanoseconds)>;

SteadyClock system_clock();
Sleeper system_sleeper();

/// Exponential backoff between retries of one request.
struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_delay{200};
  std::chrono::milliseconds max_delay{std::chrono::seconds(30)};
  double multiplier = 2.0;

  /// Delay before retry number `retry` (0-based): initial·multiplier^retry,
  /// capped at max_delay.
  std::chrono::milliseconds delay_before(int retry) const;
};

/// Spaces request starts at least 60/rpm seconds apart. Thread-safe.
class RateLimiter {
 public:
  RateLimiter(double requests_per_minute, SteadyClock clock, Sleeper sleeper);

  void acquire();

 private:
  std::chrono::nanoseconds interval_;
  SteadyClock clock_;
  Sleeper sleeper_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_slot_{};
  bool started_ = false;
};

}  // namespace innoindex

#endif  // INNOINDEX_SOURCE_H
