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

#include "innoindex/source.h"

#include <algorithm>
#include <cmath>
#include <thread>

namespace innoindex {

CorpusSource::CorpusSource(std::string id, std::shared_ptr<Corpus const> corpus)
    : id_(std::move(id)), corpus_(std::move(corpus)) {}

SourceCapabilities CorpusSource::capabilities() const {
  return SourceCapabilities{0.0, false, true};
}

HitResult CorpusSource::execute_query(Query const& query, DateWindow const& window) {
  return innoindex::execute_query(*corpus_, query, window);
}

SteadyClock system_clock() {
  return [] { return std::chrono::steady_clock::now(); };
}

Sleeper system_sleeper() {
  return [](std::chrono::nanoseconds d) { std::this_thread::sleep_for(d); };
}

std::chrono::milliseconds RetryPolicy::delay_before(int retry) const {
  double ms = static_cast<double>(initial_delay.count()) *
              std::pow(multiplier, static_cast<double>(std::max(retry, 0)));
  ms = std::min(ms, static_cast<double>(max_delay.count()));
  return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

RateLimiter::RateLimiter(double requests_per_minute, SteadyClock clock, Sleeper sleeper)
    : interval_(requests_per_minute > 0.0
                    ? std::chrono::nanoseconds(
                          static_cast<std::int64_t>(60e9 / requests_per_minute))
                    : std::chrono::nanoseconds(0)),
      clock_(std::move(clock)),
      sleeper_(std::move(sleeper)) {}

void RateLimiter::acquire() {
  if (interval_.count() == 0) return;
  std::chrono::steady_clock::time_point slot;
  std::chrono::steady_clock::time_point now;
  {
    std::lock_guard<std::mutex> lock(mu_);
    now = clock_();
    slot = started_ ? std::max(now, next_slot_) : now;
    started_ = true;
    next_slot_ = slot + interval_;
  }
  if (slot > now) sleeper_(slot - now);
}

}  // namespace innoindex
