// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace lrvis {

/// Worker count: LRVIS_THREADS if set and positive, else hardware concurrency.
unsigned default_worker_count();

/// Runs body(i) for i in [0, n) on up to `workers` threads. Work items are
/// handed out dynamically; the body must only write to item-private state.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace lrvis
