#pragma once

#include <functional>
#include <vector>

namespace bbdrag {

/// Runs every task exactly once on up to `threads` worker threads (the caller
/// counts as one). Tasks write to their own result slots, so outcomes never
/// depend on scheduling. The first exception thrown by a task is rethrown
/// after all workers have joined.
void run_tasks(const std::vector<std::function<void()>>& tasks, unsigned threads);

} // namespace bbdrag
