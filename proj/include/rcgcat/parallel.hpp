#pragma once

#include <cstddef>
#include <functional>

namespace rcgcat {

// Runs fn(0..count) across up to `jobs` threads. Each index must write only
// its own output slot; under that contract the result is identical to the
// sequential loop regardless of jobs. Exceptions are collected and the first
// one rethrown.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace rcgcat
