#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qbc/error.hpp"

namespace qbc {

struct OptimizerConfig {
  std::size_t restarts = 16;
  std::size_t max_iterations = 150;        // quasi-Newton iterations per penalty stage
  std::vector<double> penalty_schedule{1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
  double fd_step = 1e-5;                   // central-difference step
  double tolerance = 1e-10;                // gradient / progress tolerance
  std::uint64_t seed = 7;
  std::size_t grid = 33;                   // common-rate grid points
  std::size_t t_size = 0;                  // 0: use the cardinality bound
  std::size_t matrix_budget = 4096;        // max (|B||C|)^k * |T|
  std::size_t threads = 0;                 // 0: QBC_THREADS or hardware

  double degrade_threshold = 1e-6;
  std::size_t degrade_restarts = 4;
  std::size_t degrade_iterations = 20000;

  void validate() const {
    if (restarts == 0 || max_iterations == 0 || grid == 0 || penalty_schedule.empty() ||
        fd_step <= 0 || tolerance <= 0 || degrade_threshold <= 0 || degrade_restarts == 0 ||
        degrade_iterations == 0)
      throw ValidationError("optimizer configuration values must be positive");
    for (const double mu : penalty_schedule)
      if (mu <= 0) throw ValidationError("penalty weights must be positive");
  }
};

}  // namespace qbc
