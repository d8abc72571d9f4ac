#pragma once

#include <cstddef>

namespace orbichar {

// Size bounds are configuration values, not constants.
struct Config {
  std::size_t max_group_order = 10000;  // element-table construction bound
  std::size_t iso_bound = 64;           // isomorphism / registry bound
  std::size_t mul_table_limit = 1024;   // cache the full mul table up to this order
  int max_series_order = 8;
  int max_euler_order = 4;
};

Config& global_config();

}  // namespace orbichar
