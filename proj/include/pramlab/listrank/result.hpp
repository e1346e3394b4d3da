#pragma once

#include "pramlab/core/exec_stats.hpp"
#include "pramlab/core/types.hpp"

namespace pramlab::listrank {

struct ListRankResult {
  RankArray rank;
  ExecStats stats;
};

}  // namespace pramlab::listrank
