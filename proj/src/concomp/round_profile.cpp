#include "pramlab/concomp/round_profile.hpp"

#include <ostream>

namespace pramlab::concomp {

RoundProfile round_profile(const ExecStats& stats) {
  RoundProfile p;
  for (const LaunchRecord& l : stats.launches) {
    p.rows.push_back({l.round, l.kernel, l.counters.reads, l.counters.writes,
                      l.counters.transactions});
    if (l.kernel == "SV2" || l.kernel == "SV3") {
      p.hook_reads += l.counters.reads;
    } else {
      p.other_reads += l.counters.reads;
    }
  }
  p.hooks_dominate = p.hook_reads > p.other_reads;
  return p;
}

void write_round_profile_csv(std::ostream& out, const RoundProfile& profile) {
  out << "round,kernel,reads,writes,transactions\n";
  for (const auto& r : profile.rows) {
    out << r.round << ',' << r.kernel << ',' << r.reads << ',' << r.writes << ','
        << r.transactions << '\n';
  }
}

}  // namespace pramlab::concomp
