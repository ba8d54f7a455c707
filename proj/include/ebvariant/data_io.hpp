#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "ebvariant/embayes.hpp"
#include "ebvariant/model.hpp"
#include "ebvariant/simulator.hpp"

namespace ebvariant {

inline constexpr const char* kFormatLine = "#format=ebvariant.v1";

// Long-format table: header "site_id pool_id depth alt_count" (tab separated),
// one row per (site, pool). Lines starting with '#' are metadata. Sites keep
// their order of first appearance; absent pairs read as depth 0, alt 0.
SiteCountMatrix read_counts(std::istream& in, int pools);
void write_counts(std::ostream& out, const SiteCountMatrix& data);

// site_id, mu, theta_1..M, n_1..M
void write_truth(std::ostream& out, const LatentTruth& truth,
                 const std::vector<std::string>& site_ids);

void write_calls(std::ostream& out, const CallSet& calls, const LocalFdrVector& scores,
                 const std::vector<std::string>& site_ids);

struct CallFile {
  std::map<std::string, std::string> metadata;
  std::vector<std::string> site_ids;
  std::vector<double> fdr;
  std::vector<std::size_t> rank;
  std::vector<std::uint8_t> rejected;
};

CallFile read_calls(std::istream& in);

// site_id, is_variant (0/1); optional header line.
std::unordered_map<std::string, bool> read_gold(std::istream& in);

}  // namespace ebvariant
