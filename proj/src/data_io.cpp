#include "ebvariant/data_io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>

#include "ebvariant/errors.hpp"

namespace ebvariant {

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view field, const char* name, std::size_t line_no) {
  Int value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || field.empty())
    throw ParseError(std::string("invalid ") + name + " '" + std::string(field) + "'", line_no);
  return value;
}

double parse_double(std::string_view field, const char* name, std::size_t line_no) {
  const std::string copy(field);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size())
    throw ParseError(std::string("invalid ") + name + " '" + copy + "'", line_no);
  return v;
}

void check_format_line(const std::string& line, std::size_t line_no) {
  if (line.rfind("#format=", 0) == 0 && line != kFormatLine)
    throw ParseError("unsupported format '" + line.substr(8) + "'", line_no);
}

}  // namespace

SiteCountMatrix read_counts(std::istream& in, int pools) {
  if (pools < 1) throw DomainError("read_counts: need at least one pool");
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;

  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> ids;
  std::vector<Count> depths;
  std::vector<Count> alts;
  std::vector<std::uint8_t> seen;

  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      check_format_line(line, line_no);
      continue;
    }
    if (!have_header) {
      if (line != "site_id\tpool_id\tdepth\talt_count")
        throw ParseError("expected header 'site_id<TAB>pool_id<TAB>depth<TAB>alt_count'",
                         line_no);
      have_header = true;
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 4)
      throw ParseError("expected 4 tab-separated fields, found " + std::to_string(fields.size()),
                       line_no);
    if (fields[0].empty()) throw ParseError("empty site_id", line_no);
    const int pool = parse_int<int>(fields[1], "pool_id", line_no);
    const Count depth = parse_int<Count>(fields[2], "depth", line_no);
    const Count alt = parse_int<Count>(fields[3], "alt_count", line_no);
    if (pool < 1 || pool > pools)
      throw ParseError("pool_id " + std::to_string(pool) + " outside 1.." + std::to_string(pools),
                       line_no);
    if (depth < 0 || alt < 0) throw ParseError("negative count", line_no);
    if (alt > depth) throw ParseError("alt_count exceeds depth", line_no);

    auto [it, inserted] = index.try_emplace(std::string(fields[0]), ids.size());
    if (inserted) {
      ids.emplace_back(fields[0]);
      depths.resize(depths.size() + pools, 0);
      alts.resize(alts.size() + pools, 0);
      seen.resize(seen.size() + pools, 0);
    }
    const std::size_t idx = it->second * pools + (pool - 1);
    if (seen[idx])
      throw ParseError("duplicate entry for site " + std::string(fields[0]) + " pool " +
                           std::to_string(pool),
                       line_no);
    seen[idx] = 1;
    depths[idx] = depth;
    alts[idx] = alt;
  }
  if (in.bad()) throw ParseError("read failure", line_no);
  if (!have_header) throw ParseError("missing header", 0);
  if (ids.empty()) throw ParseError("no sites", 0);
  return SiteCountMatrix::from_rows(pools, std::move(ids), std::move(depths), std::move(alts));
}

void write_counts(std::ostream& out, const SiteCountMatrix& data) {
  out << kFormatLine << '\n' << "site_id\tpool_id\tdepth\talt_count\n";
  for (std::size_t i = 0; i < data.sites(); ++i)
    for (int j = 0; j < data.pools(); ++j)
      out << data.site_id(i) << '\t' << (j + 1) << '\t' << data.depth(i, j) << '\t'
          << data.alt_count(i, j) << '\n';
  if (!out) throw std::ios_base::failure("failed writing count table");
}

void write_truth(std::ostream& out, const LatentTruth& truth,
                 const std::vector<std::string>& site_ids) {
  if (site_ids.size() != truth.sites())
    throw DomainError("truth and site ids have different lengths");
  const int m = truth.pools;
  out << kFormatLine << '\n' << "site_id\tmu";
  for (int j = 1; j <= m; ++j) out << "\ttheta_" << j;
  for (int j = 1; j <= m; ++j) out << "\tn_" << j;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < truth.sites(); ++i) {
    out << site_ids[i] << '\t' << int(truth.mu[i]);
    for (int j = 0; j < m; ++j) {
      std::snprintf(buf, sizeof buf, "%.9g", truth.theta[i * m + j]);
      out << '\t' << buf;
    }
    for (int j = 0; j < m; ++j) out << '\t' << truth.n_alt[i * m + j];
    out << '\n';
  }
  if (!out) throw std::ios_base::failure("failed writing truth table");
}

void write_calls(std::ostream& out, const CallSet& calls, const LocalFdrVector& scores,
                 const std::vector<std::string>& site_ids) {
  const std::size_t p = site_ids.size();
  if (calls.decisions.size() != p || calls.rank.size() != p || scores.size() != p)
    throw DomainError("write_calls: calls, scores and site ids must align");
  char buf[64];
  auto meta = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.10g", v);
    out << '#' << key << '=' << buf << '\n';
  };
  out << kFormatLine << '\n';
  meta("alpha", calls.alpha);
  out << "#mode=" << to_string(calls.mode) << '\n';
  if (calls.hyper_used) {
    meta("pi0", calls.hyper_used->pi0);
    meta("pi1", calls.hyper_used->pi1);
    meta("a", calls.hyper_used->a);
  }
  if (calls.estimate) {
    meta("raw_pi1", calls.estimate->raw_pi1);
    meta("raw_a", calls.estimate->raw_a);
    out << "#truncated_pi1=" << int(calls.estimate->truncated_pi1) << '\n';
    out << "#truncated_a=" << int(calls.estimate->truncated_a) << '\n';
    out << "#clamped_pi1=" << int(calls.estimate->clamped_pi1) << '\n';
    out << "#clamped_a=" << int(calls.estimate->clamped_a) << '\n';
  }
  out << "#num_rejected=" << calls.num_rejected << '\n';
  meta("attained_bfdr", calls.attained_bfdr);
  out << "site_id\tfdr\trank\trejected\n";
  for (std::size_t i = 0; i < p; ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", scores[i]);
    out << site_ids[i] << '\t' << buf << '\t' << calls.rank[i] << '\t'
        << int(calls.decisions[i]) << '\n';
  }
  if (!out) throw std::ios_base::failure("failed writing call set");
}

CallFile read_calls(std::istream& in) {
  CallFile f;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      check_format_line(line, line_no);
      const auto eq = line.find('=');
      if (eq != std::string::npos) f.metadata[line.substr(1, eq - 1)] = line.substr(eq + 1);
      continue;
    }
    if (!have_header) {
      if (line != "site_id\tfdr\trank\trejected")
        throw ParseError("expected header 'site_id<TAB>fdr<TAB>rank<TAB>rejected'", line_no);
      have_header = true;
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 4) throw ParseError("expected 4 tab-separated fields", line_no);
    f.site_ids.emplace_back(fields[0]);
    f.fdr.push_back(parse_double(fields[1], "fdr", line_no));
    f.rank.push_back(parse_int<std::size_t>(fields[2], "rank", line_no));
    const int rej = parse_int<int>(fields[3], "rejected", line_no);
    if (rej != 0 && rej != 1) throw ParseError("rejected must be 0 or 1", line_no);
    f.rejected.push_back(static_cast<std::uint8_t>(rej));
  }
  if (!have_header) throw ParseError("missing header", 0);
  return f;
}

std::unordered_map<std::string, bool> read_gold(std::istream& in) {
  std::unordered_map<std::string, bool> gold;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    if (line == "site_id\tis_variant") continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2) throw ParseError("expected 2 tab-separated fields", line_no);
    const int v = parse_int<int>(fields[1], "is_variant", line_no);
    if (v != 0 && v != 1) throw ParseError("is_variant must be 0 or 1", line_no);
    if (!gold.emplace(std::string(fields[0]), v == 1).second)
      throw ParseError("duplicate site " + std::string(fields[0]), line_no);
  }
  return gold;
}

}  // namespace ebvariant
