#include "vetocore/election.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "vetocore/error.hpp"

namespace vetocore {

Election::Election(int num_candidates, std::vector<Ranking> rankings, std::vector<std::string> names)
    : m_(num_candidates), rankings_(std::move(rankings)), names_(std::move(names)) {
  if (m_ < 1 || rankings_.empty()) {
    throw Error(ErrorCode::empty_election, "an election needs at least one voter and one candidate");
  }
  if (!names_.empty() && static_cast<int>(names_.size()) != m_) {
    throw Error(ErrorCode::invalid_argument, "candidate label count does not match m");
  }
  position_.assign(rankings_.size(), std::vector<int>(m_, -1));
  for (std::size_t v = 0; v < rankings_.size(); ++v) {
    const Ranking& r = rankings_[v];
    if (static_cast<int>(r.size()) != m_) {
      throw Error(ErrorCode::not_a_permutation, "voter " + std::to_string(v) + ": ranking has wrong length");
    }
    for (int pos = 0; pos < m_; ++pos) {
      CandidateId c = r[pos];
      if (c < 0 || c >= m_ || position_[v][c] != -1) {
        throw Error(ErrorCode::not_a_permutation, "voter " + std::to_string(v) + ": not a permutation");
      }
      position_[v][c] = pos;
    }
  }
}

CandidateSet Election::top_k(VoterId v, int k) const {
  CandidateSet out(rankings_[v].begin(), rankings_[v].begin() + std::clamp(k, 0, m_));
  std::sort(out.begin(), out.end());
  return out;
}

CandidateId Election::bottom_of(VoterId v, std::span<const CandidateId> subset) const {
  if (subset.empty()) throw Error(ErrorCode::empty_subset, "bottom_of on an empty subset");
  CandidateId worst = subset.front();
  for (CandidateId c : subset) {
    if (position_[v][c] > position_[v][worst]) worst = c;
  }
  return worst;
}

CandidateId Election::bottom_of(VoterId v, const std::vector<bool>& members) const {
  for (auto it = rankings_[v].rbegin(); it != rankings_[v].rend(); ++it) {
    if (members[*it]) return *it;
  }
  throw Error(ErrorCode::empty_subset, "bottom_of on an empty subset");
}

std::string Election::label(CandidateId c) const {
  if (!names_.empty()) return names_[c];
  return "c" + std::to_string(c + 1);
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool parse_int(std::string_view token, long long& out) {
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

bool is_blank_or_comment(std::string_view line) {
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '#';
  }
  return true;
}

}  // namespace

Election parse_election(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }

  std::size_t idx = 0;
  while (idx < lines.size() && is_blank_or_comment(lines[idx])) ++idx;
  if (idx == lines.size()) {
    throw ParseError(ErrorCode::empty_election, static_cast<int>(lines.size()), "no header line");
  }

  const int header_line = static_cast<int>(idx) + 1;
  auto header = split_ws(lines[idx]);
  long long n = 0, m = 0;
  if (header.size() != 2 || !parse_int(header[0], n) || !parse_int(header[1], m) || n < 0 || m < 0) {
    throw ParseError(ErrorCode::malformed_header, header_line, "expected \"n m\"");
  }
  if (n == 0 || m == 0) {
    throw ParseError(ErrorCode::empty_election, header_line, "n and m must be positive");
  }

  std::vector<Ranking> rankings;
  int last_line = header_line;
  for (++idx; idx < lines.size(); ++idx) {
    if (is_blank_or_comment(lines[idx])) continue;
    const int line_no = static_cast<int>(idx) + 1;
    last_line = line_no;
    std::string_view body = lines[idx];
    long long copies = 1;
    if (auto colon = body.find(':'); colon != std::string_view::npos) {
      auto count_tokens = split_ws(body.substr(0, colon));
      if (count_tokens.size() != 1 || !parse_int(count_tokens[0], copies) || copies < 1) {
        throw ParseError(ErrorCode::not_a_permutation, line_no, "bad copy count before ':'");
      }
      body = body.substr(colon + 1);
    }
    auto tokens = split_ws(body);
    if (static_cast<long long>(tokens.size()) != m) {
      throw ParseError(ErrorCode::not_a_permutation, line_no,
                       "expected " + std::to_string(m) + " candidates, got " + std::to_string(tokens.size()));
    }
    Ranking ranking;
    ranking.reserve(m);
    std::vector<bool> seen(m, false);
    for (auto tok : tokens) {
      long long c = 0;
      if (!parse_int(tok, c) || c < 1 || c > m || seen[c - 1]) {
        throw ParseError(ErrorCode::not_a_permutation, line_no, "not a permutation of 1.." + std::to_string(m));
      }
      seen[c - 1] = true;
      ranking.push_back(static_cast<CandidateId>(c - 1));
    }
    if (static_cast<long long>(rankings.size()) + copies > n) {
      throw ParseError(ErrorCode::count_mismatch, line_no, "more voters than the header declares");
    }
    for (long long i = 0; i < copies; ++i) rankings.push_back(ranking);
  }
  if (static_cast<long long>(rankings.size()) != n) {
    throw ParseError(ErrorCode::count_mismatch, last_line,
                     "header declares " + std::to_string(n) + " voters, found " + std::to_string(rankings.size()));
  }
  return Election(static_cast<int>(m), std::move(rankings));
}

Election read_election_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_election(buf.str());
}

std::string write_election(const Election& e) {
  std::string out = std::to_string(e.n()) + " " + std::to_string(e.m()) + "\n";
  for (const Ranking& r : e.rankings()) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(r[i] + 1);
    }
    out += '\n';
  }
  return out;
}

void check_k(const Election& e, int k) {
  if (k < 1 || k > e.m()) {
    throw Error(ErrorCode::k_out_of_range, "k=" + std::to_string(k) + " outside [1, " + std::to_string(e.m()) + "]");
  }
}

std::vector<int> k_approval_scores(const Election& e, int k) {
  check_k(e, k);
  std::vector<int> score(e.m(), 0);
  for (const Ranking& r : e.rankings()) {
    for (int pos = 0; pos < k; ++pos) ++score[r[pos]];
  }
  return score;
}

std::vector<int> plurality_scores(const Election& e) { return k_approval_scores(e, 1); }

}  // namespace vetocore
