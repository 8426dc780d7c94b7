#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ballot/election.hpp"

namespace ballot::testing {

inline std::vector<std::string> default_names(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i) names.push_back("c" + std::to_string(i));
  return names;
}

inline Ranking ranking(std::initializer_list<int> ids) {
  Ranking r;
  for (int id : ids) r.push_back(CandidateId{id});
  return r;
}

/// Three voters over four candidates:
///   v1: c1 > c2 > c3 > c4
///   v2: c1 > c3 > c2 > c4
///   v3: c4 > c3 > c2 > c1
inline StrictProfile worked_profile() {
  return StrictProfile(4, {ranking({1, 2, 3, 4}), ranking({1, 3, 2, 4}), ranking({4, 3, 2, 1})});
}

inline Election worked_election() { return Election(default_names(4), worked_profile()); }

inline const char* worked_soc_text() {
  return "4\n1,c1\n2,c2\n3,c3\n4,c4\n3,3,3\n1,1,2,3,4\n1,1,3,2,4\n1,4,3,2,1\n";
}

inline StrictProfile random_profile(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::vector<Ranking> rankings;
  for (std::size_t v = 0; v < n; ++v) {
    Ranking r;
    for (std::size_t c = 0; c < m; ++c) r.push_back(CandidateId::from_pos(c));
    std::shuffle(r.begin(), r.end(), rng);
    rankings.push_back(std::move(r));
  }
  return StrictProfile(m, std::move(rankings));
}

inline Election random_strict_election(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  return Election(default_names(m), random_profile(rng, m, n));
}

inline ScoreMatrix random_scores(std::mt19937_64& rng, std::size_t m, std::size_t n, std::int64_t max_score) {
  std::uniform_int_distribution<std::int64_t> dist(0, max_score);
  std::vector<std::int64_t> s(m * n);
  for (auto& x : s) x = dist(rng);
  return ScoreMatrix(m, n, std::move(s));
}

inline Election random_score_election(std::mt19937_64& rng, std::size_t m, std::size_t n, std::int64_t max_score) {
  return Election(default_names(m), random_scores(rng, m, n, max_score));
}

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace ballot::testing
