// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <vector>

namespace pdlra::analysis
{
struct RankEntry
{
    int step = 0;
    double time = 0;
    double energy = 0;
    int rank = 1;
    std::vector<double> singular_values;
};

//! Per-step rank record of a solve. Steps are strictly increasing.
class RankHistory
{
  public:
    void push(RankEntry entry);

    std::vector<RankEntry> const& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::vector<int> ranks() const;
    int max_rank() const;

  private:
    std::vector<RankEntry> entries_;
};

// CSV: step,time,energy,rank,sigma_1;sigma_2;...
void write_rank_history(std::ostream& out, RankHistory const& history);
RankHistory read_rank_history(std::istream& in);

}  // namespace pdlra::analysis
