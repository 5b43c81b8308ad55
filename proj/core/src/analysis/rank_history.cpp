// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/analysis/rank_history.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::analysis
{
void RankHistory::push(RankEntry entry)
{
    if (!entries_.empty() && entry.step <= entries_.back().step)
    {
        throw ValidationError(fmt::format("rank history step {} does not follow step {}",
                                          entry.step, entries_.back().step));
    }
    if (entry.rank < 1)
    {
        throw ValidationError(fmt::format("rank {} below 1 at step {}", entry.rank, entry.step));
    }
    entries_.push_back(std::move(entry));
}

std::vector<int> RankHistory::ranks() const
{
    std::vector<int> out;
    out.reserve(entries_.size());
    for (auto const& e : entries_)
    {
        out.push_back(e.rank);
    }
    return out;
}

int RankHistory::max_rank() const
{
    int r = 0;
    for (auto const& e : entries_)
    {
        r = std::max(r, e.rank);
    }
    return r;
}

void write_rank_history(std::ostream& out, RankHistory const& history)
{
    out << "step,time,energy,rank,singular_values\n";
    for (auto const& e : history.entries())
    {
        out << fmt::format("{},{:.17g},{:.17g},{},", e.step, e.time, e.energy, e.rank);
        for (std::size_t i = 0; i < e.singular_values.size(); ++i)
        {
            out << (i ? ";" : "") << fmt::format("{:.17g}", e.singular_values[i]);
        }
        out << '\n';
    }
}

RankHistory read_rank_history(std::istream& in)
{
    RankHistory history;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty() || line.starts_with("step"))
        {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
        {
            fields.push_back(field);
        }
        if (fields.size() < 4)
        {
            throw ParseError("rank history row needs at least 4 fields", lineno);
        }
        RankEntry e;
        try
        {
            e.step = std::stoi(fields[0]);
            e.time = std::stod(fields[1]);
            e.energy = std::stod(fields[2]);
            e.rank = std::stoi(fields[3]);
            if (fields.size() > 4)
            {
                std::stringstream sv(fields[4]);
                while (std::getline(sv, field, ';'))
                {
                    if (!field.empty())
                    {
                        e.singular_values.push_back(std::stod(field));
                    }
                }
            }
        }
        catch (std::logic_error const&)
        {
            throw ParseError("malformed rank history row", lineno);
        }
        history.push(std::move(e));
    }
    return history;
}

}  // namespace pdlra::analysis
