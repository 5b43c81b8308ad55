// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/physics/pseudo_time.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "protondlra/errors.hpp"
#include "protondlra/physics/quadrature.hpp"

namespace pdlra::physics
{
namespace
{
constexpr int panel_points = 12;
constexpr double max_log_ratio = 0.01;
constexpr int linear_panels = 64;
}  // namespace

PseudoTimeMap::PseudoTimeMap(StoppingPowerTable table, double e_cutoff, double e_max)
    : table_(std::move(table)), e_cutoff_(e_cutoff), e_max_(e_max)
{
    if (!(e_max_ > e_cutoff_))
    {
        throw ValidationError(fmt::format("E_max ({}) must exceed E_cutoff ({})", e_max_,
                                          e_cutoff_));
    }
    if (!table_.covers(e_cutoff_) || !table_.covers(e_max_))
    {
        throw DomainError(fmt::format(
            "stopping power table [{}, {}] MeV does not cover [{}, {}] MeV",
            table_.min_energy(), table_.max_energy(), e_cutoff_, e_max_));
    }

    std::vector<double> breaks{e_cutoff_};
    for (double e : table_.energies())
    {
        if (e > e_cutoff_ && e < e_max_)
        {
            breaks.push_back(e);
        }
    }
    breaks.push_back(e_max_);

    nodes_.push_back(breaks.front());
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    {
        double const lo = breaks[i];
        double const hi = breaks[i + 1];
        if (lo > 0)
        {
            int const n = std::max(1, static_cast<int>(std::ceil(std::log(hi / lo) / max_log_ratio)));
            for (int k = 1; k < n; ++k)
            {
                nodes_.push_back(lo * std::exp(std::log(hi / lo) * k / n));
            }
        }
        else
        {
            for (int k = 1; k < linear_panels; ++k)
            {
                nodes_.push_back(lo + (hi - lo) * k / linear_panels);
            }
        }
        nodes_.push_back(hi);
    }

    times_.assign(nodes_.size(), 0.0);
    for (std::size_t i = nodes_.size() - 1; i-- > 0;)
    {
        times_[i] = times_[i + 1] + panel_integral(nodes_[i], nodes_[i + 1]);
    }
}

double PseudoTimeMap::panel_integral(double lo, double hi) const
{
    return integrate([this](double e) { return 1.0 / table_(e); }, lo, hi, panel_points);
}

void PseudoTimeMap::check_energy(double energy) const
{
    if (!(energy >= e_cutoff_ && energy <= e_max_))
    {
        throw DomainError(fmt::format("energy {} MeV outside [{}, {}]", energy, e_cutoff_,
                                      e_max_));
    }
}

double PseudoTimeMap::time_of_energy(double energy) const
{
    check_energy(energy);
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), energy);
    std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
    if (hi >= nodes_.size())
    {
        return 0.0;
    }
    return times_[hi] + panel_integral(energy, nodes_[hi]);
}

double PseudoTimeMap::energy_of_time(double time) const
{
    double const t_end = final_time();
    if (!(time >= 0.0 && time <= t_end))
    {
        throw DomainError(fmt::format("pseudo-time {} outside [0, {}]", time, t_end));
    }
    // times_ descends with index; pick the panel times_[i_lo] >= t > times_[i_hi]
    auto it = std::lower_bound(times_.rbegin(), times_.rend(), time);
    std::size_t const i_lo = nodes_.size() - 1 - static_cast<std::size_t>(it - times_.rbegin());
    if (times_[i_lo] == time)
    {
        return nodes_[i_lo];
    }
    std::size_t const i_hi = i_lo + 1;
    double const e_node = nodes_[i_hi];
    double const t_node = times_[i_hi];
    double lo = nodes_[i_lo];
    double hi = e_node;
    double e = lo + (hi - lo) * (times_[i_lo] - time) / (times_[i_lo] - t_node);
    for (int iter = 0; iter < 100; ++iter)
    {
        // t is decreasing in E: a positive residual means e is too low
        double const residual = t_node + panel_integral(e, e_node) - time;
        if (residual == 0)
        {
            return e;
        }
        (residual > 0 ? lo : hi) = e;
        double next = e + residual * table_(e);
        if (!(next > lo && next < hi))
        {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - e) <= 1e-15 * std::abs(e))
        {
            return next;
        }
        e = next;
    }
    return e;
}

}  // namespace pdlra::physics
