// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "protondlra/domain/grid.hpp"

namespace pdlra::domain
{
//! Domain face a beam enters through, named by outward normal.
enum class Face
{
    x_lo,
    x_hi,
    y_lo,
    y_hi,
    z_lo,
    z_hi
};

Face parse_face(std::string const& name);
std::string to_string(Face face);
//! Axis normal to the face
int face_axis(Face face);
//! Inward direction sign along the face axis (+1 for *_lo faces)
int inward_sign(Face face);

//---------------------------------------------------------------------------//
/*!
 * Unidirectional beam entering through one face with a Gaussian lateral
 * profile and a truncated Gaussian energy spectrum.
 */
struct BeamSource
{
    Face face = Face::z_lo;
    // Profile center in the two in-face coordinates (ascending axis order).
    // Defaults to the face center when left unset.
    std::array<double, 2> center{};
    bool center_set = false;
    double sigma = 0.3;  // cm
    double energy = 90.0;  // mean, MeV
    double energy_sigma = 1.0;  // MeV; 0 means monoenergetic
    double weight = 1.0;  // total particles

    //! Unit inward direction
    std::array<double, 3> direction() const;
    //! Profile center, resolved against the grid
    std::array<double, 2> resolved_center(Grid3 const& grid) const;
    void validate() const;
};

//! A ray entering at a face midpoint with its integrated weight.
struct EntryRay
{
    std::array<double, 3> origin;
    std::array<std::size_t, 2> face_cell;  // in-face cell indices
    double weight;
};

// One ray per entry-face cell midpoint. Weights are the Gaussian profile
// integrated over each face cell, renormalized to the beam weight so that
// the injected total is exact. Rays with zero weight are dropped.
std::vector<EntryRay> entry_rays(BeamSource const& beam, Grid3 const& grid);

//---------------------------------------------------------------------------//
/*!
 * Gaussian spectrum truncated to [e_lo, e_hi] and renormalized to unit mass.
 * A zero width collapses to a delta at the mean energy.
 */
class TruncatedGaussian
{
  public:
    TruncatedGaussian(double mean, double sigma, double e_lo, double e_hi);

    bool is_delta() const { return sigma_ == 0; }
    double mean() const { return mean_; }
    double sigma() const { return sigma_; }
    //! Probability mass in [a, b]
    double mass(double a, double b) const;
    //! Probability density at E
    double density(double e) const;

  private:
    double mean_;
    double sigma_;
    double lo_;
    double hi_;
    double norm_;
};

}  // namespace pdlra::domain
