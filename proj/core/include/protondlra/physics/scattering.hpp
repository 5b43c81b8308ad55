// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <memory>
#include <string>
#include <vector>

namespace pdlra::physics
{
//---------------------------------------------------------------------------//
/*!
 * Differential scattering cross section of water per unit density,
 * Sigma_s(E, mu) in cm^2/g/sr, with mu the cosine of the deflection angle.
 *
 * Models are evaluated in terms of delta = 1 - mu so that strongly
 * forward-peaked kernels keep full relative precision near mu = 1.
 */
class ScatteringModel
{
  public:
    virtual ~ScatteringModel() = default;

    virtual double evaluate(double energy, double one_minus_mu) const = 0;

    double operator()(double energy, double mu) const { return evaluate(energy, 1.0 - mu); }

    //! Width of the forward peak in delta; zero for kernels without one
    virtual double forward_peak_width(double /* energy */) const { return 0.0; }

    //! Points in delta (0, 2) where the kernel is not smooth
    virtual std::vector<double> breakpoints(double /* energy */) const { return {}; }

    virtual std::string name() const = 0;
};

//! No scattering at all (Sigma_s = 0).
class NoScattering final : public ScatteringModel
{
  public:
    double evaluate(double, double) const override { return 0.0; }
    std::string name() const override { return "none"; }
};

//! Energy-independent isotropic kernel with total cross section sigma_t.
class IsotropicScattering final : public ScatteringModel
{
  public:
    explicit IsotropicScattering(double total) : total_(total) {}
    double evaluate(double, double) const override;
    std::string name() const override { return "isotropic"; }

  private:
    double total_;
};

//---------------------------------------------------------------------------//
/*!
 * Screened Rutherford (Wentzel) kernel for water using the Moliere screening
 * angle.
 *
 * For each atom species a with charge Z and Thomas-Fermi radius
 * a_TF = 0.885 a_0 Z^{-1/3}:
 *   eta_a = 1/4 (hbar c / (p c a_TF))^2 (1.13 + 3.76 (alpha Z / beta)^2)
 *   dsigma/dOmega = Z (Z + 1) (r_e m_e c^2 / (p beta c))^2 / (1 - mu + 2 eta_a)^2
 * The Z(Z+1) factor adds scattering off atomic electrons.
 */
class ScreenedRutherfordWater final : public ScatteringModel
{
  public:
    double evaluate(double energy, double one_minus_mu) const override;
    double forward_peak_width(double energy) const override;
    std::string name() const override { return "screened-rutherford"; }

    //! Moliere screening parameter for charge Z
    static double screening(double energy, int z);
    //! Analytic total cross section [cm^2/g]
    double total(double energy) const;
};

//---------------------------------------------------------------------------//
/*!
 * Tabulated kernel: rows of (E, mu, value) sharing one ascending mu grid per
 * energy. Piecewise linear in mu and in E.
 */
class TabulatedKernel final : public ScatteringModel
{
  public:
    TabulatedKernel(std::vector<double> energies,
                    std::vector<double> mu_grid,
                    std::vector<std::vector<double>> values);

    double evaluate(double energy, double one_minus_mu) const override;
    std::vector<double> breakpoints(double energy) const override;
    std::string name() const override { return "tabulated"; }

  private:
    std::vector<double> energies_;
    std::vector<double> mu_;
    std::vector<std::vector<double>> values_;
};

std::unique_ptr<TabulatedKernel> load_tabulated_kernel(std::istream& in);

//---------------------------------------------------------------------------//
//! Legendre moments of a kernel at one energy.
struct ScatterMoments
{
    double total = 0;  //!< Sigma_t = G_00 [cm^2/g]
    std::vector<double> moments;  //!< G_kk, k = 0..N
    std::vector<double> removal;  //!< Sigma_t - G_kk computed without cancellation
    int quadrature_points = 0;
};

// G_kk = 2 pi int P_k(mu) Sigma_s(E, mu) dmu by Gauss-Legendre quadrature of
// order >= 4N, doubled until every quantity changes by less than rel_tol.
// Throws AccuracyError if the doubling does not converge.
ScatterMoments scattering_moments(ScatteringModel const& model,
                                  double energy,
                                  int degree,
                                  double rel_tol = 1e-10);

//---------------------------------------------------------------------------//
/*!
 * Energy-interpolated table of kernel moments up to a maximum degree.
 *
 * With a forward-delta order K > 0, the part of the kernel that is
 * indistinguishable from a forward delta at degree K is removed:
 *   Sigma_t' = Sigma_t - G_KK,   G_ll' = G_ll - G_KK.
 * This leaves every Sigma_t - G_ll unchanged and lowers the total cross
 * section seen by the uncollided flux.
 */
class ScatterTable
{
  public:
    ScatterTable(ScatteringModel const& model,
                 double e_lo,
                 double e_hi,
                 int max_degree,
                 int forward_delta_order = 0,
                 int energy_points = 96);

    //! Effective total cross section [cm^2/g]
    double total(double energy) const;
    //! Effective moment G_ll
    double moment(double energy, int degree) const;
    //! Sigma_t - G_ll (independent of the forward-delta order)
    double removal(double energy, int degree) const;

    int max_degree() const { return max_degree_; }
    int forward_delta_order() const { return delta_order_; }
    std::string const& model_name() const { return model_name_; }
    double min_energy() const { return energies_.front(); }
    double max_energy() const { return energies_.back(); }

  private:
    std::vector<double> energies_;
    std::vector<double> raw_total_;
    std::vector<std::vector<double>> removal_;  // [degree][energy]
    int max_degree_;
    int delta_order_;
    std::string model_name_;

    double interpolate(std::vector<double> const& values, double energy) const;
};

}  // namespace pdlra::physics
