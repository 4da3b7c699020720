#pragma once

#include <optional>
#include <ostream>

#include <Eigen/Dense>

#include "fkpp/mittag_leffler.hpp"

namespace fkpp::ml {

/// Discretized nonnegative density K_{alpha,rho} realizing the completely
/// monotone decomposition E_{alpha,rho}(-x) = int_0^inf e^{-r x} K(r) dr.
/// At alpha = 1 the measure degenerates to a unit atom at r = 1, stored
/// explicitly instead of a narrow spike.
struct SpectralTable {
    MLOrder order;
    Eigen::ArrayXd r_grid;    // strictly increasing, starts at 0 (empty if atom)
    Eigen::ArrayXd k_values;  // >= 0 after the clip gate
    double total_mass = 0.0;  // trapezoid mass, ~ 1/Gamma(rho)

    struct Atom {
        double location;
        double weight;
    };
    std::optional<Atom> atom;

    double max_forward_residual = 0.0;  // worst relative error of the gate
    double min_raw_density = 0.0;       // most negative value before clipping

    /// Trapezoid Laplace transform of the table at x (atom: w * e^{-loc x}).
    double forward_transform(double x) const;

    /// Mean of r under the density tilted by e^{-r s} (atom: location).
    double tilted_mean(double s) const;

    void to_csv(std::ostream& os) const;
};

/// Pointwise spectral density K_{alpha,rho}(r); the Bromwich integral of
/// x -> E_{alpha,rho}(-x) with the x-integration collapsed analytically,
/// evaluated by saddle-scaled parabolic contour (series near r = 0).
double spectral_density_value(double alpha, double rho, double r);

/// Suggested truncation radius: stretched-exponential tail below ~1e-19.
double spectral_default_r_max(double alpha);

/// Tabulate K_{alpha,rho} on {0} U geometric grid and validate the forward
/// transform against ml::eval on x in [0, 100] (relative 1e-8 gate).
/// r_max/n_points <= 0 select defaults. Throws accuracy_error on gate failure.
SpectralTable ml_spectral_density(const MLOrder& order, double r_max = 0.0,
                                  int n_points = 0);

}  // namespace fkpp::ml
