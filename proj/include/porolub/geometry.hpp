/// @file geometry.hpp
/// @brief Reference cell with obstacle, perforated two-media domain, film
///        profile, and the staggered grids for all solvers.
///
/// Geometry conventions:
///   - reference cell Y = (-1/2,1/2)^2 with obstacle T strictly inside;
///   - macroscopic interval omega = (-1/2, 1/2);
///   - porous band of height h perforated by eps-periodic obstacles;
///   - film of depth eta*g(x1) below the interface Sigma = {x2 = 0}.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "porolub/grid.hpp"

namespace porolub {

enum class ObstacleKind { disk, rectangle, polygon };

/// Obstacle T in cell units; closure must stay strictly inside Y.
struct ObstacleShape {
    ObstacleKind kind = ObstacleKind::disk;
    double cx = 0.0, cy = 0.0;            ///< center (disk/rectangle)
    double radius = 0.25;                 ///< disk
    double hx = 0.25, hy = 0.25;          ///< rectangle half-widths
    std::vector<std::pair<double, double>> vertices;  ///< polygon, CCW

    /// Point-membership in cell coordinates (open set).
    bool contains(double x, double y) const;

    /// Margin between the obstacle bounding box and the cell boundary;
    /// must be strictly positive.
    double boundary_margin() const;

    /// Validates positive area and strict containment in Y.
    void validate() const;

    /// Canonical one-line description, used as the cache key component.
    std::string describe() const;
};

struct UnitCell {
    ObstacleShape obstacle;

    /// Exact fluid fraction |Y_f| = 1 - area(T) where available
    /// (disk/rectangle); polygon area by the shoelace formula.
    double fluid_fraction_exact() const;
};

/// Film height function g on omega with 0 < a <= g <= b.
/// Either a closed form or sampled values with linear interpolation.
class FilmProfile {
public:
    static FilmProfile constant(double value);
    /// g(x) = mean + amp*cos(2*pi*k*x)
    static FilmProfile cosine(double mean, double amp, int k = 1);
    /// linear from g(-1/2) = g_left to g(1/2) = g_right
    static FilmProfile linear(double g_left, double g_right);
    /// uniform samples over omega, linear interpolation between them
    static FilmProfile sampled(std::vector<double> values);

    double operator()(double x) const;
    double lower_bound() const { return a_; }   ///< a
    double upper_bound() const { return b_; }   ///< b
    const std::string& describe() const { return desc_; }

private:
    FilmProfile() = default;
    void finalize_bounds();

    std::function<double(double)> fn_;
    std::vector<double> samples_;
    double a_ = 0.0, b_ = 0.0;
    std::string desc_;
};

/// Parameters of the two-media domain D_eps = Omega_eps ∪ Sigma ∪ I_eps.
struct PerforatedDomainSpec {
    double eps = 0.125;   ///< microstructure period; 1/eps must be integral
    double h = 0.5;       ///< porous-band thickness
    double eta = 0.25;    ///< film thickness scale
    ObstacleShape obstacle;
    FilmProfile g = FilmProfile::constant(1.0);

    void validate() const;

    /// Cell count along omega.
    int cell_count_along_omega() const;
};

/// Grid for D_eps plus bookkeeping of the two media.
struct PerforatedGrid {
    Grid grid;
    int j_sigma = 0;        ///< index of the first porous cell row (x2 = 0 face row)
    int porous_rows = 0;    ///< rows above Sigma
    int film_rows = 0;      ///< rows below Sigma
    double h_realized = 0;  ///< porous thickness after integer-row rounding
    int cells_along_omega = 0;    ///< K_eps
    int n_per_cell = 0;
};

/// n x n periodic grid on Y with the obstacle rasterized by cell-center
/// membership.  Throws a geometry error if the mask reaches the boundary ring.
Grid build_unit_cell_grid(const UnitCell& cell, int n);

/// Single grid covering Lambda_eps = Q_eps ∪ Sigma ∪ I_eps with solid mask for
/// the obstacles and for cells below the film's lower boundary x2 = -eta g(x1).
/// h/eps is rounded to the nearest integer >= 1; the realized h is reported.
PerforatedGrid build_perforated_domain(const PerforatedDomainSpec& spec, int n_per_cell,
                                       std::size_t cell_cap = 4'000'000);

enum class Medium { porous, film };

/// A cell-centered scalar field attached to the grid it lives on.
struct ScalarField {
    Grid grid;                   ///< owning copy of the (sub)grid
    std::vector<double> values;  ///< grid.cell_count()
};

/// Extract the cell-centered subfield of one medium from a perforated-domain
/// field and re-index it to reference coordinates (z2 = x2/h on the porous
/// band, z2 = x2/eta on the film).  Pure re-parameterization: values unchanged.
ScalarField rescale_field(const PerforatedGrid& pg, const std::vector<double>& cell_values,
                          Medium medium, double eta);

/// Inverse of rescale_field back onto the physical rows of the chosen medium.
std::vector<double> inverse_rescale_field(const PerforatedGrid& pg, const ScalarField& field,
                                          Medium medium);

} // namespace porolub
