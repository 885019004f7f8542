#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kpp {

/// A point mass sitting strictly inside the period cell.
struct Atom {
    double position = 0.0;
    double mass = 0.0;
};

/// Uniform samples on [0,L), read everywhere as the L-periodic
/// piecewise-linear interpolant. Quadrature on this representation is exact.
struct SmoothSamples {
    std::vector<double> values;
};

/// levels[k] holds on [breakpoints[k], breakpoints[k+1]), the last level
/// wrapping through the period seam back to breakpoints[0].
struct PiecewiseConstant {
    std::vector<double> breakpoints;
    std::vector<double> levels;
};

using ContinuousPart = std::variant<SmoothSamples, PiecewiseConstant>;

/// How point masses enter a grid discretization.
enum class AtomScheme {
    lump,   // m/dx into the owning cell
    split,  // linear weights onto the two nearest nodes
};

enum class MollifierKernel { triangle, gaussian_truncated };

struct MollifierSpec {
    double width = 0.1;  // support width; must stay under the smallest atom gap
    MollifierKernel kernel = MollifierKernel::triangle;
};

/// An L-periodic nonnegative coefficient with prescribed mean alpha
/// (cell mass alpha*L): smooth samples, piecewise-constant segments,
/// point masses, or a continuous part plus point masses.
///
/// Immutable after construction; construction validates nonnegativity,
/// the cell-mass constraint (1e-12 relative), and atom placement
/// (strictly inside the open cell, pairwise distinct).
class PeriodicCoefficient {
public:
    static constexpr int default_samples = 1024;

    static PeriodicCoefficient make_constant(double alpha, double L,
                                             int n = default_samples);
    static PeriodicCoefficient make_delta_comb(double alpha, double L);
    /// Two-level habitat: level b1 on a patch of length f*L centered at L/2,
    /// level b2 elsewhere, b1/b2 = contrast, mean alpha. contrast may be
    /// +infinity (b2 = 0); f = 1 degenerates to the constant profile.
    static PeriodicCoefficient make_shigesada(double alpha, double L, double fraction,
                                              double contrast);
    static PeriodicCoefficient make_samples(double L, std::vector<double> values);
    static PeriodicCoefficient make_piecewise(double L, std::vector<double> breakpoints,
                                              std::vector<double> levels);
    static PeriodicCoefficient make_atoms(double L, std::vector<Atom> atoms);
    static PeriodicCoefficient make_mixture(double L, ContinuousPart continuous,
                                            std::vector<Atom> atoms);

    double period() const { return period_; }
    double alpha() const { return alpha_; }
    double mass() const;  // integral over one cell, atoms included

    bool has_atoms() const { return !atoms_.empty(); }
    bool has_continuous_part() const { return continuous_.has_value(); }
    bool has_smooth_part() const;  // SmoothSamples present
    /// Eligible for the transfer-matrix solver: no smooth-sampled part.
    bool is_exact() const { return !has_smooth_part(); }
    bool is_constant(double rel_tol = 1e-14) const;

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<ContinuousPart>& continuous() const { return continuous_; }

    /// Continuous-part value at x (periodic); atoms excluded.
    double value(double x) const;
    /// Exact mean of the continuous part over [lo, hi] (may wrap).
    double cell_average(double lo, double hi) const;
    /// sup |b - alpha|; infinity when atoms are present.
    double sup_deviation() const;

    /// Discrete rates on n uniform nodes x_i = i*L/n: continuous part by node
    /// value (samples) or cell average (piecewise), atoms lumped or split.
    std::vector<double> node_rates(int n, AtomScheme scheme = AtomScheme::lump) const;
    /// Same without the atom contribution.
    std::vector<double> continuous_node_rates(int n) const;

    /// Smallest distance between adjacent atoms, wrapping around the cell;
    /// the full period when fewer than two atoms exist.
    double min_atom_gap() const;

    /// The same coefficient with the cell origin moved to `shift`.
    PeriodicCoefficient rotate_frame(double shift) const;

    std::string describe() const;
    std::uint64_t hash() const;

private:
    PeriodicCoefficient(double L, double alpha, std::optional<ContinuousPart> cont,
                        std::vector<Atom> atoms);
    void validate() const;
    double continuous_mass() const;

    double period_ = 1.0;
    double alpha_ = 1.0;
    std::optional<ContinuousPart> continuous_;
    std::vector<Atom> atoms_;
};

/// Replace every atom by a bump of equal mass (triangle of half-width
/// width/2 and height 2m/width, or a truncated Gaussian on the same
/// support), producing a purely sampled profile. n_out = 0 picks a grid
/// fine enough to resolve the bumps. Total mass is preserved exactly.
PeriodicCoefficient mollify(const PeriodicCoefficient& b, const MollifierSpec& spec,
                            int n_out = 0);

/// Integral over one cell of b times the L-periodic test function given by
/// uniform samples (piecewise-linear interpolant). Exact for the
/// representations; atoms evaluate eta pointwise.
double weak_pairing(const PeriodicCoefficient& b, const std::vector<double>& eta_samples);

}  // namespace kpp
