#pragma once

#include <functional>
#include <vector>

#include "kpp/coefficient.hpp"
#include "kpp/exec.hpp"
#include "kpp/kernels.hpp"
#include "kpp/tridiag.hpp"

namespace kpp {

enum class Scheme { strang_cn, duhamel };

struct SimulationConfig {
    double domain_half_width = 0.0;  // multiple of L; 0 = auto-sized so the
                                     // front cannot reach the boundary by t_end
    double grid_dx = 0.0;            // must divide L and be at most L/256; 0 = L/512
    double dt = 0.0;                 // 0 = grid_dx
    double t_end = 60.0;
    Scheme scheme = Scheme::strang_cn;
    Boundary boundary = Boundary::dirichlet_zero;
    int snapshot_count = 25;
    double front_threshold = 0.5;
    double front_interval = 0.05;    // cadence of front-position sampling
    int smoothing_steps = 4;         // backward-Euler starter half-steps
    AtomScheme atom_scheme = AtomScheme::lump;  // shared with the eigensolver
    Exec exec = Exec::openmp;
};

struct FrontSample {
    double t;
    double x_plus;   // rightmost threshold crossing
    double x_minus;  // leftmost threshold crossing
};

/// Space-time record of one Cauchy run on x_i = -X + i*dx.
struct SimulationTrace {
    double domain_half_width = 0.0;
    double dx = 0.0;
    int n = 0;
    double period = 0.0;
    double t_end = 0.0;
    double threshold = 0.5;

    std::vector<double> times;
    std::vector<std::vector<double>> snapshots;
    std::vector<double> sup_norms;  // per snapshot
    std::vector<FrontSample> front;

    bool contaminated = false;       // u exceeded 1e-8 within 2L of the boundary
    double contamination_time = -1.0;
    double min_seen = 0.0;           // most negative value the stepper produced

    double x(int i) const { return -domain_half_width + i * dx; }
    /// Snapshot nearest to t.
    const std::vector<double>& snapshot_at(double t, double* actual_time = nullptr) const;
    /// Linear-in-time interpolation between the two bracketing snapshots.
    std::vector<double> interpolated_snapshot(double t) const;
};

/// One full operator step: half Crank-Nicolson diffusion, exact logistic
/// reaction, half Crank-Nicolson diffusion (or the Duhamel quadrature).
/// Factorizations are built once per (dt, grid).
class Stepper {
public:
    Stepper(const PeriodicCoefficient& b, double x_left, double dx, int n, double dt,
            Boundary bc, Scheme scheme, AtomScheme atom_scheme, Exec exec);

    void step(std::vector<double>& u, bool smoothing_start = false);

    /// Restrict the solve to [lo, hi) node indices; the state must vanish
    /// outside (compact support). The window edges absorb with zero values,
    /// which is exact as long as the support stays inside. Dirichlet only.
    void set_window(int lo, int hi);
    int window_lo() const { return win_lo_; }
    int window_hi() const { return win_hi_; }

    const std::vector<double>& rates() const { return rates_; }
    double min_seen() const { return min_seen_; }
    double dt() const { return dt_; }

private:
    void diffusion_half(std::vector<double>& u, bool backward_euler);
    void duhamel_step(std::vector<double>& u);

    int n_;
    double dx_, dt_;
    Boundary bc_;
    Scheme scheme_;
    Exec exec_;
    bool monotone_halves_ = false;  // backward-Euler halves (atomic coefficients)
    int win_lo_ = 0, win_hi_ = 0;
    std::vector<double> rates_;
    std::vector<double> growth_;    // exp(rate * dt), fixed for the run
    TridiagFactor cn_, be_;
    std::vector<double> taps_;  // duhamel kernel
    std::vector<double> work_, work2_;
    double min_seen_ = 0.0;
};

/// Spec'd single-step entry point on a grid starting at x_left.
std::vector<double> step_strang(std::vector<double> u, const PeriodicCoefficient& b,
                                double dt, double dx, double x_left = 0.0,
                                Boundary bc = Boundary::neumann);

SimulationTrace simulate(const PeriodicCoefficient& b, const SimulationConfig& cfg);
SimulationTrace simulate(const PeriodicCoefficient& b,
                         const std::function<double(double)>& u0,
                         const SimulationConfig& cfg);

/// ||u(.,t)-v(.,t)||_inf / ||u0-v0||_inf for the two initial conditions.
double continuous_dependence_probe(const PeriodicCoefficient& b,
                                   const std::function<double(double)>& u0,
                                   const std::function<double(double)>& v0, double t,
                                   SimulationConfig cfg);

}  // namespace kpp
