#pragma once

#include "bbdrag/polarizability.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

// Brute-force reference values for the double integrals. Nothing here calls
// into the kernels, quadrature or observables code: the occupation numbers,
// alpha'' and the integrand algebra are re-derived locally so that a shared
// bug cannot validate itself.
namespace bbdrag::oracle {

/// Midpoint grid over [omega_min, omega_max] x [-1, 1].
struct GridSpec {
    std::size_t n_omega = 2048;
    std::size_t n_x = 1024;
    double omega_min = 0.0;
    double omega_max = 1.0;

    void validate() const;
    GridSpec doubled() const;
};

/// Plain midpoint double sum; error O(n^-2) for smooth integrands. Throws
/// NumericalError naming the coordinates of the first non-finite sample.
double riemann_2d(const std::function<double(double, double)>& integrand, const GridSpec& grid);

enum class Observable {
    force_lab,       // F_x
    heating_rate,    // dQ/dt
    intensity,       // I
    emitted,         // I1
    absorbed,        // I2
    drag,            // F_x - gamma^2 beta dQ/dt, Doppler-kernel form
    rest_frame,      // F'_x, polarizability at its own frequency
};

std::string_view to_string(Observable o);
Observable parse_observable(std::string_view name);

struct GoldenCase {
    std::string name;
    Observable observable = Observable::force_lab;
    double beta = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    PolarizabilityModel model;
};

/// The committed case list: spans every observable kind.
std::vector<GoldenCase> standard_cases();

/// Oracle value of a case on the given base grid: Richardson extrapolation
/// (4 M(2n) - M(n)) / 3 of two midpoint sums. The grid's omega range is
/// chosen from the case (band edges for TopHat, thermal cutoff otherwise).
struct OracleValue {
    double value = 0.0;
    double coarse = 0.0;  // M(n)
    double fine = 0.0;    // M(2n)
    GridSpec grid;        // base grid
};

OracleValue evaluate(const GoldenCase& c, std::size_t n_omega = 2048, std::size_t n_x = 1024);

struct GoldenRecord {
    GoldenCase golden_case;
    GridSpec grid;
    double value = 0.0;          // extrapolated value on the base grid
    double value_doubled = 0.0;  // extrapolated value on the doubled grid
    double relative_change = 0.0;
};

inline constexpr double convergence_gate = 1e-6;

/// Evaluates the case on the base grid and on the doubled grid; throws
/// NumericalError when the relative change exceeds convergence_gate.
GoldenRecord mint_golden(const GoldenCase& c, std::size_t n_omega = 2048, std::size_t n_x = 1024);

std::string to_json_line(const GoldenRecord& record);
GoldenRecord parse_json_line(std::string_view line);

std::vector<GoldenRecord> read_golden_file(const std::filesystem::path& path);
void write_golden_file(const std::filesystem::path& path, const std::vector<GoldenRecord>& records);

} // namespace bbdrag::oracle
