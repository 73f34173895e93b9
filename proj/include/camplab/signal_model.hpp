#pragma once

#include <complex>
#include <string>
#include <vector>

#include "camplab/rng.hpp"

namespace camplab {

// Distribution of a nonzero signal coefficient.
//   uniform_phase:    modulus 1, phase uniform on [0, 2pi)
//   unit_real:        the constant 1
//   complex_gaussian: real and imaginary parts independent standard normal
//   uniform_square:   real and imaginary parts independent uniform on [0, 1]
//   point_mass:       modulus `amplitude`, phase uniform on [0, 2pi)
enum class CoeffKind { uniform_phase, unit_real, complex_gaussian, uniform_square, point_mass };

struct SignalModel {
    CoeffKind kind = CoeffKind::uniform_phase;
    double amplitude = 1.0;  // point_mass modulus; ignored by the other kinds
};

// E |X|^2 of a nonzero coefficient, in closed form.
double coeff_second_moment(const SignalModel& model);

// Draws one nonzero coefficient.
std::complex<double> sample_coeff(const SignalModel& model, RngStream& rng);

// Discretization of the modulus distribution as weighted atoms (mu_k, w_k)
// with sum w_k = 1, for expectations of smooth functions of the modulus.
// Exact single atoms for the constant-modulus kinds; Gauss-Legendre panels
// against the modulus density for complex_gaussian and uniform_square.
struct AmplitudeGrid {
    std::vector<double> mu;
    std::vector<double> w;
};

AmplitudeGrid amplitude_grid(const SignalModel& model, int points = 96);

const char* coeff_kind_name(CoeffKind kind);
CoeffKind coeff_kind_from_name(const std::string& name);

}  // namespace camplab
