#include "camplab/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace camplab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// 16-point Gauss-Legendre nodes/weights on [-1, 1]; reused to quadrature the
// modulus density of the continuous coefficient kinds.
constexpr double kX16[8] = {0.095012509837637440185, 0.281603550779258913230,
                            0.458016777657227386342, 0.617876244402643748447,
                            0.755404408355003033895, 0.865631202387831743880,
                            0.944575023073232576078, 0.989400934991649932596};
constexpr double kW16[8] = {0.189450610455068496285, 0.182603415044923588867,
                            0.169156519395002538189, 0.149595988816576732081,
                            0.124628971255533872052, 0.095158511682492784810,
                            0.062253523938647892863, 0.027152459411754094852};

// Modulus density of complex_gaussian: Rayleigh with unit per-component
// variance, p(r) = r exp(-r^2/2).
double rayleigh_pdf(double r) { return r * std::exp(-0.5 * r * r); }

// Modulus density of uniform_square: the arc of radius r inside the unit
// square has angle pi/2 for r <= 1 and pi/2 - 2 acos(1/r) for 1 < r <= sqrt(2).
double square_pdf(double r) {
    const double half_pi = 0.25 * kTwoPi;
    if (r <= 0.0) return 0.0;
    if (r <= 1.0) return r * half_pi;
    if (r >= std::sqrt(2.0)) return 0.0;
    const double angle = half_pi - 2.0 * std::acos(1.0 / r);
    return r * angle;
}

// Appends Gauss-Legendre panels over u in [lo, hi] for the atom weights
// pdf(map(u)) map'(u) du at modulus map(u). A non-identity map absorbs
// algebraic singularities of the density so the panels see a smooth integrand.
template <class Map, class Jac>
void append_gl_panels(AmplitudeGrid& g, double lo, double hi, int panels,
                      double (*pdf)(double), Map map, Jac jac) {
    const double h = (hi - lo) / panels;
    auto push = [&](double u) {
        const double mu = map(u);
        g.mu.push_back(mu);
        g.w.push_back(0.5 * h * pdf(mu) * jac(u));
    };
    for (int p = 0; p < panels; ++p) {
        const double c = lo + (p + 0.5) * h;
        for (int i = 7; i >= 0; --i) {
            push(c - 0.5 * h * kX16[i]);
            g.w.back() *= kW16[i];
        }
        for (int i = 0; i < 8; ++i) {
            push(c + 0.5 * h * kX16[i]);
            g.w.back() *= kW16[i];
        }
    }
}

void normalize(AmplitudeGrid& g) {
    double total = 0.0;
    for (double w : g.w) total += w;
    for (double& w : g.w) w /= total;
}

AmplitudeGrid pdf_grid(double lo, double hi, int points, double (*pdf)(double)) {
    AmplitudeGrid g;
    append_gl_panels(g, lo, hi, (points + 15) / 16, pdf,
                     [](double u) { return u; }, [](double) { return 1.0; });
    normalize(g);
    return g;
}

// uniform_square: the density has a vertical tangent at r = 1 (the acos term
// behaves like sqrt(r - 1)), so integrate [0, 1] directly and [1, sqrt 2]
// under r = 1 + u^2, which makes the integrand analytic in u.
AmplitudeGrid square_grid(int points) {
    AmplitudeGrid g;
    const int panels = std::max(1, (points + 31) / 32);
    append_gl_panels(g, 0.0, 1.0, panels, square_pdf,
                     [](double u) { return u; }, [](double) { return 1.0; });
    append_gl_panels(g, 0.0, std::sqrt(std::sqrt(2.0) - 1.0), panels, square_pdf,
                     [](double u) { return 1.0 + u * u; }, [](double u) { return 2.0 * u; });
    normalize(g);
    return g;
}

}  // namespace

double coeff_second_moment(const SignalModel& model) {
    switch (model.kind) {
        case CoeffKind::uniform_phase:
        case CoeffKind::unit_real:
            return 1.0;
        case CoeffKind::complex_gaussian:
            return 2.0;
        case CoeffKind::uniform_square:
            return 2.0 / 3.0;
        case CoeffKind::point_mass:
            return model.amplitude * model.amplitude;
    }
    throw std::logic_error("coeff_second_moment: unknown kind");
}

std::complex<double> sample_coeff(const SignalModel& model, RngStream& rng) {
    switch (model.kind) {
        case CoeffKind::uniform_phase: {
            const double phase = kTwoPi * rng.uniform();
            return {std::cos(phase), std::sin(phase)};
        }
        case CoeffKind::unit_real:
            return {1.0, 0.0};
        case CoeffKind::complex_gaussian:
            return {rng.gaussian(), rng.gaussian()};
        case CoeffKind::uniform_square:
            return {rng.uniform(), rng.uniform()};
        case CoeffKind::point_mass: {
            const double phase = kTwoPi * rng.uniform();
            return {model.amplitude * std::cos(phase), model.amplitude * std::sin(phase)};
        }
    }
    throw std::logic_error("sample_coeff: unknown kind");
}

AmplitudeGrid amplitude_grid(const SignalModel& model, int points) {
    switch (model.kind) {
        case CoeffKind::uniform_phase:
        case CoeffKind::unit_real:
            return {{1.0}, {1.0}};
        case CoeffKind::point_mass:
            return {{model.amplitude}, {1.0}};
        case CoeffKind::complex_gaussian:
            return pdf_grid(0.0, 9.0, points, rayleigh_pdf);
        case CoeffKind::uniform_square:
            return square_grid(points);
    }
    throw std::logic_error("amplitude_grid: unknown kind");
}

const char* coeff_kind_name(CoeffKind kind) {
    switch (kind) {
        case CoeffKind::uniform_phase: return "uniform_phase";
        case CoeffKind::unit_real: return "unit_real";
        case CoeffKind::complex_gaussian: return "complex_gaussian";
        case CoeffKind::uniform_square: return "uniform_square";
        case CoeffKind::point_mass: return "point_mass";
    }
    return "unknown";
}

CoeffKind coeff_kind_from_name(const std::string& name) {
    if (name == "uniform_phase") return CoeffKind::uniform_phase;
    if (name == "unit_real") return CoeffKind::unit_real;
    if (name == "complex_gaussian") return CoeffKind::complex_gaussian;
    if (name == "uniform_square") return CoeffKind::uniform_square;
    if (name == "point_mass") return CoeffKind::point_mass;
    throw std::invalid_argument("unknown coefficient kind: " + name);
}

}  // namespace camplab
