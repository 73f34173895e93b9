#include "camplab/quadrature.hpp"

#include <cmath>

namespace camplab {
namespace {

// Kronrod-15 abscissas on [-1, 1]; odd indices form the embedded Gauss-7 rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double kronrod;
    double error;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        resk += kWgk[i] * fsum;
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             int depth) {
    const PanelEstimate e = gk15(f, a, b);
    if (e.error <= tol || depth <= 0 || (b - a) < 1e-14 * (std::abs(a) + std::abs(b) + 1.0)) {
        return e.kronrod;
    }
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * tol, depth - 1) + adapt(f, c, b, 0.5 * tol, depth - 1);
}

constexpr double kXgl16[8] = {
    0.095012509837637440185, 0.281603550779258913230,
    0.458016777657227386342, 0.617876244402643748447,
    0.755404408355003033895, 0.865631202387831743880,
    0.944575023073232576078, 0.989400934991649932596};

constexpr double kWgl16[8] = {
    0.189450610455068496285, 0.182603415044923588867,
    0.169156519395002538189, 0.149595988816576732081,
    0.124628971255533872052, 0.095158511682492784810,
    0.062253523938647892863, 0.027152459411754094852};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    if (a > b) return -integrate(f, b, a, abs_tol, max_depth);
    return adapt(f, a, b, abs_tol, max_depth);
}

double integrate_fixed(const std::function<double(double)>& f, double a, double b,
                       int panels) {
    if (a == b) return 0.0;
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double c = lo + 0.5 * h;
        double s = 0.0;
        for (int i = 0; i < 8; ++i) {
            const double dx = 0.5 * h * kXgl16[i];
            s += kWgl16[i] * (f(c - dx) + f(c + dx));
        }
        total += 0.5 * h * s;
    }
    return total;
}

}  // namespace camplab
