#include "fkpp/spectral.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "fkpp/gamma.hpp"

namespace fkpp::ml {

namespace {

using cplxd = std::complex<double>;

// Coefficients of W_{-alpha,rho-alpha}(-r) = sum_n c_n (-r)^n / n!,
// c_n = 1/Gamma(rho - alpha(n+1)). Independent of r, so shared per table.
std::vector<long double> series_coeffs(double alpha, double rho, int n_max) {
    std::vector<long double> c(n_max);
    for (int n = 0; n < n_max; ++n)
        c[n] = rgammal((long double)(rho - alpha * (n + 1)));
    return c;
}

// Alternating series with factorial decay. Returns false when the measured
// cancellation exceeds the long double budget.
bool spectral_series(const std::vector<long double>& c, double r, double* out) {
    long double sum = 0.0L, abs_sum = 0.0L;
    long double pw = 1.0L;  // (-r)^n / n!
    long double tail1 = 1e30L, tail2 = 1e30L;
    size_t n = 0;
    for (; n < c.size(); ++n) {
        long double term = pw * c[n];
        sum += term;
        long double at = std::fabs(term);
        abs_sum += at;
        if (n > 8 && std::max({at, tail1, tail2}) < 1e-21L * std::max(abs_sum, 1e-30L))
            break;
        tail2 = tail1;
        tail1 = at;
        pw *= -(long double)r / (long double)(n + 1);
    }
    if (n >= c.size()) return false;  // did not settle within the budget
    long double cond = std::fabs(sum) > 0 ? abs_sum / std::fabs(sum) : 1e30L;
    *out = (double)sum;
    return cond < 2e5L && std::isfinite(*out);
}

// Parabolic contour through the saddle of s - r s^alpha:
//   K(r) = (1/2 pi i) int e^{s - r s^alpha} s^{alpha-rho} ds
//        = (h/pi) sum'' Im f(u_j)   (conjugate fold onto u >= 0).
// mu at the saddle keeps the integrand peak at the same scale as K itself,
// so double precision keeps relative accuracy.
double spectral_contour(double alpha, double rho, double r, int n_half) {
    double saddle = std::pow(alpha * r, 1.0 / (1.0 - alpha));
    double mu = std::max(4.0, saddle);
    double u_max = std::sqrt(1.0 + 52.0 / mu);
    // e^{-r s^alpha} can fight the e^s decay along the arms; extend u_max past
    // the point where mu u^2 dominates r mu^alpha u^{2 alpha}
    double grow = r * std::pow(mu, alpha);
    if (grow > mu) {
        double u2 = std::pow(2.0 * grow / mu, 1.0 / (1.0 - alpha));
        u_max = std::max(u_max, std::sqrt(u2 + 52.0 / mu));
    }
    const double h = u_max / n_half;
    double acc = 0.0;
    for (int j = 0; j <= n_half; ++j) {
        double u = j * h;
        cplxd one_iu(1.0, u);
        cplxd s = mu * one_iu * one_iu;
        cplxd ds(-2.0 * mu * u, 2.0 * mu);
        cplxd ls = std::log(s);
        cplxd f = std::exp(s - r * std::exp(alpha * ls) + (alpha - rho) * ls) * ds;
        double w = (j == 0 || j == n_half) ? 0.5 : 1.0;
        acc += w * f.imag();
    }
    return acc * h / M_PI;
}

double contour_value(double alpha, double rho, double r) {
    double coarse = spectral_contour(alpha, rho, r, 160);
    double fine = spectral_contour(alpha, rho, r, 320);
    if (std::fabs(fine - coarse) > 1e-11 * std::max(std::fabs(fine), 1e-18)) {
        double finer = spectral_contour(alpha, rho, r, 640);
        if (std::fabs(finer - fine) > 1e-10 * std::max(std::fabs(finer), 1e-18))
            throw accuracy_error("spectral_density_value: contour did not settle",
                                 std::fabs(finer - fine));
        return finer;
    }
    return fine;
}

// M-Wright density M_alpha(r) through the Kanter integral of the one-sided
// stable law:
//   M_alpha(r) = r^{alpha/(1-alpha)} / ((1-alpha) pi)
//                * int_0^pi a(phi) exp(-r^{1/(1-alpha)} a(phi)) dphi,
//   a(phi) = sin((1-alpha) phi) sin(alpha phi)^{alpha/(1-alpha)}
//            / sin(phi)^{1/(1-alpha)}.
// Positive integrand, no cancellation; the workhorse away from r = 0.
double mwright_kanter(double alpha, double r) {
    const double c = std::pow(r, 1.0 / (1.0 - alpha));
    const double ea = alpha / (1.0 - alpha);
    auto g = [&](double phi) {
        if (phi <= 0.0 || phi >= M_PI) {
            if (phi <= 0.0) {
                double a0 = (1.0 - alpha) * std::pow(alpha, ea);
                return a0 * std::exp(-c * a0);
            }
            return 0.0;  // a -> infinity at pi, integrand underflows
        }
        double ln_a = std::log(std::sin((1.0 - alpha) * phi)) +
                      ea * std::log(std::sin(alpha * phi)) -
                      (1.0 + ea) * std::log(std::sin(phi));
        if (ln_a > 690.0) return 0.0;
        double a = std::exp(ln_a);
        double e = c * a;
        if (e > 745.0) return 0.0;
        return a * std::exp(-e);
    };
    double a0 = (1.0 - alpha) * std::pow(alpha, ea);
    double scale = a0 * std::exp(-c * a0);  // integrand value at phi = 0
    double integral =
        adaptive_simpson(g, 0.0, M_PI, 1e-13 * std::max(scale, 1e-280) * M_PI);
    return std::pow(r, ea) / ((1.0 - alpha) * M_PI) * integral;
}

}  // namespace

double spectral_density_value(double alpha, double rho, double r) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw validation_error("spectral_density_value: alpha must be in (0, 1)");
    if (!(r >= 0.0)) throw validation_error("spectral_density_value: r must be >= 0");
    if (r == 0.0) return rgamma(rho - alpha);
    static thread_local double cached_alpha = -1, cached_rho = -1;
    static thread_local std::vector<long double> coeffs;
    if (alpha != cached_alpha || rho != cached_rho) {
        coeffs = series_coeffs(alpha, rho, 700);
        cached_alpha = alpha;
        cached_rho = rho;
    }
    double v;
    if (spectral_series(coeffs, r, &v)) return v;
    return contour_value(alpha, rho, r);
}

double spectral_default_r_max(double alpha) {
    double b = (1.0 - alpha) * std::pow(alpha, alpha / (1.0 - alpha));
    return std::pow(45.0 / b, 1.0 - alpha);
}

double SpectralTable::forward_transform(double x) const {
    if (atom) return atom->weight * std::exp(-atom->location * x);
    const auto& r = r_grid;
    const auto& k = k_values;
    double acc = 0.0;
    for (Eigen::Index i = 0; i + 1 < r.size(); ++i) {
        double h = r[i + 1] - r[i];
        acc += 0.5 * h * (k[i] * std::exp(-r[i] * x) + k[i + 1] * std::exp(-r[i + 1] * x));
    }
    return acc;
}

double SpectralTable::tilted_mean(double s) const {
    if (atom) return atom->location;
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i + 1 < r_grid.size(); ++i) {
        double h = r_grid[i + 1] - r_grid[i];
        double a = k_values[i] * std::exp(-r_grid[i] * s);
        double b = k_values[i + 1] * std::exp(-r_grid[i + 1] * s);
        num += 0.5 * h * (a * r_grid[i] + b * r_grid[i + 1]);
        den += 0.5 * h * (a + b);
    }
    return den > 0 ? num / den : 0.0;
}

void SpectralTable::to_csv(std::ostream& os) const {
    os << "# spectral density K_{alpha,rho}, alpha=" << order.alpha
       << " rho=" << order.rho << "\n";
    if (atom) {
        os << "# atom location=" << atom->location << " weight=" << atom->weight << "\n";
    }
    os << "r,K\n";
    for (Eigen::Index i = 0; i < r_grid.size(); ++i)
        os << r_grid[i] << "," << k_values[i] << "\n";
}

SpectralTable ml_spectral_density(const MLOrder& order, double r_max, int n_points) {
    SpectralTable table{order, {}, {}, 0.0, std::nullopt, 0.0, 0.0};
    if (order.alpha == 1.0) {
        // e^{-x} is its own exponential with rate 1
        table.atom = SpectralTable::Atom{1.0, 1.0};
        table.total_mass = 1.0;
        return table;
    }
    const double alpha = order.alpha, rho = order.rho;
    if (r_max <= 0.0) r_max = spectral_default_r_max(alpha);
    if (n_points <= 0) n_points = 200000;
    if (n_points < 64) throw validation_error("ml_spectral_density: n_points too small");

    const double r_min = 1e-8;
    Eigen::ArrayXd r(n_points), k(n_points);
    r[0] = 0.0;
    double q = std::log(r_max / r_min) / (n_points - 2);
    for (int i = 1; i < n_points; ++i) r[i] = r_min * std::exp(q * (i - 1));

    auto coeffs = series_coeffs(alpha, rho, 700);
    double min_raw = 0.0;
    for (int i = 0; i < n_points; ++i) {
        double v;
        if (r[i] == 0.0)
            v = rgamma(rho - alpha);
        else if (!spectral_series(coeffs, r[i], &v))
            v = contour_value(alpha, rho, r[i]);
        min_raw = std::min(min_raw, v);
        k[i] = v;
    }
    table.min_raw_density = min_raw;
    // complete monotonicity gate: tiny negatives are contour noise and get
    // clipped; anything larger is a real failure
    if (min_raw < -1e-12)
        throw accuracy_error("ml_spectral_density: negative spectral density", -min_raw);
    k = k.max(0.0);

    table.r_grid = std::move(r);
    table.k_values = std::move(k);
    table.total_mass = table.forward_transform(0.0);

    // forward-transform validation on x in [0, 100]
    double worst = std::fabs(table.total_mass - rgamma(rho)) * std::tgamma(rho);
    for (int i = 0; i <= 40; ++i) {
        double x = std::pow(10.0, -2.0 + 4.0 * i / 40.0);
        if (x > 100.0) break;
        double got = table.forward_transform(x);
        double want = eval_negreal(alpha, rho, x);
        worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
    }
    table.max_forward_residual = worst;
    if (worst > 1e-8)
        throw accuracy_error("ml_spectral_density: forward Laplace gate failed", worst);
    return table;
}

}  // namespace fkpp::ml
