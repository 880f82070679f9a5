#pragma once
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <utility>
#include <numbers>
#include <vector>

#include "l2alex/det_estimate.hpp"
#include "l2alex/errors.hpp"
#include "l2alex/laurent.hpp"

namespace l2alex {

// Roots of the polynomial part of p (the unit z^min is dropped; it does not
// affect moduli on the circle), via the companion matrix.
inline std::vector<cplx> poly_roots(const LaurentPoly& p) {
    LaurentPoly t = p.trimmed(1e-14 * std::max(1.0, p.max_abs_coeff()));
    if (t.is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
    const long long lo = t.min_exp(), hi = t.max_exp();
    const long long deg = hi - lo;
    if (deg == 0) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(deg),
                                                   static_cast<Eigen::Index>(deg));
    const cplx lead = t.coeff(hi);
    for (long long i = 0; i < deg; ++i) {
        if (i + 1 < deg) comp(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
        comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) =
            -t.coeff(lo + i) / lead;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<cplx> roots;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

struct MahlerConfig {
    double tol = 1e-10;
    int initial_panels = 64;
    int max_panels = 1 << 20;
    double circle_margin = 1e-6;  // rigor threshold on | |root| - 1 |
    double deflate_margin = 1e-3; // roots this close to the circle are split off
};

// log det of r_p on l2(Z): the Mahler measure, exp of the mean of ln|p| over
// the unit circle. Midpoint-rule quadrature with panel doubling; roots close
// to the circle are divided out first and contribute their exact Jensen
// factor max{|r|,1}, which keeps the integrand smooth. Rigorous only when no
// root is within circle_margin of the circle.
inline DetEstimate det_mahler(const LaurentPoly& p_in, const MahlerConfig& cfg = {}) {
    LaurentPoly p = p_in.trimmed(0.0);
    if (p.is_zero()) throw ZeroPolynomial("det_mahler of the zero polynomial");

    auto roots = poly_roots(p);
    bool rigorous = true;
    double near_log = 0.0;
    LaurentPoly q = p;
    std::vector<cplx> near;
    for (auto r : roots) {
        double d = std::abs(std::abs(r) - 1.0);
        if (d < cfg.circle_margin) rigorous = false;
        if (d < cfg.deflate_margin) {
            near.push_back(r);
            near_log += std::log(std::max(std::abs(r), 1.0));
        }
    }
    if (!near.empty()) {
        // synthetic division of the polynomial part by each near-circle root
        const long long lo = q.min_exp(), hi = q.max_exp();
        std::vector<cplx> c;
        for (long long e = hi; e >= lo; --e) c.push_back(q.coeff(e));
        for (auto r : near) {
            std::vector<cplx> nc;
            cplx acc{};
            for (std::size_t i = 0; i + 1 < c.size(); ++i) {
                acc = c[i] + acc * r;
                nc.push_back(acc);
            }
            c = std::move(nc);
        }
        q = LaurentPoly::zero();
        const long long deg = static_cast<long long>(c.size()) - 1;
        for (long long i = 0; i <= deg; ++i) q.add_term(deg - i, c[static_cast<std::size_t>(i)]);
        if (q.is_zero()) q = LaurentPoly::constant({1.0, 0.0});
    }

    auto mean_log = [&](int n) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            double th = 2.0 * std::numbers::pi * (j + 0.5) / n;
            double m = std::abs(q.eval(cplx{std::cos(th), std::sin(th)}));
            s += std::log(std::max(m, 1e-300));
        }
        return s / n;
    };

    int n = cfg.initial_panels;
    double prev = mean_log(n);
    double cur = prev, diff = 0.0;
    while (n < cfg.max_panels) {
        n *= 2;
        cur = mean_log(n);
        diff = std::abs(cur - prev);
        prev = cur;
        if (diff < 0.5 * cfg.tol) break;
    }
    double lv = cur + near_log;
    return DetEstimate::from_log(lv, DetMethod::MahlerQuadrature, rigorous,
                                 diff + 1e-14 * (1.0 + std::abs(lv)),
                                 rigorous ? InjectivityStatus::Proven
                                          : InjectivityStatus::AssumedHypothesisBullet);
}

// Diagnostic spectral density for r_p on l2(Z): F(lambda) is the fraction of
// the circle where |p| <= lambda. Sampled, monotone by construction.
struct SpectralDensitySamples {
    std::vector<std::pair<double, double>> grid; // (lambda, F(lambda))
};

inline SpectralDensitySamples spectral_density_samples(const LaurentPoly& p, int num_lambda = 64,
                                                       int num_theta = 4096) {
    if (p.is_zero()) throw ZeroPolynomial("spectral density of the zero polynomial");
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(num_theta));
    double hi = 0.0;
    for (int j = 0; j < num_theta; ++j) {
        double th = 2.0 * std::numbers::pi * (j + 0.5) / num_theta;
        double m = std::abs(p.eval(cplx{std::cos(th), std::sin(th)}));
        vals.push_back(m);
        hi = std::max(hi, m);
    }
    std::sort(vals.begin(), vals.end());
    SpectralDensitySamples out;
    for (int i = 0; i < num_lambda; ++i) {
        double lam = hi * (i + 1) / num_lambda;
        auto it = std::upper_bound(vals.begin(), vals.end(), lam);
        out.grid.emplace_back(lam, static_cast<double>(it - vals.begin()) / num_theta);
    }
    return out;
}

} // namespace l2alex
