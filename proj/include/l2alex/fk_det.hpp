#pragma once
#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "l2alex/det_estimate.hpp"
#include "l2alex/errors.hpp"
#include "l2alex/fox.hpp"
#include "l2alex/group_ring.hpp"
#include "l2alex/laurent.hpp"
#include "l2alex/mahler.hpp"
#include "l2alex/presentation.hpp"

namespace l2alex {

// det of r_{c.w}: translations are unitary, so only |c| contributes.
inline DetEstimate det_monomial(cplx c, const Word& /*w*/) {
    if (c == cplx{}) throw ZeroCoefficient("monomial with zero coefficient");
    return DetEstimate::from_value(std::abs(c), DetMethod::ClosedFormMonomial, true, 0.0,
                                   InjectivityStatus::Proven);
}

// det of r_{c.g - 1} = max{|c|, 1} for g of infinite order.
inline DetEstimate det_cyclic(const ModelPtr& model, cplx c, const Word& g) {
    if (!model->infinite_order(g)) throw FiniteOrderElement("det_cyclic needs an infinite-order element");
    return DetEstimate::from_value(std::max(std::abs(c), 1.0), DetMethod::ClosedFormCyclic, true, 0.0,
                                   InjectivityStatus::Proven);
}

// det of r_{1 + cg + ... + (cg)^{n-1}} = max{|c|,1}^{n-1}, by the
// multiplicativity identity applied to (cg - 1) and ((cg)^n - 1).
inline DetEstimate det_geometric_sum(const ModelPtr& model, const Word& g, long long n, cplx c) {
    if (n < 1) throw IndexOutOfRange("geometric sum needs n >= 1");
    if (!model->infinite_order(g))
        throw FiniteOrderElement("det_geometric_sum needs an infinite-order element");
    double base = std::max(std::abs(c), 1.0);
    return DetEstimate::from_value(rpow_int(base, n - 1), DetMethod::GeometricSum, true, 0.0,
                                   InjectivityStatus::Proven);
}

namespace detail {

// A single-term ring element, or nothing.
inline std::optional<std::pair<Word, cplx>> as_monomial(const RingElement& e) {
    if (e.terms().size() != 1) return std::nullopt;
    auto& [w, c] = *e.terms().begin();
    return std::make_pair(w, c);
}

} // namespace detail

// Permutation-monomial matrices have det = product of coefficient moduli.
inline std::optional<DetEstimate> try_det_monomial_matrix(const RingMatrix& a) {
    const int n = a.rows();
    if (n != a.cols()) return std::nullopt;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    double log_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        int found = -1;
        for (int j = 0; j < n; ++j) {
            if (a.at(i, j).is_zero()) continue;
            if (found >= 0) return std::nullopt;
            found = j;
        }
        if (found < 0 || used[static_cast<std::size_t>(found)]) return std::nullopt;
        auto m = detail::as_monomial(a.at(i, found));
        if (!m) return std::nullopt;
        used[static_cast<std::size_t>(found)] = true;
        log_sum += std::log(std::abs(m->second));
    }
    return DetEstimate::from_log(log_sum, DetMethod::ClosedFormMonomial, true, 0.0,
                                 InjectivityStatus::Proven);
}

// 1x1 closed forms: binomial d + c.g (det = max{|d|,|c|}) and geometric
// progressions a0 (1 + cg + ... + (cg)^{n-1}), possibly times a monomial
// (factored out first; translations are unitary, scalars multiply the det).
inline std::optional<DetEstimate> detail_det_closed_elem(const ModelPtr& model, const RingElement& e,
                                                         bool allow_factor) {
    if (e.is_zero()) return std::nullopt;
    if (auto m = detail::as_monomial(e)) return det_monomial(m->second, m->first);
    if (model->kind() == GroupModel::Kind::Finite) return std::nullopt;

    cplx a0 = e.trace();
    if (a0 == cplx{} && allow_factor) {
        auto& [w0, c0] = *e.terms().begin();
        RingElement inv = RingElement::from_word(model, model->invert(w0), cplx{1.0, 0.0} / c0);
        auto inner = detail_det_closed_elem(model, inv * e, false);
        if (!inner) return std::nullopt;
        return DetEstimate::from_value(inner->value * std::abs(c0), inner->method, inner->rigorous,
                                       inner->error_bound, inner->injectivity);
    }
    if (a0 == cplx{}) return std::nullopt;
    if (e.terms().size() == 2) {
        for (auto& [w, c] : e.terms())
            if (!w.is_identity())
                return DetEstimate::from_value(std::max(std::abs(a0), std::abs(c)),
                                               DetMethod::ClosedFormCyclic, true, 0.0,
                                               InjectivityStatus::Proven);
    }
    // geometric: terms a0 (c g)^k, k = 0..n-1
    const long long n = static_cast<long long>(e.terms().size());
    for (auto& [g, c1] : e.terms()) {
        if (g.is_identity()) continue;
        cplx ratio = c1 / a0;
        Word pw = Word::identity();
        double dev = 0.0;
        bool ok = true;
        cplx expect{1.0, 0.0};
        for (long long k = 0; k < n && ok; ++k) {
            cplx ck = e.coeff(pw);
            if (ck == cplx{}) {
                ok = false;
                break;
            }
            double d = std::abs(ck / a0 - expect) / std::max(1.0, std::abs(expect));
            if (d > 1e-9) ok = false;
            dev = std::max(dev, d);
            pw = model->multiply(pw, g);
            expect *= ratio;
        }
        if (ok) {
            double base = std::max(std::abs(ratio), 1.0);
            double v = std::abs(a0) * rpow_int(base, n - 1);
            return DetEstimate{v, std::log(v), DetMethod::GeometricSum, true,
                               dev * static_cast<double>(n), InjectivityStatus::Proven};
        }
    }
    return std::nullopt;
}

inline std::optional<DetEstimate> try_det_closed_1x1(const RingMatrix& a) {
    if (a.rows() != 1 || a.cols() != 1) return std::nullopt;
    return detail_det_closed_elem(a.model(), a.at(0, 0), true);
}

struct TraceSeriesConfig {
    int max_order = 400;
    double tol = 1e-8;
};

struct TraceSeriesDiag {
    double w_norm = 0.0;
    int order = 0;
    bool graded_zero = false; // traces vanish by the phi-grading argument
    std::vector<cplx> traces;
};

// log det A = log det M + Re sum_{k>=1} -tr(W^k)/k for a factoring
// A = M (I - W) with M permutation-monomial and ||W||_1 < 1. The engine
// searches factorings by column permutation, taking per row the
// largest-coefficient monomial of the chosen entry as pivot. The tail is
// bounded by ||W||_1^{K+1} / ((K+1)(1 - ||W||_1)).
inline DetEstimate det_trace_series(const RingMatrix& a, const PhiGrading* grading = nullptr,
                                    const TraceSeriesConfig& cfg = {},
                                    TraceSeriesDiag* diag = nullptr) {
    const int n = a.rows();
    if (n != a.cols()) throw IndexOutOfRange("trace series needs a square matrix");
    const ModelPtr& model = a.model();
    if (!model) throw ModelUnsupported("no group model attached");

    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;

    double best_norm = -1.0;
    RingMatrix best_w;
    double best_logdet_m = 0.0;
    std::vector<int> p = perm;
    std::sort(p.begin(), p.end());
    do {
        bool valid = true;
        double logdet_m = 0.0;
        RingMatrix b(model, n, n);
        for (int i = 0; i < n && valid; ++i) {
            const RingElement& e = a.at(i, p[static_cast<std::size_t>(i)]);
            if (e.is_zero()) {
                valid = false;
                break;
            }
            Word gw;
            cplx gc{};
            double mx = -1.0;
            for (auto& [w, c] : e.terms())
                if (std::abs(c) > mx) {
                    mx = std::abs(c);
                    gw = w;
                    gc = c;
                }
            logdet_m += std::log(mx);
            RingElement inv_pivot = RingElement::from_word(model, model->invert(gw), cplx{1.0, 0.0} / gc);
            for (int j = 0; j < n; ++j)
                b.at(p[static_cast<std::size_t>(i)], j) = inv_pivot * a.at(i, j);
        }
        if (!valid) continue;
        RingMatrix w = RingMatrix::identity(model, n) - b;
        double nw = w.l1_norm();
        if (best_norm < 0.0 || nw < best_norm) {
            best_norm = nw;
            best_w = w;
            best_logdet_m = logdet_m;
        }
    } while (std::next_permutation(p.begin(), p.end()));

    if (best_norm < 0.0 || best_norm >= 1.0)
        throw NoDominantFactoring("no factoring with ||W||_1 < 1 (got " + std::to_string(best_norm) + ")");

    auto tail = [&](int K) {
        return std::pow(best_norm, K + 1) / ((K + 1) * (1.0 - best_norm));
    };
    int K = 1;
    while (K < cfg.max_order && tail(K) > cfg.tol) ++K;

    bool graded_zero = false;
    if (grading) {
        bool all_pos = true, all_neg = true, any = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (auto& [w, c] : best_w.at(i, j).terms()) {
                    any = true;
                    long long wt = grading->weight(w);
                    all_pos = all_pos && wt > 0;
                    all_neg = all_neg && wt < 0;
                }
        graded_zero = !any || all_pos || all_neg;
    }

    cplx series{};
    std::vector<cplx> traces;
    if (graded_zero) {
        // products of strictly positively (or negatively) graded monomials
        // never hit the unit element, so every trace vanishes exactly
        traces.assign(static_cast<std::size_t>(K), cplx{});
    } else {
        RingMatrix pw = best_w;
        for (int k = 1; k <= K; ++k) {
            cplx t = pw.trace();
            traces.push_back(t);
            series += -t / static_cast<double>(k);
            if (k < K) pw = pw * best_w;
        }
    }

    if (diag) {
        diag->w_norm = best_norm;
        diag->order = K;
        diag->graded_zero = graded_zero;
        diag->traces = traces;
    }
    double lv = best_logdet_m + series.real();
    return DetEstimate::from_log(lv, DetMethod::TraceSeries, true, tail(K), InjectivityStatus::Proven);
}

// Finite Cayley-ball compression: restrict r_A to span(B_R)^k, take the mean
// of ln singular values clamped below at eps. Heuristic; never rigorous.
// error_bound reports the drift against the radius R-1 compression.
inline DetEstimate det_truncation(const RingMatrix& a, int radius, double eps = 1e-9,
                                  std::size_t ball_cap = 4000) {
    const int k = a.rows();
    if (k != a.cols()) throw IndexOutOfRange("truncation needs a square matrix");
    const ModelPtr& model = a.model();
    if (!model || model->kind() == GroupModel::Kind::Finite)
        throw ModelUnsupported("truncation needs an infinite model with solvable word problem");

    auto mean_log = [&](int r) {
        auto ballv = model->ball(r, ball_cap);
        std::map<Word, int> index;
        for (std::size_t i = 0; i < ballv.size(); ++i) index[ballv[i]] = static_cast<int>(i);
        const int nb = static_cast<int>(ballv.size());
        Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(nb * k, nb * k);
        for (int c = 0; c < k; ++c)
            for (int j = 0; j < k; ++j)
                for (auto& [g, coeff] : a.at(c, j).terms())
                    for (int b = 0; b < nb; ++b) {
                        Word img = model->multiply(ballv[static_cast<std::size_t>(b)], g);
                        auto it = index.find(img);
                        if (it == index.end()) continue;
                        mat(c * nb + b, j * nb + it->second) += coeff;
                    }
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat);
        double s = 0.0;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            s += std::log(std::max(svd.singularValues()(i), eps));
        return s / (nb * k);
    };

    double lv = mean_log(radius);
    double lv_prev = radius > 1 ? mean_log(radius - 1) : lv;
    return DetEstimate::from_log(lv, DetMethod::TruncationHeuristic, false, std::abs(lv - lv_prev),
                                 InjectivityStatus::AssumedHypothesisBullet);
}

// FK determinant of a matrix over Z via the Mahler measure of the symbol
// determinant.
inline DetEstimate det_mahler_matrix(const RingMatrix& a, const MahlerConfig& cfg = {}) {
    const ModelPtr& model = a.model();
    if (!model || model->kind() != GroupModel::Kind::FreeAbelian || model->num_generators() != 1)
        throw ModelUnsupported("Mahler engine needs the FreeAbelian(1) model");
    std::vector<std::vector<LaurentPoly>> m(static_cast<std::size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            m[static_cast<std::size_t>(i)].push_back(symbol_of(a.at(i, j)));
    return det_mahler(detail::laurent_det(m), cfg);
}

} // namespace l2alex
