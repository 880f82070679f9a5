#pragma once
#include <cmath>
#include <complex>
#include <map>
#include <string>

#include "l2alex/errors.hpp"
#include "l2alex/group_ring.hpp"

namespace l2alex {

// A finitely supported Laurent polynomial with complex coefficients,
// exponent -> coefficient, no zero coefficients stored.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly zero() { return {}; }
    static LaurentPoly constant(cplx c) {
        LaurentPoly p;
        p.add_term(0, c);
        return p;
    }
    static LaurentPoly monomial(long long e, cplx c = {1.0, 0.0}) {
        LaurentPoly p;
        p.add_term(e, c);
        return p;
    }

    const std::map<long long, cplx>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    void add_term(long long e, cplx c) {
        if (c == cplx{}) return;
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            coeffs_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == cplx{}) coeffs_.erase(it);
        }
    }

    cplx coeff(long long e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? cplx{} : it->second;
    }

    long long min_exp() const { return coeffs_.begin()->first; }
    long long max_exp() const { return coeffs_.rbegin()->first; }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [e, c] : o.coeffs_) r.add_term(e, c);
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const { return *this + o.scaled({-1.0, 0.0}); }

    LaurentPoly scaled(cplx s) const {
        LaurentPoly r;
        for (auto& [e, c] : coeffs_) r.add_term(e, s * c);
        return r;
    }

    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r;
        for (auto& [e1, c1] : coeffs_)
            for (auto& [e2, c2] : o.coeffs_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }

    bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }

    cplx eval(cplx z) const {
        cplx r{};
        for (auto& [e, c] : coeffs_) r += c * cpow_int(z, e);
        return r;
    }

    // p*(z): conjugate coefficients, exponents negated (the adjoint symbol).
    LaurentPoly conj_reversed() const {
        LaurentPoly r;
        for (auto& [e, c] : coeffs_) r.add_term(-e, std::conj(c));
        return r;
    }

    // Scales z^k coefficients by s^k; the symbol of Phi_{rho^x} r_p on l2(Z).
    LaurentPoly coeff_scaled(double s) const {
        LaurentPoly r;
        for (auto& [e, c] : coeffs_) r.add_term(e, c * rpow_int(s, e));
        return r;
    }

    LaurentPoly trimmed(double eps) const {
        LaurentPoly r;
        for (auto& [e, c] : coeffs_)
            if (std::abs(c) > eps) r.add_term(e, c);
        return r;
    }

    // Canonical representative: lowest exponent 0, leading coefficient with
    // positive real part.
    LaurentPoly normalized(double eps = 1e-9) const {
        LaurentPoly t = trimmed(eps);
        if (t.is_zero()) return t;
        const long long lo = t.min_exp();
        LaurentPoly r;
        for (auto& [e, c] : t.coeffs_) r.add_term(e - lo, c);
        if (r.coeffs_.rbegin()->second.real() < 0) r = r.scaled({-1.0, 0.0});
        return r;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (auto& [e, c] : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

private:
    std::map<long long, cplx> coeffs_;
};

// Exact quotient a/b by long division from the top degree; throws when a
// remainder survives beyond the tolerance.
inline LaurentPoly laurent_div_exact(const LaurentPoly& a, const LaurentPoly& b, double tol = 1e-9) {
    LaurentPoly bt = b.trimmed(0.0);
    if (bt.is_zero()) throw ZeroPolynomial("division by zero polynomial");
    double scale = std::max(1.0, a.max_abs_coeff());
    LaurentPoly rem = a, q;
    const cplx lead = bt.coeff(bt.max_exp());
    long long guard = 4 * (1 + (a.is_zero() ? 0 : a.max_exp() - a.min_exp()) +
                           (bt.max_exp() - bt.min_exp()));
    while (!rem.trimmed(tol * scale).is_zero()) {
        if (guard-- < 0) throw NotDivisible("polynomial division leaves a remainder");
        LaurentPoly rt = rem.trimmed(tol * scale);
        cplx f = rt.coeff(rt.max_exp()) / lead;
        long long e = rt.max_exp() - bt.max_exp();
        q.add_term(e, f);
        rem = rt - bt * LaurentPoly::monomial(e, f);
    }
    return q;
}

// Equality up to a unit +- t^k, after trimming numeric noise.
inline bool equal_up_to_units(const LaurentPoly& a, const LaurentPoly& b, double tol = 1e-8) {
    LaurentPoly na = a.normalized(tol), nb = b.normalized(tol);
    if (na.is_zero() || nb.is_zero()) return na.is_zero() == nb.is_zero();
    for (double sign : {1.0, -1.0}) {
        bool ok = true;
        for (auto& [e, c] : na.coeffs())
            if (std::abs(c - nb.coeff(e) * sign) > tol) {
                ok = false;
                break;
            }
        if (ok && na.coeffs().size() == nb.coeffs().size()) return true;
    }
    return false;
}

// The Fourier symbol of an element of the group ring of Z = FreeAbelian(1).
inline LaurentPoly symbol_of(const RingElement& e) {
    if (e.model()->kind() != GroupModel::Kind::FreeAbelian || e.model()->num_generators() != 1)
        throw ModelUnsupported("symbol extraction needs the FreeAbelian(1) model");
    LaurentPoly p;
    for (auto& [w, c] : e.terms()) {
        long long exp = 0;
        if (!w.is_identity()) exp = w.syllables()[0].exp;
        p.add_term(exp, c);
    }
    return p;
}

inline RingElement element_of(const ModelPtr& z_model, const LaurentPoly& p) {
    RingElement e(z_model);
    for (auto& [exp, c] : p.coeffs()) e.add_term(Word::gen(0, exp), c);
    return e;
}

} // namespace l2alex
