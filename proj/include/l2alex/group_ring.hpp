#pragma once
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "l2alex/errors.hpp"
#include "l2alex/group_model.hpp"
#include "l2alex/presentation.hpp"
#include "l2alex/word.hpp"

namespace l2alex {

using cplx = std::complex<double>;

// Integer power by squaring; exact on dyadic bases, unlike pow via exp/log.
inline cplx cpow_int(cplx base, long long e) {
    if (e == 0) return {1.0, 0.0};
    if (e < 0) {
        base = cplx{1.0, 0.0} / base;
        e = -e;
    }
    cplx r{1.0, 0.0};
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline double rpow_int(double base, long long e) {
    if (e < 0) return 1.0 / rpow_int(base, -e);
    double r = 1.0;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// A finitely supported element of the complex group ring over a GroupModel.
// Keys are stored in normal form; term order is the lexicographic syllable
// order, so iteration, traces and serializations are reproducible.
class RingElement {
public:
    RingElement() = default;
    explicit RingElement(ModelPtr model) : model_(std::move(model)) {}

    static RingElement zero(ModelPtr model) { return RingElement(std::move(model)); }

    static RingElement from_word(ModelPtr model, const Word& w, cplx c = {1.0, 0.0}) {
        RingElement e(std::move(model));
        e.add_term(e.model_->normalize(w), c);
        return e;
    }

    static RingElement one(ModelPtr model) { return from_word(std::move(model), Word::identity()); }

    const ModelPtr& model() const { return model_; }
    const std::map<Word, cplx>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }

    void add_term(const Word& normal_form, cplx c) {
        if (c == cplx{}) return;
        auto it = terms_.find(normal_form);
        if (it == terms_.end()) {
            terms_.emplace(normal_form, c);
        } else {
            it->second += c;
            if (it->second == cplx{}) terms_.erase(it);
        }
    }

    cplx coeff(const Word& w) const {
        auto it = terms_.find(model_->normalize(w));
        return it == terms_.end() ? cplx{} : it->second;
    }

    // Coefficient of the unit element: the von Neumann trace.
    cplx trace() const {
        auto it = terms_.find(Word::identity());
        return it == terms_.end() ? cplx{} : it->second;
    }

    double l1_norm() const {
        double n = 0.0;
        for (auto& [w, c] : terms_) n += std::abs(c);
        return n;
    }

    RingElement operator+(const RingElement& o) const {
        check_model(o);
        RingElement r = *this;
        for (auto& [w, c] : o.terms_) r.add_term(w, c);
        return r;
    }

    RingElement operator-(const RingElement& o) const { return *this + o.scaled({-1.0, 0.0}); }

    RingElement scaled(cplx s) const {
        RingElement r(model_);
        for (auto& [w, c] : terms_) r.add_term(w, s * c);
        return r;
    }

    RingElement operator*(const RingElement& o) const {
        check_model(o);
        RingElement r(model_);
        for (auto& [u, cu] : terms_)
            for (auto& [v, cv] : o.terms_) r.add_term(model_->multiply(u, v), cu * cv);
        return r;
    }

    bool operator==(const RingElement& o) const { return terms_ == o.terms_; }

    // psi_t: c.g -> c t^{phi(g)} g; a ring homomorphism for t != 0.
    RingElement apply_psi(cplx t, const PhiGrading& phi) const {
        if (t == cplx{}) throw ZeroParameter("psi_t requires t != 0");
        RingElement r(model_);
        for (auto& [w, c] : terms_) r.add_term(w, c * cpow_int(t, phi.weight(w)));
        return r;
    }

    // Phi_{rho^x} with rho = exp(2 phi); identical to psi_{e^x}.
    RingElement apply_phi_rho(double x, const PhiGrading& phi) const {
        RingElement r(model_);
        for (auto& [w, c] : terms_) r.add_term(w, c * std::exp(x * static_cast<double>(phi.weight(w))));
        return r;
    }

    // eta_c for |c| = 1: c.g -> c^{phi(g)} g; trace preserving.
    RingElement apply_eta(cplx c, const PhiGrading& phi) const {
        if (std::abs(std::abs(c) - 1.0) > 1e-9) throw NotUnitModulus("eta_c requires |c| = 1");
        RingElement r(model_);
        for (auto& [w, co] : terms_) r.add_term(w, co * cpow_int(c, phi.weight(w)));
        return r;
    }

private:
    void check_model(const RingElement& o) const {
        if (model_ != o.model_) throw ModelMismatch("ring elements over different models");
    }

    ModelPtr model_;
    std::map<Word, cplx> terms_;
};

// Translate an element whose words live over an external alphabet (e.g. the
// free group on a presentation's generators) into the model's normal forms.
inline RingElement push_to_model(const ModelPtr& model, const RingElement& free_elem) {
    RingElement r(model);
    for (auto& [w, c] : free_elem.terms()) r.add_term(model->translate(w), c);
    return r;
}

class RingMatrix {
public:
    RingMatrix() = default;
    RingMatrix(ModelPtr model, int rows, int cols)
        : model_(std::move(model)), rows_(rows), cols_(cols),
          entries_(static_cast<std::size_t>(rows * cols), RingElement::zero(model_)) {}

    static RingMatrix identity(ModelPtr model, int n) {
        RingMatrix m(std::move(model), n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = RingElement::one(m.model_);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const ModelPtr& model() const { return model_; }

    RingElement& at(int i, int j) { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
    const RingElement& at(int i, int j) const { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }

    RingMatrix operator*(const RingMatrix& o) const {
        if (cols_ != o.rows_ || model_ != o.model_) throw ModelMismatch("matrix product shape/model");
        RingMatrix r(model_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < o.cols_; ++j) {
                RingElement acc = RingElement::zero(model_);
                for (int k = 0; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
                r.at(i, j) = acc;
            }
        return r;
    }

    RingMatrix operator+(const RingMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || model_ != o.model_)
            throw ModelMismatch("matrix sum shape/model");
        RingMatrix r(model_, rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + o.entries_[i];
        return r;
    }

    RingMatrix operator-(const RingMatrix& o) const { return *this + o.scaled({-1.0, 0.0}); }

    RingMatrix scaled(cplx s) const {
        RingMatrix r = *this;
        for (auto& e : r.entries_) e = e.scaled(s);
        return r;
    }

    cplx trace() const {
        cplx t{};
        for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i).trace();
        return t;
    }

    // max over rows of the sum of entry l1 norms; an upper bound for the
    // operator norm of right multiplication.
    double l1_norm() const {
        double m = 0.0;
        for (int i = 0; i < rows_; ++i) {
            double row = 0.0;
            for (int j = 0; j < cols_; ++j) row += at(i, j).l1_norm();
            m = std::max(m, row);
        }
        return m;
    }

    template <class F> RingMatrix map(F&& f) const {
        RingMatrix r = *this;
        for (auto& e : r.entries_) e = f(e);
        return r;
    }

    RingMatrix apply_psi(cplx t, const PhiGrading& phi) const {
        return map([&](const RingElement& e) { return e.apply_psi(t, phi); });
    }
    RingMatrix apply_phi_rho(double x, const PhiGrading& phi) const {
        return map([&](const RingElement& e) { return e.apply_phi_rho(x, phi); });
    }
    RingMatrix apply_eta(cplx c, const PhiGrading& phi) const {
        return map([&](const RingElement& e) { return e.apply_eta(c, phi); });
    }

private:
    ModelPtr model_;
    int rows_ = 0, cols_ = 0;
    std::vector<RingElement> entries_;
};

inline RingMatrix push_to_model(const ModelPtr& model, const RingMatrix& m) {
    RingMatrix r(model, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = push_to_model(model, m.at(i, j));
    return r;
}

} // namespace l2alex
