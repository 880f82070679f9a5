#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <vector>

#include "l2alex/errors.hpp"
#include "l2alex/fox.hpp"
#include "l2alex/group_ring.hpp"
#include "l2alex/laurent.hpp"
#include "l2alex/mahler.hpp"

namespace l2alex {

// A finite weighted Hilbert chain complex over a Finite or FreeAbelian(1)
// model. diffs[n-1] holds c_n : C_n -> C_{n-1} in the row-vector convention,
// so the chain condition reads c_{n+1} * c_n = 0 as a matrix product.
struct ChainComplexW {
    ModelPtr model;
    PhiGrading phi;         // rho = exp(2 phi)
    std::vector<int> ranks; // ranks[n] = rank of C_n
    std::vector<RingMatrix> diffs;

    int top() const { return static_cast<int>(ranks.size()) - 1; }

    void validate() const {
        if (!model) throw ModelUnsupported("chain complex without model");
        if (model->kind() != GroupModel::Kind::Finite && !(model->kind() == GroupModel::Kind::FreeAbelian && model->num_generators() == 1))
            throw ModelUnsupported("only Finite and Z models are supported");
        if (static_cast<int>(phi.weights.size()) != model->num_generators())
            throw ModelMismatch("grading size does not match model");
        if (model->kind() == GroupModel::Kind::Finite)
            for (auto w : phi.weights)
                if (w != 0) throw ModelMismatch("a finite group forces the trivial weight");
        if (ranks.empty() || diffs.size() + 1 != ranks.size())
            throw ModelMismatch("need one differential per positive degree");
        for (int n = 1; n <= top(); ++n) {
            const RingMatrix& c = diffs[static_cast<std::size_t>(n - 1)];
            if (c.rows() != ranks[static_cast<std::size_t>(n)] ||
                c.cols() != ranks[static_cast<std::size_t>(n - 1)])
                throw ModelMismatch("differential shape at degree " + std::to_string(n));
        }
        for (int n = 1; n < top(); ++n) {
            RingMatrix prod = diffs[static_cast<std::size_t>(n)] * diffs[static_cast<std::size_t>(n - 1)];
            for (int i = 0; i < prod.rows(); ++i)
                for (int j = 0; j < prod.cols(); ++j)
                    if (!prod.at(i, j).is_zero())
                        throw ModelMismatch("c^2 != 0 at degree " + std::to_string(n + 1));
        }
    }
};

namespace detail {

// Rank of r_A on l2(G)^k for finite G: complex rank of the right-regular
// representation matrix.
inline int finite_rank(const RingMatrix& a) {
    const ModelPtr& model = a.model();
    const int ng = model->order();
    std::vector<Word> elems;
    std::map<Word, int> index;
    for (int i = 0; i < ng; ++i) {
        Word w = model->normalize(Word::gen(i, 1));
        index[w] = static_cast<int>(elems.size());
        elems.push_back(w);
    }
    const int rows = a.rows(), cols = a.cols();
    if (rows == 0 || cols == 0) return 0;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows * ng, cols * ng);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            for (auto& [g, c] : a.at(i, j).terms())
                for (int b = 0; b < ng; ++b) {
                    int bi = index.at(model->multiply(elems[static_cast<std::size_t>(b)], g));
                    m(i * ng + b, j * ng + bi) += c;
                }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    qr.setThreshold(1e-9);
    return static_cast<int>(qr.rank());
}

// Generic rank of a Laurent-polynomial matrix over the function field C(z),
// by fraction-free elimination. scale tracks coefficient growth so the zero
// test stays relative.
inline int symbolic_rank(std::vector<std::vector<LaurentPoly>> m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    double scale = 1.0;
    for (auto& row : m)
        for (auto& e : row) scale = std::max(scale, e.max_abs_coeff());
    auto is_zero = [&](const LaurentPoly& p) { return p.trimmed(1e-7 * scale).is_zero(); };

    int rank = 0;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        double best = 0.0;
        for (int i = row; i < rows; ++i) {
            double v = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)].max_abs_coeff();
            if (!is_zero(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]) && v > best) {
                best = v;
                piv = i;
            }
        }
        if (piv < 0) continue;
        std::swap(m[static_cast<std::size_t>(row)], m[static_cast<std::size_t>(piv)]);
        const LaurentPoly p = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        for (int i = row + 1; i < rows; ++i) {
            const LaurentPoly f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (is_zero(f)) continue;
            for (int j = col; j < cols; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * p -
                    m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] * f;
        }
        scale *= std::max(1.0, best);
        ++rank;
        ++row;
    }
    return rank;
}

inline std::vector<std::vector<LaurentPoly>> symbol_matrix(const RingMatrix& a) {
    std::vector<std::vector<LaurentPoly>> m(static_cast<std::size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            m[static_cast<std::size_t>(i)].push_back(symbol_of(a.at(i, j)));
    return m;
}

inline int z_rank(const RingMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return symbolic_rank(symbol_matrix(a));
}

inline int weighted_rank(const ChainComplexW& c, const RingMatrix& a) {
    if (c.model->kind() == GroupModel::Kind::Finite) return finite_rank(a);
    return z_rank(a);
}

} // namespace detail

// b_{rho,n} = dim ker c_n - dim im c_{n+1}. The weight deformation is an
// isomorphism of chain complexes, so the numbers are rho-independent here.
inline double weighted_betti(const ChainComplexW& c, int n) {
    c.validate();
    if (n < 0 || n > c.top()) return 0.0;
    const double kn = c.ranks[static_cast<std::size_t>(n)];
    double r_n = 0.0, r_up = 0.0;
    const bool finite = c.model->kind() == GroupModel::Kind::Finite;
    const double denom = finite ? static_cast<double>(c.model->order()) : 1.0;
    if (n >= 1) r_n = detail::weighted_rank(c, c.diffs[static_cast<std::size_t>(n - 1)]) / denom;
    if (n < c.top()) r_up = detail::weighted_rank(c, c.diffs[static_cast<std::size_t>(n)]) / denom;
    return kn - r_n - r_up;
}

inline double euler_characteristic(const ChainComplexW& c) {
    double chi = 0.0;
    for (int n = 0; n <= c.top(); ++n)
        chi += (n % 2 == 0 ? 1.0 : -1.0) * c.ranks[static_cast<std::size_t>(n)];
    return chi;
}

namespace detail {

// log FK det of the differential with symbol matrix m. For non-square shapes
// det(f) = det(f f*)^{1/2} with f* the conjugate-reversed transpose.
inline double z_log_det(const std::vector<std::vector<LaurentPoly>>& m, const MahlerConfig& cfg) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0.0;
    const int cols = static_cast<int>(m[0].size());
    if (cols == 0) return 0.0;
    if (rows == cols) {
        LaurentPoly d = laurent_det(m);
        if (d.trimmed(1e-12 * std::max(1.0, d.max_abs_coeff())).is_zero())
            throw NotDetAcyclic("degenerate differential");
        return det_mahler(d, cfg).log_value;
    }
    const int s = std::min(rows, cols);
    std::vector<std::vector<LaurentPoly>> gram(static_cast<std::size_t>(s),
                                               std::vector<LaurentPoly>(static_cast<std::size_t>(s)));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            LaurentPoly acc;
            const int inner = std::max(rows, cols);
            for (int k = 0; k < inner; ++k) {
                const LaurentPoly& u = rows <= cols ? m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]
                                                    : m[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
                const LaurentPoly& v = rows <= cols ? m[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]
                                                    : m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                acc = acc + u * v.conj_reversed();
            }
            gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
        }
    LaurentPoly d = laurent_det(gram);
    if (d.trimmed(1e-12 * std::max(1.0, d.max_abs_coeff())).is_zero())
        throw NotDetAcyclic("degenerate differential");
    return 0.5 * det_mahler(d, cfg).log_value;
}

} // namespace detail

// Weighted L2-torsion over Z at parameter x: -sum (-1)^n ln det(c_{rho^x,n}),
// the scaled symbol having coefficient factor rho(g)^{x/2} = exp(x phi(g)).
// The result is a representative modulo {x -> (x/2) ln rho(g)}.
inline double weighted_torsion_z(const ChainComplexW& c, double x, const MahlerConfig& cfg = {}) {
    c.validate();
    if (c.model->kind() != GroupModel::Kind::FreeAbelian)
        throw ModelUnsupported("torsion is implemented over Z");
    for (int n = 0; n <= c.top(); ++n)
        if (std::abs(weighted_betti(c, n)) > 1e-9)
            throw NotDetAcyclic("nonvanishing weighted Betti number at degree " + std::to_string(n));
    double tor = 0.0;
    for (int n = 1; n <= c.top(); ++n) {
        RingMatrix scaled = c.diffs[static_cast<std::size_t>(n - 1)].apply_phi_rho(x, c.phi);
        double ld = detail::z_log_det(detail::symbol_matrix(scaled), cfg);
        tor -= (n % 2 == 0 ? 1.0 : -1.0) * ld;
    }
    return tor;
}

// Restriction law det(f)^{[G:H]} for Z over nZ: returns the pair
// (n log det p, log det of the n x n block symbol over the subgroup variable
// w = z^n); the two sides agree for circle-nonvanishing p.
inline std::pair<double, double> restriction_check(const LaurentPoly& p, int n,
                                                   const MahlerConfig& cfg = {}) {
    if (n < 1) throw IndexOutOfRange("subgroup index must be >= 1");
    LaurentPoly t = p.trimmed(0.0);
    if (t.is_zero()) throw ZeroPolynomial("restriction of the zero operator");
    for (auto r : poly_roots(t))
        if (std::abs(std::abs(r) - 1.0) < 1e-6)
            throw CircleZero("symbol vanishes on the unit circle");
    double left = static_cast<double>(n) * det_mahler(t, cfg).log_value;

    std::vector<std::vector<LaurentPoly>> block(
        static_cast<std::size_t>(n), std::vector<LaurentPoly>(static_cast<std::size_t>(n)));
    for (auto& [k, a] : t.coeffs())
        for (int i = 0; i < n; ++i) {
            long long s = static_cast<long long>(i) + k;
            long long j = ((s % n) + n) % n;
            long long d = (s - j) / n;
            block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                LaurentPoly::monomial(d, a);
        }
    double right = det_mahler(detail::laurent_det(block), cfg).log_value;
    return {left, right};
}

} // namespace l2alex
