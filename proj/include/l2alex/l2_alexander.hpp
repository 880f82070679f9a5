#pragma once
#include <cmath>
#include <numeric>
#include <string>

#include "l2alex/errors.hpp"
#include "l2alex/fk_det.hpp"
#include "l2alex/fox.hpp"
#include "l2alex/knots.hpp"

namespace l2alex {

enum class AlexProvenance { ClosedFormTorus, TheoremPipeline, Unsupported };
enum class AlexStatus { Ok, HypothesisBulletUnverified, Unsupported };

inline const char* to_string(AlexProvenance p) {
    switch (p) {
    case AlexProvenance::ClosedFormTorus: return "ClosedFormTorus";
    case AlexProvenance::TheoremPipeline: return "TheoremPipeline";
    case AlexProvenance::Unsupported: return "Unsupported";
    }
    return "?";
}

inline const char* to_string(AlexStatus s) {
    switch (s) {
    case AlexStatus::Ok: return "ok";
    case AlexStatus::HypothesisBulletUnverified: return "hypothesis-bullet-unverified";
    case AlexStatus::Unsupported: return "unsupported";
    }
    return "?";
}

// One evaluation of the invariant. value is the raw representative (no |t|^p
// normalization); it depends on t only through |t|.
struct AlexResult {
    cplx t{};
    double value = 0.0;
    DetEstimate det;
    AlexProvenance provenance = AlexProvenance::Unsupported;
    AlexStatus status = AlexStatus::Unsupported;
    std::string note;
};

enum class EngineChoice { Auto, Closed, Mahler, TraceSeries, Truncation };

struct AlexConfig {
    EngineChoice engine = EngineChoice::Auto;
    int j = 0; // deleted column, 1-based; 0 means the last column
    TraceSeriesConfig trace;
    MahlerConfig mahler;
    int trunc_radius = 6;
    double trunc_eps = 1e-9;
};

// Closed form max{|t|,1}^{(p-1)(q-1)} for the (p,q) torus knot.
inline AlexResult l2_alexander_torus(int p, int q, cplx t) {
    if (p < 2 || q < 2 || std::gcd(p, q) != 1) throw NotCoprime("torus knot needs coprime p,q >= 2");
    if (t == cplx{}) throw ZeroParameter("t must be nonzero");
    double v = rpow_int(std::max(std::abs(t), 1.0),
                        static_cast<long long>(p - 1) * static_cast<long long>(q - 1));
    AlexResult r;
    r.t = t;
    r.value = v;
    r.det = DetEstimate::from_value(v, DetMethod::GeometricSum, true, 0.0, InjectivityStatus::Proven);
    r.provenance = AlexProvenance::ClosedFormTorus;
    r.status = AlexStatus::Ok;
    return r;
}

namespace detail {

inline std::optional<DetEstimate> try_closed(const RingMatrix& a) {
    if (auto d = try_det_monomial_matrix(a)) return d;
    if (auto d = try_det_closed_1x1(a)) return d;
    return std::nullopt;
}

} // namespace detail

// The main pipeline: value = det(r_{psi_{|t|}(F_j)}) * max{|t|,1}^{1 - phi(g_j)}.
// Evaluates at |t| first; the invariant depends only on the modulus.
inline AlexResult l2_alexander(const KnotPresentation& kp, cplx t, const AlexConfig& cfg = {}) {
    if (t == cplx{}) throw ZeroParameter("t must be nonzero");
    const double r = std::abs(t);
    const int k = kp.pres.num_generators();
    const int j = cfg.j == 0 ? k : cfg.j;
    if (j < 1 || j > k) throw IndexOutOfRange("column " + std::to_string(j));

    AlexResult out;
    out.t = t;

    if (!kp.model) {
        out.note = "no word-problem model attached to this presentation";
        return out;
    }

    FoxMatrix f = fox_matrix(kp.pres);
    RingMatrix fj = push_to_model(kp.model, delete_column(f, j));
    PhiGrading mg = model_grading(kp.model, kp.phi);
    RingMatrix a = fj.apply_psi(cplx{r, 0.0}, mg);
    const long long phi_gj = kp.phi.weights[static_cast<std::size_t>(j - 1)];

    auto assemble = [&](const DetEstimate& d, AlexProvenance prov) {
        out.det = d;
        out.value = d.value * rpow_int(std::max(r, 1.0), 1 - phi_gj);
        out.provenance = prov;
        out.status = d.injectivity == InjectivityStatus::Proven
                         ? AlexStatus::Ok
                         : AlexStatus::HypothesisBulletUnverified;
        return out;
    };

    switch (cfg.engine) {
    case EngineChoice::Closed: {
        auto d = detail::try_closed(a);
        if (!d) throw EngineUnsupported("no closed form recognized");
        return assemble(*d, AlexProvenance::TheoremPipeline);
    }
    case EngineChoice::Mahler:
        return assemble(det_mahler_matrix(a, cfg.mahler), AlexProvenance::TheoremPipeline);
    case EngineChoice::TraceSeries:
        return assemble(det_trace_series(a, &mg, cfg.trace), AlexProvenance::TheoremPipeline);
    case EngineChoice::Truncation:
        return assemble(det_truncation(a, cfg.trunc_radius, cfg.trunc_eps),
                        AlexProvenance::TheoremPipeline);
    case EngineChoice::Auto: break;
    }

    if (auto d = detail::try_closed(a)) return assemble(*d, AlexProvenance::TheoremPipeline);
    if (kp.model->kind() == GroupModel::Kind::FreeAbelian && kp.model->num_generators() == 1)
        return assemble(det_mahler_matrix(a, cfg.mahler), AlexProvenance::TheoremPipeline);
    try {
        return assemble(det_trace_series(a, &mg, cfg.trace), AlexProvenance::TheoremPipeline);
    } catch (const NoDominantFactoring&) {
    }
    if (kp.model->kind() == GroupModel::Kind::TorusKnot) {
        AlexResult closed = l2_alexander_torus(static_cast<int>(kp.model->torus_p()),
                                               static_cast<int>(kp.model->torus_q()), t);
        closed.note = "series engines fail near |t| = 1; proven closed form used";
        return closed;
    }
    out.note = "no rigorous engine applies at |t| = " + std::to_string(r);
    return out;
}

// sqrt( D(t)/max{|t|,1} * D(1/t)/max{1/|t|,1} ): a representative free of the
// |t|^p ambiguity.
inline double simplified_delta_prime(double delta_at_t, double delta_at_tinv, cplx t) {
    if (t == cplx{}) throw ZeroParameter("t must be nonzero");
    double r = std::abs(t);
    return std::sqrt(delta_at_t / std::max(r, 1.0) * delta_at_tinv / std::max(1.0 / r, 1.0));
}

// Inverts delta = exp(-torsion(ln|t|)) * max{|t|,1} for the torsion value.
inline double torsion_from_alexander(double delta_value, cplx t) {
    if (!(delta_value > 0.0)) throw NonpositiveValue("invariant value must be positive");
    if (t == cplx{}) throw ZeroParameter("t must be nonzero");
    return -std::log(delta_value) + std::log(std::max(std::abs(t), 1.0));
}

} // namespace l2alex
