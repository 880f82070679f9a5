#pragma once
#include <cmath>
#include <string>

namespace l2alex {

enum class DetMethod {
    ClosedFormMonomial,
    ClosedFormCyclic,
    GeometricSum,
    MahlerQuadrature,
    TraceSeries,
    TruncationHeuristic,
};

enum class InjectivityStatus { Proven, AssumedHypothesisBullet };

inline const char* to_string(DetMethod m) {
    switch (m) {
    case DetMethod::ClosedFormMonomial: return "ClosedFormMonomial";
    case DetMethod::ClosedFormCyclic: return "ClosedFormCyclic";
    case DetMethod::GeometricSum: return "GeometricSum";
    case DetMethod::MahlerQuadrature: return "MahlerQuadrature";
    case DetMethod::TraceSeries: return "TraceSeries";
    case DetMethod::TruncationHeuristic: return "TruncationHeuristic";
    }
    return "?";
}

inline const char* to_string(InjectivityStatus s) {
    return s == InjectivityStatus::Proven ? "Proven" : "AssumedHypothesisBullet";
}

// A Fuglede-Kadison determinant value. error_bound bounds the error on
// log_value; rigorous engines always report a finite bound.
struct DetEstimate {
    double value = 0.0;
    double log_value = 0.0;
    DetMethod method = DetMethod::TruncationHeuristic;
    bool rigorous = false;
    double error_bound = 0.0;
    InjectivityStatus injectivity = InjectivityStatus::AssumedHypothesisBullet;

    static DetEstimate from_log(double lv, DetMethod m, bool rig, double err, InjectivityStatus inj) {
        return {std::exp(lv), lv, m, rig, err, inj};
    }
    static DetEstimate from_value(double v, DetMethod m, bool rig, double err, InjectivityStatus inj) {
        return {v, std::log(v), m, rig, err, inj};
    }
};

} // namespace l2alex
