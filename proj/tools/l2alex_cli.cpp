#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "l2alex/dsl.hpp"
#include "l2alex/fk_det.hpp"
#include "l2alex/fox.hpp"
#include "l2alex/knots.hpp"
#include "l2alex/l2_alexander.hpp"
#include "l2alex/weighted.hpp"

namespace {

using namespace l2alex;

struct CommonOpts {
    std::string knot;
    std::string presentation;
    std::string out;
    int j = 0;
    std::string engine = "auto";
    int max_order = 400;
    double tol = 1e-8;
    int radius = 6;
    bool table = false;
};

EngineChoice engine_from(const std::string& name) {
    if (name == "auto") return EngineChoice::Auto;
    if (name == "closed") return EngineChoice::Closed;
    if (name == "mahler") return EngineChoice::Mahler;
    if (name == "trace-series") return EngineChoice::TraceSeries;
    if (name == "truncation") return EngineChoice::Truncation;
    throw ParseError("unknown engine '" + name + "'");
}

KnotPresentation load_knot(const CommonOpts& o) {
    if (!o.knot.empty() && !o.presentation.empty())
        throw ParseError("give either --knot or --presentation, not both");
    if (!o.knot.empty()) return wirtinger(parse_knot_spec(o.knot));
    if (!o.presentation.empty()) return knot_presentation_from(parse_presentation(o.presentation));
    throw ParseError("one of --knot or --presentation is required");
}

// lo:hi:n for a linear grid, lo:hi:n:log (or a "(log)" suffix) for log spacing.
std::vector<double> parse_t_range(const std::string& spec) {
    std::string s = spec;
    bool logsp = false;
    if (s.size() >= 5 && s.compare(s.size() - 5, 5, "(log)") == 0) {
        logsp = true;
        s = s.substr(0, s.size() - 5);
    }
    auto parts = detail::split(s, ':');
    if (parts.size() == 4 && detail::trim(parts[3]) == "log") {
        logsp = true;
        parts.pop_back();
    }
    if (parts.size() != 3) throw ParseError("t-range must be lo:hi:n or lo:hi:n:log");
    double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
    int n = std::stoi(parts[2]);
    if (n < 1) throw ParseError("t-range needs n >= 1");
    if (logsp && (lo <= 0 || hi <= 0)) throw ParseError("log grid needs positive endpoints");
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        out.push_back(logsp ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
    return out;
}

std::ostream& output_stream(const CommonOpts& o, std::ofstream& file) {
    if (o.out.empty()) return std::cout;
    file.open(o.out);
    if (!file) throw ParseError("cannot open output file " + o.out);
    return file;
}

int run_alex(const CommonOpts& o, const std::vector<double>& ts, double t_im) {
    KnotPresentation kp = load_knot(o);
    AlexConfig cfg;
    cfg.engine = engine_from(o.engine);
    cfg.j = o.j;
    cfg.trace.max_order = o.max_order;
    cfg.trace.tol = o.tol;
    cfg.trunc_radius = o.radius;
    std::ofstream file;
    std::ostream& os = output_stream(o, file);
    int rc = 0;
    const int j_used = o.j == 0 ? kp.pres.num_generators() : o.j;
    for (double tv : ts) {
        try {
            AlexResult r = l2_alexander(kp, {tv, t_im}, cfg);
            if (o.table)
                os << tv << "\t" << r.value << "\t" << (r.det.rigorous ? 1 : 0) << "\t"
                   << r.det.error_bound << "\n";
            else
                os << alex_result_json(r, kp.name, print_presentation(kp.pres), j_used).dump()
                   << "\n";
        } catch (const Error& e) {
            std::cerr << "error at t = " << tv << ": " << e.what() << "\n";
            rc = 1;
        }
    }
    return rc;
}

int run_classical(const CommonOpts& o) {
    KnotPresentation kp = load_knot(o);
    int j = o.j == 0 ? kp.pres.num_generators() : o.j;
    std::ofstream file;
    std::ostream& os = output_stream(o, file);
    os << print_laurent(classical_alexander(kp.pres, kp.phi, j), "t") << "\n";
    return 0;
}

int run_fox(const CommonOpts& o, int drop) {
    if (o.presentation.empty()) throw ParseError("fox needs --presentation");
    Presentation p = parse_presentation(o.presentation);
    FoxMatrix f = fox_matrix(p);
    RingMatrix m = drop > 0 ? delete_column(f, drop) : f.entries;
    auto names = p.names();
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(ring_element_json(m.at(i, c), names));
        entries.push_back(row);
    }
    std::ofstream file;
    std::ostream& os = output_stream(o, file);
    os << nlohmann::json{{"presentation", print_presentation(p)},
                         {"drop", drop},
                         {"rows", m.rows()},
                         {"cols", m.cols()},
                         {"entries", entries}}
              .dump()
       << "\n";
    return 0;
}

int run_det(const CommonOpts& o, const std::string& group, const std::string& poly,
            const std::string& file_path) {
    ModelPtr model;
    RingMatrix m;
    if (!poly.empty()) {
        if (group != "Z" && group != "z") throw ParseError("--poly requires --group Z");
        model = GroupModel::free_abelian({"z"});
        m = RingMatrix(model, 1, 1);
        m.at(0, 0) = element_of(model, parse_laurent(poly).first);
    } else if (!file_path.empty()) {
        std::ifstream in(file_path);
        if (!in) throw ParseError("cannot open " + file_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad JSON: ") + e.what());
        }
        model = parse_model_json(j.at("model"));
        m = parse_ring_matrix_json(j.at("matrix"), model);
    } else {
        throw ParseError("det needs --poly or --file");
    }

    DetEstimate d;
    std::string engine = o.engine;
    if (engine == "auto")
        engine = (model->kind() == GroupModel::Kind::FreeAbelian && model->num_generators() == 1)
                     ? "mahler"
                     : "trace-series";
    if (engine == "mahler") {
        d = det_mahler_matrix(m);
    } else if (engine == "closed") {
        auto r = try_det_monomial_matrix(m);
        if (!r) r = try_det_closed_1x1(m);
        if (!r) throw EngineUnsupported("no closed form recognized");
        d = *r;
    } else if (engine == "trace-series") {
        TraceSeriesConfig cfg{o.max_order, o.tol};
        // canonical gradings enable the exact vanishing-trace shortcut
        std::optional<PhiGrading> grading;
        if (model->kind() == GroupModel::Kind::TorusKnot) {
            long long p = model->torus_p(), q = model->torus_q();
            grading = PhiGrading{{q, p, p * q}};
        } else if (model->kind() == GroupModel::Kind::FreeAbelian && model->num_generators() == 1) {
            grading = PhiGrading{{1}};
        }
        d = det_trace_series(m, grading ? &*grading : nullptr, cfg);
    } else if (engine == "truncation") {
        d = det_truncation(m, o.radius);
    } else {
        throw ParseError("unknown engine '" + engine + "'");
    }
    std::ofstream file;
    std::ostream& os = output_stream(o, file);
    os << det_estimate_json(d).dump() << "\n";
    return 0;
}

int run_weighted(const CommonOpts& o, const std::string& file_path, std::optional<int> betti,
                 std::optional<double> torsion_x, const std::string& restriction) {
    std::ofstream file;
    std::ostream& os = output_stream(o, file);
    if (!restriction.empty()) {
        auto parts = detail::split(restriction, ':');
        if (parts.size() != 2) throw ParseError("restriction spec is poly:n");
        auto [p, var] = parse_laurent(parts[0]);
        int n = std::stoi(parts[1]);
        auto [left, right] = restriction_check(p, n);
        os << nlohmann::json{{"restriction", {{"poly", parts[0]}, {"n", n}}},
                             {"log_det_times_index", left},
                             {"log_det_restricted", right}}
                  .dump()
           << "\n";
        return 0;
    }
    if (file_path.empty()) throw ParseError("weighted needs --file (or --restriction)");
    std::ifstream in(file_path);
    if (!in) throw ParseError("cannot open " + file_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    ChainComplexW c = parse_complex_json(j);
    if (torsion_x) {
        os << nlohmann::json{{"x", *torsion_x}, {"torsion", weighted_torsion_z(c, *torsion_x)}}
                  .dump()
           << "\n";
        return 0;
    }
    if (betti) {
        os << nlohmann::json{{"n", *betti}, {"betti", weighted_betti(c, *betti)}}.dump() << "\n";
        return 0;
    }
    nlohmann::json bs = nlohmann::json::array();
    double chi = 0.0;
    for (int n = 0; n <= c.top(); ++n) {
        double b = weighted_betti(c, n);
        bs.push_back(b);
        chi += (n % 2 == 0 ? 1.0 : -1.0) * b;
    }
    os << nlohmann::json{{"betti", bs}, {"euler", chi}}.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"L2-Alexander invariant toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::vector<double> ts;
    std::string t_range;
    double t_im = 0.0;
    int drop = 0;
    std::string group = "Z", poly, file_path, restriction;
    std::optional<int> betti;
    std::optional<double> torsion_x;

    auto add_common = [&](CLI::App* cmd, bool with_engine = true) {
        cmd->add_option("--knot", o.knot, "knot spec: torus:p,q | trefoil | file:PATH");
        cmd->add_option("--presentation", o.presentation, "presentation string, e.g. <x,y|x^2=y^3>");
        cmd->add_option("--j", o.j, "column to delete (1-based; 0 = last)");
        cmd->add_option("--out", o.out, "output path (default stdout)");
        if (with_engine) {
            cmd->add_option("--engine", o.engine,
                            "auto | closed | mahler | trace-series | truncation");
            cmd->add_option("--max-order", o.max_order, "trace-series order cap");
            cmd->add_option("--tol", o.tol, "trace-series tail tolerance");
            cmd->add_option("--radius", o.radius, "truncation ball radius");
        }
    };

    auto* alex = app.add_subcommand("alex", "L2-Alexander invariant over a t-grid");
    add_common(alex);
    alex->add_option("--t", ts, "t value(s)");
    alex->add_option("--t-im", t_im, "imaginary part added to each t");
    alex->add_option("--t-range", t_range, "lo:hi:n or lo:hi:n:log");
    alex->add_flag("--table", o.table, "TSV output: t, value, rigorous, error");

    auto* classical = app.add_subcommand("classical", "classical Alexander polynomial");
    add_common(classical, false);

    auto* fox = app.add_subcommand("fox", "Fox matrix of a presentation");
    add_common(fox, false);
    fox->add_option("--drop", drop, "column to delete (1-based; 0 = keep all)");

    auto* det = app.add_subcommand("det", "Fuglede-Kadison determinant of an operator");
    add_common(det);
    det->add_option("--group", group, "group for --poly input (Z)");
    det->add_option("--poly", poly, "Laurent polynomial, e.g. \"z-2\"");
    det->add_option("--file", file_path, "ring-matrix JSON file");

    auto* weighted = app.add_subcommand("weighted", "weighted Betti numbers and torsion");
    add_common(weighted, false);
    weighted->add_option("--file", file_path, "chain-complex JSON file");
    weighted->add_option("--betti", betti, "degree n");
    weighted->add_option("--torsion", torsion_x, "torsion parameter x");
    weighted->add_option("--restriction", restriction, "restriction check, poly:n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (alex->parsed()) {
            if (!t_range.empty()) {
                auto grid = parse_t_range(t_range);
                ts.insert(ts.end(), grid.begin(), grid.end());
            }
            if (ts.empty()) throw ParseError("alex needs --t or --t-range");
            return run_alex(o, ts, t_im);
        }
        if (classical->parsed()) return run_classical(o);
        if (fox->parsed()) return run_fox(o, drop);
        if (det->parsed()) return run_det(o, group, poly, file_path);
        if (weighted->parsed()) return run_weighted(o, file_path, betti, torsion_x, restriction);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
