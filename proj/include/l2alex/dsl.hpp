#pragma once
#include <cctype>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "l2alex/errors.hpp"
#include "l2alex/knots.hpp"
#include "l2alex/l2_alexander.hpp"
#include "l2alex/laurent.hpp"
#include "l2alex/presentation.hpp"
#include "l2alex/weighted.hpp"

namespace l2alex {

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

inline long long parse_int(const std::string& s, std::size_t& pos) {
    skip_ws(s, pos);
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) throw ParseError("expected integer at position " + std::to_string(start));
    return std::stoll(s.substr(start, pos - start));
}

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace detail

// Parses a word over declared generator names: atoms are the longest matching
// name, optionally followed by ^exponent; atoms may touch or be separated by
// whitespace ("aba", "a b a", "x^2y^-3").
inline Word parse_word(const std::string& s, const std::vector<std::string>& names) {
    Word w;
    std::size_t pos = 0;
    while (true) {
        detail::skip_ws(s, pos);
        if (pos >= s.size()) break;
        int best = -1;
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i].size() > best_len && s.compare(pos, names[i].size(), names[i]) == 0) {
                best = static_cast<int>(i);
                best_len = names[i].size();
            }
        if (best < 0)
            throw ParseError("unknown generator at position " + std::to_string(pos) + " in '" + s + "'");
        pos += best_len;
        long long exp = 1;
        detail::skip_ws(s, pos);
        if (pos < s.size() && s[pos] == '\'') {
            exp = -1;
            ++pos;
        } else if (pos < s.size() && s[pos] == '^') {
            ++pos;
            exp = detail::parse_int(s, pos);
        }
        w.push(best, exp);
    }
    return w;
}

// Round-trip word format: name or name^exp atoms separated by single spaces;
// the identity prints as "1".
inline std::string print_word(const Word& w, const std::vector<std::string>& names) {
    if (w.is_identity()) return "1";
    std::string out;
    for (auto& s : w.syllables()) {
        if (!out.empty()) out += ' ';
        out += names[static_cast<std::size_t>(s.gen)];
        if (s.exp != 1) out += "^" + std::to_string(s.exp);
    }
    return out;
}

// <a,b|a b a = b a b> or <x,y|x^2 y^-3>; relators comma-separated, an '='
// turns u = v into u v^-1.
inline Presentation parse_presentation(const std::string& s) {
    std::string t = detail::trim(s);
    if (t.size() < 2 || t.front() != '<' || t.back() != '>')
        throw ParseError("presentation must be delimited by <...>");
    t = t.substr(1, t.size() - 2);
    auto bar = t.find('|');
    if (bar == std::string::npos) throw ParseError("presentation needs a | separator");
    Presentation p;
    int id = 0;
    for (auto& raw : detail::split(t.substr(0, bar), ',')) {
        std::string name = detail::trim(raw);
        if (name.empty()) throw ParseError("empty generator name");
        for (char c : name)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                throw ParseError("bad generator name '" + name + "'");
        p.generators.push_back({id++, name});
    }
    auto names = p.names();
    std::string rel_part = detail::trim(t.substr(bar + 1));
    if (!rel_part.empty()) {
        for (auto& raw : detail::split(rel_part, ',')) {
            std::string r = detail::trim(raw);
            if (r.empty()) continue;
            auto eq = r.find('=');
            Word w;
            if (eq == std::string::npos) {
                w = parse_word(r, names);
            } else {
                Word u = parse_word(r.substr(0, eq), names);
                Word v = parse_word(r.substr(eq + 1), names);
                w = u.concat(v.inverse_raw());
            }
            p.relators.push_back(reduce_free(w));
        }
    }
    p.validate();
    return p;
}

inline std::string print_presentation(const Presentation& p) {
    std::string out = "<";
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
        if (i) out += ',';
        out += p.generators[i].name;
    }
    out += '|';
    auto names = p.names();
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        if (i) out += ',';
        out += print_word(p.relators[i], names);
    }
    out += '>';
    return out;
}

// Laurent polynomial in one variable, e.g. "z-2", "z^2 - z + 1", "2z-1",
// "1 - 0.5z". Returns the polynomial and the variable name seen ("z" when
// the input is constant).
inline std::pair<LaurentPoly, std::string> parse_laurent(const std::string& s) {
    LaurentPoly p;
    std::string var;
    std::size_t pos = 0;
    bool any = false;
    while (true) {
        detail::skip_ws(s, pos);
        if (pos >= s.size()) break;
        double sign = 1.0;
        while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -sign;
            ++pos;
            detail::skip_ws(s, pos);
        }
        if (pos >= s.size()) throw ParseError("dangling sign in polynomial");
        double coeff = 1.0;
        bool have_num = false;
        if (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.') {
            std::size_t used = 0;
            coeff = std::stod(s.substr(pos), &used);
            pos += used;
            have_num = true;
        }
        detail::skip_ws(s, pos);
        if (pos < s.size() && s[pos] == '*') {
            ++pos;
            detail::skip_ws(s, pos);
        }
        long long exp = 0;
        if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
            std::string name = s.substr(start, pos - start);
            if (var.empty())
                var = name;
            else if (var != name)
                throw ParseError("mixed variables '" + var + "' and '" + name + "'");
            exp = 1;
            detail::skip_ws(s, pos);
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                exp = detail::parse_int(s, pos);
            }
        } else if (!have_num) {
            throw ParseError("expected term at position " + std::to_string(pos));
        }
        p.add_term(exp, {sign * coeff, 0.0});
        any = true;
    }
    if (!any) throw ParseError("empty polynomial");
    if (var.empty()) var = "z";
    return {p, var};
}

namespace detail {

inline std::string fmt_num(double v) {
    double r = std::round(v);
    if (std::abs(v - r) < 1e-9 && std::abs(r) < 1e15) {
        std::ostringstream os;
        os << static_cast<long long>(r);
        return os.str();
    }
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

inline std::string fmt_coeff(cplx c) {
    if (std::abs(c.imag()) < 1e-12) return fmt_num(c.real());
    std::ostringstream os;
    os << "(" << fmt_num(c.real()) << (c.imag() < 0 ? "-" : "+") << fmt_num(std::abs(c.imag()))
       << "i)";
    return os.str();
}

} // namespace detail

// "t^2 - 3t + 1" style, highest exponent first.
inline std::string print_laurent(const LaurentPoly& p, const std::string& var = "t") {
    LaurentPoly t = p.trimmed(0.0);
    if (t.is_zero()) return "0";
    std::string out;
    for (auto it = t.coeffs().rbegin(); it != t.coeffs().rend(); ++it) {
        auto [e, c] = *it;
        bool neg = std::abs(c.imag()) < 1e-12 && c.real() < 0;
        cplx mag = neg ? -c : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string cs = detail::fmt_coeff(mag);
        if (e == 0) {
            out += cs;
        } else {
            if (cs != "1") out += cs;
            out += var;
            if (e != 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

// torus:p,q | trefoil | file:PATH (JSON crossing table).
inline KnotSpec parse_knot_spec(const std::string& s) {
    std::string t = detail::trim(s);
    if (t == "trefoil") {
        KnotSpec k;
        k.kind = KnotSpec::Kind::Trefoil;
        return k;
    }
    if (t.rfind("torus:", 0) == 0) {
        auto parts = detail::split(t.substr(6), ',');
        if (parts.size() != 2) throw ParseError("torus spec needs torus:p,q");
        KnotSpec k;
        k.kind = KnotSpec::Kind::Torus;
        std::size_t pos = 0;
        k.p = static_cast<int>(detail::parse_int(parts[0], pos));
        pos = 0;
        k.q = static_cast<int>(detail::parse_int(parts[1], pos));
        return k;
    }
    if (t.rfind("file:", 0) == 0) {
        std::ifstream in(t.substr(5));
        if (!in) throw ParseError("cannot open " + t.substr(5));
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad crossing-table JSON: ") + e.what());
        }
        KnotSpec k;
        k.kind = KnotSpec::Kind::Table;
        nlohmann::json crossings = j.is_array() ? j : j.value("crossings", nlohmann::json::array());
        if (j.is_object()) k.num_arcs = j.value("num_arcs", 0);
        for (auto& c : crossings)
            k.crossings.push_back({c.at("over").get<int>(), c.at("in").get<int>(),
                                   c.at("out").get<int>(), c.at("sign").get<int>()});
        return k;
    }
    throw ParseError("unknown knot spec '" + s + "'");
}

// Attaches what structure can be recognized: the standard torus shape gets
// the TorusKnot model, a 1-generator free presentation gets the Z model;
// anything else keeps phi from the abelianization and no model.
inline KnotPresentation knot_presentation_from(const Presentation& pres) {
    pres.validate();
    if (!pres.deficiency_one()) throw ModelMismatch("deficiency-1 presentation required");
    if (pres.num_generators() == 2 && pres.relators.size() == 1) {
        auto syl = reduce_free(pres.relators[0]).syllables();
        long long p = 0, q = 0;
        if (syl.size() == 2 && syl[0].gen == 0 && syl[1].gen == 1 && syl[0].exp > 0 && syl[1].exp < 0) {
            p = syl[0].exp;
            q = -syl[1].exp;
        } else if (syl.size() == 2 && syl[0].gen == 1 && syl[1].gen == 0 && syl[0].exp > 0 &&
                   syl[1].exp < 0) {
            q = syl[0].exp;
            p = -syl[1].exp;
        }
        if (p >= 2 && q >= 2 && std::gcd(p, q) == 1) {
            Presentation tp = pres;
            tp.kind = PresentationKind::TorusStandard;
            PhiGrading phi{{q, p}};
            phi.validate(tp);
            return {tp, phi,
                    GroupModel::torus_knot(static_cast<int>(p), static_cast<int>(q)),
                    "torus(" + std::to_string(p) + "," + std::to_string(q) + ")"};
        }
    }
    PhiGrading phi = phi_from_abelianization(pres);
    ModelPtr model;
    if (pres.num_generators() == 1 && pres.relators.empty())
        model = GroupModel::free_abelian({pres.generators[0].name});
    return {pres, phi, model, "presentation"};
}

// ---- JSON serialization ----

inline nlohmann::json det_estimate_json(const DetEstimate& d) {
    return {{"value", d.value},
            {"log_value", d.log_value},
            {"method", to_string(d.method)},
            {"rigorous", d.rigorous},
            {"error_bound", d.error_bound},
            {"injectivity_status", to_string(d.injectivity)}};
}

inline nlohmann::json alex_result_json(const AlexResult& r, const std::string& knot,
                                       const std::string& presentation, int j) {
    nlohmann::json out = {{"knot", knot},
                          {"presentation", presentation},
                          {"j", j},
                          {"t", {{"re", r.t.real()}, {"im", r.t.imag()}}},
                          {"value", r.value},
                          {"method", to_string(r.det.method)},
                          {"rigorous", r.det.rigorous},
                          {"error_bound", r.det.error_bound},
                          {"provenance", to_string(r.provenance)},
                          {"status", std::string(to_string(r.status))}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

inline nlohmann::json ring_element_json(const RingElement& e, const std::vector<std::string>& names) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [w, c] : e.terms())
        terms.push_back({{"word", print_word(w, names)}, {"re", c.real()}, {"im", c.imag()}});
    return {{"terms", terms}};
}

// Model JSON: {"kind":"Z"} | {"kind":"free"|"free_abelian","names":[...]}
// | {"kind":"cyclic","n":k} | {"kind":"finite","names":[...],"table":[[..]]}
// | {"kind":"torus_knot","p":p,"q":q}.
inline ModelPtr parse_model_json(const nlohmann::json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "Z" || kind == "z") return GroupModel::free_abelian({"z"});
    if (kind == "free" || kind == "free_abelian") {
        std::vector<std::string> names = j.at("names").get<std::vector<std::string>>();
        return kind == "free" ? GroupModel::free_group(names) : GroupModel::free_abelian(names);
    }
    if (kind == "cyclic") return GroupModel::cyclic(j.at("n").get<int>());
    if (kind == "finite")
        return GroupModel::finite(j.at("names").get<std::vector<std::string>>(),
                                  j.at("table").get<std::vector<std::vector<int>>>());
    if (kind == "torus_knot")
        return GroupModel::torus_knot(j.at("p").get<int>(), j.at("q").get<int>());
    throw ParseError("unknown model kind '" + kind + "'");
}

// Entry formats: a Laurent string (FreeAbelian(1) models) or a list of
// {word, re, im} terms over the model's generator names.
inline RingElement parse_ring_entry_json(const nlohmann::json& j, const ModelPtr& model) {
    if (j.is_string()) {
        if (model->kind() != GroupModel::Kind::FreeAbelian || model->num_generators() != 1)
            throw ParseError("polynomial entries need the Z model");
        return element_of(model, parse_laurent(j.get<std::string>()).first);
    }
    RingElement e(model);
    for (auto& term : j) {
        std::string ws = term.at("word").get<std::string>();
        Word w = ws == "1" ? Word::identity() : parse_word(ws, model->names());
        e.add_term(model->normalize(w),
                   {term.at("re").get<double>(), term.value("im", 0.0)});
    }
    return e;
}

inline RingMatrix parse_ring_matrix_json(const nlohmann::json& j, const ModelPtr& model) {
    int rows = static_cast<int>(j.size());
    int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
    RingMatrix m(model, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j.at(static_cast<std::size_t>(i)).size()) != cols)
            throw ParseError("ragged matrix");
        for (int c = 0; c < cols; ++c)
            m.at(i, c) = parse_ring_entry_json(
                j.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(c)), model);
    }
    return m;
}

// Complex file: {"model":{...}, "weight":[...], "ranks":[...],
// "diffs":[matrix for c_1, matrix for c_2, ...]}.
inline ChainComplexW parse_complex_json(const nlohmann::json& j) {
    ChainComplexW c;
    c.model = parse_model_json(j.at("model"));
    if (j.contains("weight"))
        c.phi.weights = j.at("weight").get<std::vector<long long>>();
    else
        c.phi.weights.assign(static_cast<std::size_t>(c.model->num_generators()), 0);
    c.ranks = j.at("ranks").get<std::vector<int>>();
    for (auto& d : j.at("diffs")) c.diffs.push_back(parse_ring_matrix_json(d, c.model));
    c.validate();
    return c;
}

} // namespace l2alex
