#ifndef FLAGCERT_REPORT_HPP
#define FLAGCERT_REPORT_HPP

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "flag.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "realalg.hpp"

namespace flagcert
{

inline constexpr int report_schema = 1;

enum class Sense { eq, le, ge };

inline std::string to_string(Sense s)
{
    switch (s) {
    case Sense::eq:
        return "eq";
    case Sense::le:
        return "le";
    case Sense::ge:
        return "ge";
    }
    return "?";
}

inline Sense parse_sense(const std::string &s)
{
    if (s == "eq") {
        return Sense::eq;
    }
    if (s == "le") {
        return Sense::le;
    }
    if (s == "ge") {
        return Sense::ge;
    }
    throw std::invalid_argument("unknown sense '" + s + "'");
}

// One input relation "lhs <sense> q(vector)". The provenance names the
// recipe used to recompute the vector.
struct InequalityAtom {
    std::string label;
    std::string provenance;
    std::string lhs;
    Sense sense = Sense::le;
    std::vector<std::string> vector;

    friend bool operator==(const InequalityAtom &, const InequalityAtom &) = default;
};

struct CheckStep {
    std::string name;
    bool pass = false;
    std::string detail;
    std::vector<std::string> recomputed;
    std::vector<std::string> printed;
    // 1-based index of the first offending coordinate.
    std::optional<int> coordinate;
    std::string residual;

    friend bool operator==(const CheckStep &, const CheckStep &) = default;
};

struct CertificateReport {
    std::string certificate;
    std::string variant;
    bool pass = false;
    std::vector<InequalityAtom> atoms;
    std::vector<std::pair<std::string, std::string>> coefficients;
    std::vector<std::string> combined;
    std::vector<std::string> target;
    std::string bound;
    std::vector<CheckStep> steps;
    std::vector<std::string> findings;
    std::vector<CertificateReport> variants;

    bool all_steps_pass() const
    {
        for (const auto &s : steps) {
            if (!s.pass) {
                return false;
            }
        }
        return true;
    }

    const CheckStep *first_failure() const
    {
        for (const auto &s : steps) {
            if (!s.pass) {
                return &s;
            }
        }
        for (const auto &v : variants) {
            if (const CheckStep *s = v.first_failure()) {
                return s;
            }
        }
        return nullptr;
    }

    friend bool operator==(const CertificateReport &, const CertificateReport &) = default;
};

// ---------------------------------------------------------------------------
// Coordinate text
// ---------------------------------------------------------------------------

inline std::string coord_text(const Rational &x) { return x.get_str(); }
inline std::string coord_text(const RatPoly &x) { return x.to_string("x"); }
inline std::string coord_text(const SqrtExpr &x) { return x.to_string(); }

template <class T>
std::vector<std::string> coords_text(const std::vector<T> &v)
{
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto &x : v) {
        out.push_back(coord_text(x));
    }
    return out;
}

template <class T>
std::string type_text(const DensityVector<T> &v)
{
    return v.sigma.unlabeled() ? "unlabeled" : "sigma:" + to_text(v.sigma.graph);
}

template <class T>
nlohmann::ordered_json to_json(const DensityVector<T> &v)
{
    return {{"level", v.level}, {"type", type_text(v)}, {"coords", coords_text(v.coords)}};
}

namespace detail
{

inline Rational parse_coord(const std::string &s, Rational *) { return parse_rational(s); }
inline RatPoly parse_coord(const std::string &s, RatPoly *) { return parse_poly(s, 'x'); }
inline SqrtExpr parse_coord(const std::string &s, SqrtExpr *) { return parse_sqrt_expr(s); }

} // namespace detail

template <class T>
DensityVector<T> density_vector_from_json(const nlohmann::json &j)
{
    const int level = j.at("level").get<int>();
    const std::string type = j.at("type").get<std::string>();
    TypeSigma sigma = TypeSigma::none();
    if (type != "unlabeled") {
        if (type.rfind("sigma:", 0) != 0) {
            throw std::invalid_argument("density vector type must be 'unlabeled' or 'sigma:<graph>'");
        }
        sigma = TypeSigma(parse_graph(type.substr(6)));
    }
    std::vector<T> coords;
    for (const auto &c : j.at("coords")) {
        coords.push_back(detail::parse_coord(c.get<std::string>(), static_cast<T *>(nullptr)));
    }
    return DensityVector<T>(sigma, level, std::move(coords));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const CertificateReport &r)
{
    nlohmann::ordered_json j;
    j["schema"] = report_schema;
    j["certificate"] = r.certificate;
    if (!r.variant.empty()) {
        j["variant"] = r.variant;
    }
    j["status"] = r.pass ? "pass" : "fail";
    j["bound"] = r.bound;
    nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
    for (const auto &a : r.atoms) {
        atoms.push_back({{"label", a.label},
                         {"provenance", a.provenance},
                         {"lhs", a.lhs},
                         {"sense", to_string(a.sense)},
                         {"vector", a.vector}});
    }
    j["atoms"] = atoms;
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const auto &[label, value] : r.coefficients) {
        coeffs.push_back({{"atom", label}, {"value", value}});
    }
    j["coefficients"] = coeffs;
    j["combined"] = r.combined;
    j["target"] = r.target;
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto &s : r.steps) {
        nlohmann::ordered_json step;
        step["name"] = s.name;
        step["status"] = s.pass ? "pass" : "fail";
        step["detail"] = s.detail;
        if (!s.recomputed.empty()) {
            step["recomputed"] = s.recomputed;
        }
        if (!s.printed.empty()) {
            step["printed"] = s.printed;
        }
        if (s.coordinate) {
            step["coordinate"] = *s.coordinate;
        }
        if (!s.residual.empty()) {
            step["residual"] = s.residual;
        }
        steps.push_back(step);
    }
    j["steps"] = steps;
    j["findings"] = r.findings;
    if (!r.variants.empty()) {
        nlohmann::ordered_json vs = nlohmann::ordered_json::array();
        for (const auto &v : r.variants) {
            vs.push_back(to_json(v));
        }
        j["variants"] = vs;
    }
    return j;
}

inline CertificateReport report_from_json(const nlohmann::json &j)
{
    if (j.at("schema").get<int>() != report_schema) {
        throw std::invalid_argument("unsupported report schema");
    }
    CertificateReport r;
    r.certificate = j.at("certificate").get<std::string>();
    r.variant = j.value("variant", std::string());
    r.pass = j.at("status").get<std::string>() == "pass";
    r.bound = j.at("bound").get<std::string>();
    for (const auto &a : j.at("atoms")) {
        r.atoms.push_back({a.at("label").get<std::string>(), a.at("provenance").get<std::string>(),
                           a.at("lhs").get<std::string>(), parse_sense(a.at("sense").get<std::string>()),
                           a.at("vector").get<std::vector<std::string>>()});
    }
    for (const auto &c : j.at("coefficients")) {
        r.coefficients.emplace_back(c.at("atom").get<std::string>(), c.at("value").get<std::string>());
    }
    r.combined = j.at("combined").get<std::vector<std::string>>();
    r.target = j.at("target").get<std::vector<std::string>>();
    for (const auto &s : j.at("steps")) {
        CheckStep step;
        step.name = s.at("name").get<std::string>();
        step.pass = s.at("status").get<std::string>() == "pass";
        step.detail = s.at("detail").get<std::string>();
        step.recomputed = s.value("recomputed", std::vector<std::string>());
        step.printed = s.value("printed", std::vector<std::string>());
        if (s.contains("coordinate")) {
            step.coordinate = s.at("coordinate").get<int>();
        }
        step.residual = s.value("residual", std::string());
        r.steps.push_back(std::move(step));
    }
    r.findings = j.at("findings").get<std::vector<std::string>>();
    if (j.contains("variants")) {
        for (const auto &v : j.at("variants")) {
            r.variants.push_back(report_from_json(v));
        }
    }
    return r;
}

inline std::string report_text(const CertificateReport &r) { return to_json(r).dump(2) + "\n"; }

inline void emit_report(const CertificateReport &r, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write report to " + path);
    }
    out << report_text(r);
    if (!out) {
        throw std::runtime_error("error while writing report to " + path);
    }
}

} // namespace flagcert

#endif
