#ifndef FLAGCERT_FIXTURES_HPP
#define FLAGCERT_FIXTURES_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "flag.hpp"
#include "graph.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace flagcert
{

// Bracket flags transcribed from drawings. Each term is a graph in "n:edges"
// form whose vertex names follow the drawing (a0, a1, ...); `roots` lists the
// drawn root vertices in label order. Coefficients are polynomials in the
// free parameter x (a plain rational when constant).
struct FixtureTerm {
    std::string graph;
    std::string coeff;
};

struct BracketFixture {
    std::string name;
    std::string type;
    std::vector<int> roots;
    std::vector<FixtureTerm> terms;
};

using FixtureSet = std::map<std::string, BracketFixture>;

class FixtureError : public std::runtime_error
{
public:
    FixtureError(const std::string &fixture, const std::string &what)
        : std::runtime_error("fixture '" + fixture + "': " + what), fixture_(fixture)
    {
    }
    const std::string &fixture() const { return fixture_; }

private:
    std::string fixture_;
};

inline constexpr const char *default_fixture_json = R"json({
  "ex": {
    "type": "1:",
    "roots": [0],
    "terms": [
      {"graph": "3:01", "coeff": "1"},
      {"graph": "3:01,12", "coeff": "-1"}
    ]
  },
  "first3": {
    "type": "2:",
    "roots": [2, 3],
    "terms": [
      {"graph": "4:21,31", "coeff": "1"},
      {"graph": "4:21,31,30", "coeff": "1"},
      {"graph": "4:21,31,20", "coeff": "1"},
      {"graph": "4:21,31,10", "coeff": "-1"},
      {"graph": "4:21,31,30,10", "coeff": "-1"},
      {"graph": "4:21,31,20,10", "coeff": "-1"}
    ]
  },
  "first4": {
    "type": "2:",
    "roots": [2, 3],
    "terms": [
      {"graph": "4:21", "coeff": "1"},
      {"graph": "4:21,31", "coeff": "1"},
      {"graph": "4:21,30", "coeff": "1"},
      {"graph": "4:21,31,30", "coeff": "1"},
      {"graph": "4:10,21", "coeff": "-1"},
      {"graph": "4:10,21,31", "coeff": "-1"},
      {"graph": "4:10,21,30", "coeff": "-1"},
      {"graph": "4:10,21,31,30", "coeff": "-1"}
    ]
  },
  "sec3": {
    "type": "2:01",
    "roots": [1, 2],
    "terms": [
      {"graph": "3:12", "coeff": "1"},
      {"graph": "3:12,10", "coeff": "-1*x"},
      {"graph": "3:12,20", "coeff": "-1*x"}
    ]
  },
  "sec4": {
    "type": "2:01",
    "roots": [2, 3],
    "terms": [
      {"graph": "4:23", "coeff": "1"},
      {"graph": "4:23,10", "coeff": "1"},
      {"graph": "4:23,30,31", "coeff": "1*x^2"},
      {"graph": "4:23,20,21", "coeff": "1*x^2"},
      {"graph": "4:23,10,30,31", "coeff": "1*x^2"},
      {"graph": "4:23,20,21,10", "coeff": "1*x^2"},
      {"graph": "4:23,21,30", "coeff": "1*x^2"},
      {"graph": "4:23,21,10,30", "coeff": "1*x^2"},
      {"graph": "4:23,31", "coeff": "-1*x"},
      {"graph": "4:23,10,31", "coeff": "-1*x"},
      {"graph": "4:23,20", "coeff": "-1*x"},
      {"graph": "4:23,20,10", "coeff": "-1*x"}
    ]
  }
})json";

inline FixtureSet fixtures_from_json(const nlohmann::json &j)
{
    FixtureSet out;
    if (!j.is_object()) {
        throw std::invalid_argument("fixture file must hold a JSON object");
    }
    for (const auto &[name, body] : j.items()) {
        BracketFixture f;
        f.name = name;
        try {
            f.type = body.at("type").get<std::string>();
            f.roots = body.at("roots").get<std::vector<int>>();
            for (const auto &t : body.at("terms")) {
                f.terms.push_back({t.at("graph").get<std::string>(), t.at("coeff").get<std::string>()});
            }
        } catch (const nlohmann::json::exception &e) {
            throw FixtureError(name, std::string("malformed entry: ") + e.what());
        }
        out.emplace(name, std::move(f));
    }
    return out;
}

inline nlohmann::ordered_json fixtures_to_json(const FixtureSet &set)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto &[name, f] : set) {
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const auto &t : f.terms) {
            terms.push_back({{"graph", t.graph}, {"coeff", t.coeff}});
        }
        j[name] = {{"type", f.type}, {"roots", f.roots}, {"terms", terms}};
    }
    return j;
}

inline const FixtureSet &default_fixtures()
{
    static const FixtureSet set = fixtures_from_json(nlohmann::json::parse(default_fixture_json));
    return set;
}

inline FixtureSet load_fixtures(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open fixture file " + path);
    }
    try {
        return fixtures_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error &e) {
        throw std::runtime_error("fixture file " + path + ": " + e.what());
    }
}

inline const BracketFixture &fixture(const FixtureSet &set, const std::string &name)
{
    const auto it = set.find(name);
    if (it == set.end()) {
        throw FixtureError(name, "missing from the fixture set");
    }
    return it->second;
}

namespace detail
{

inline Rational fixture_coeff(const std::string &text, Rational *)
{
    return parse_rational(text);
}

inline RatPoly fixture_coeff(const std::string &text, RatPoly *)
{
    return parse_poly(text, 'x');
}

} // namespace detail

// The fixture as an algebra element. Terms naming the same flag add up.
template <class T>
DensityVector<T> fixture_vector(const BracketFixture &f)
{
    try {
        const TypeSigma sigma(parse_graph(f.type));
        if (static_cast<int>(f.roots.size()) != sigma.size()) {
            throw FixtureError(f.name, "root count does not match the type");
        }
        if (f.terms.empty()) {
            throw FixtureError(f.name, "no terms");
        }
        int level = -1;
        std::vector<std::pair<Flag, T>> parsed;
        for (const auto &t : f.terms) {
            const SmallGraph g = parse_graph(t.graph);
            if (level < 0) {
                level = g.order();
            } else if (g.order() != level) {
                throw FixtureError(f.name, "terms of different orders");
            }
            const Flag flag = Flag::from_roots(g, f.roots);
            if (!(flag.type() == sigma)) {
                throw FixtureError(f.name, "term " + t.graph + " does not induce the type " + f.type +
                                               " on its roots");
            }
            parsed.emplace_back(flag, detail::fixture_coeff(t.coeff, static_cast<T *>(nullptr)));
        }
        DensityVector<T> out(sigma, level);
        for (auto &[flag, c] : parsed) {
            out.at(flag) += c;
        }
        return out;
    } catch (const FixtureError &) {
        throw;
    } catch (const std::exception &e) {
        throw FixtureError(f.name, e.what());
    }
}

// Every fixture set obtained from `set` by toggling one vertex pair in one
// term, with a description of the change.
inline std::vector<std::pair<std::string, FixtureSet>> single_edge_flips(const FixtureSet &set)
{
    std::vector<std::pair<std::string, FixtureSet>> out;
    for (const auto &[name, f] : set) {
        for (std::size_t t = 0; t < f.terms.size(); ++t) {
            const SmallGraph g = parse_graph(f.terms[t].graph);
            for (int a = 0; a < g.order(); ++a) {
                for (int b = a + 1; b < g.order(); ++b) {
                    SmallGraph h = g;
                    h.toggle_edge(a, b);
                    FixtureSet copy = set;
                    copy[name].terms[t].graph = to_text(h);
                    std::ostringstream what;
                    what << name << " term " << t + 1 << " pair a" << a << "a" << b;
                    out.emplace_back(what.str(), std::move(copy));
                }
            }
        }
    }
    return out;
}

} // namespace flagcert

#endif
