#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nahm.hpp"

namespace qnahm {

/* Triple files are JSON documents with every rational carried as a string
 * ("p/q" or an integer literal); no floats anywhere on the wire. */
inline NahmTriple triple_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("rank") || !j.contains("A") || !j.contains("B"))
        throw ParseError("triple file needs rank, A, B");
    if (!j["rank"].is_number_integer())
        throw ParseError("rank must be an integer");
    std::size_t r = j["rank"].get<std::size_t>();
    if (r == 0 || r > 16)
        throw ParseError("rank out of range");
    auto rational_at = [](const nlohmann::json &x) {
        if (!x.is_string())
            throw ParseError("rationals must be strings");
        return parse_rational(x.get<std::string>());
    };
    NahmTriple t;
    if (!j["A"].is_array() || j["A"].size() != r)
        throw ParseError("A must be a rank x rank array");
    for (const auto &row : j["A"]) {
        if (!row.is_array() || row.size() != r)
            throw ParseError("A must be a rank x rank array");
        RatVector v;
        for (const auto &x : row)
            v.push_back(rational_at(x));
        t.A.push_back(std::move(v));
    }
    if (!j["B"].is_array() || j["B"].size() != r)
        throw ParseError("B must have rank entries");
    for (const auto &x : j["B"])
        t.B.push_back(rational_at(x));
    t.C = j.contains("C") ? rational_at(j["C"]) : Rational(0);
    try {
        t.validate(); // symmetry enforced at load
    } catch (const NotSymmetric &e) {
        throw ParseError(std::string("invalid triple: ") + e.what());
    } catch (const RankMismatch &e) {
        throw ParseError(std::string("invalid triple: ") + e.what());
    }
    return t;
}

inline NahmTriple load_triple(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError("bad JSON in " + path + ": " + e.what());
    }
    return triple_from_json(j);
}

inline std::string triple_to_json(const NahmTriple &t)
{
    nlohmann::ordered_json j;
    j["rank"] = t.rank();
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto &row : t.A) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto &x : row)
            r.push_back(to_string(x));
        a.push_back(std::move(r));
    }
    j["A"] = std::move(a);
    nlohmann::ordered_json b = nlohmann::ordered_json::array();
    for (const auto &x : t.B)
        b.push_back(to_string(x));
    j["B"] = std::move(b);
    j["C"] = to_string(t.C);
    return j.dump() + "\n";
}

/* "k:coeff" pairs ascending, "k/D:coeff" on a fractional lattice. */
inline std::string series_listing(const QSeries &f)
{
    std::ostringstream out;
    bool first = true;
    for (const auto &[k, c] : f.terms()) {
        if (!first)
            out << ' ';
        first = false;
        out << k;
        if (f.scale() != 1)
            out << '/' << f.scale();
        out << ':' << to_string(c);
    }
    return out.str();
}

} // namespace qnahm
