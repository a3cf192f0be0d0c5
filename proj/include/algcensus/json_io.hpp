#pragma once

#include <string>

#include <json.hpp>

#include "algcensus/census.hpp"
#include "algcensus/lemma_checks.hpp"
#include "algcensus/version.hpp"

namespace algcensus {

using json = nlohmann::json;

/// Counts serialize as exact decimal strings; rationals as "p/q".

inline json to_json(const LemmaReport& r) {
    json w = json::array();
    for (const auto& x : r.witnesses) w.push_back({{"input", x.input}, {"lhs", x.lhs}, {"rhs", x.rhs}});
    json params = json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    return json{{"lemmaId", r.lemma_id},
                {"trials", std::to_string(r.trials)},
                {"failures", std::to_string(r.failures)},
                {"witnesses", w},
                {"parameters", params}};
}

inline LemmaReport lemma_report_from_json(const json& j) {
    LemmaReport r;
    r.lemma_id = j.at("lemmaId").get<std::string>();
    r.trials = std::stoull(j.at("trials").get<std::string>());
    r.failures = std::stoull(j.at("failures").get<std::string>());
    for (const auto& w : j.at("witnesses"))
        r.witnesses.push_back({w.at("input").get<std::string>(), w.at("lhs").get<std::string>(),
                               w.at("rhs").get<std::string>()});
    for (const auto& [k, v] : j.at("parameters").items()) r.parameters[k] = v.get<std::string>();
    return r;
}

inline json to_json(const CensusRecord& r) {
    const auto& q = r.query;
    json hist = json::array();
    for (std::size_t i = 0; i < r.histogram.size(); ++i) {
        // cell bounds are informational decimal approximations; counts exact
        double qd = mpz_get_d(q.q.get_mpz_t());
        double cell = std::pow(qd, -mpq_get_d(q.v.get_mpq_t()));
        double lo = mpq_get_d(q.domain.lo.get_mpq_t()) + double(i) * cell;
        hist.push_back({{"index", i},
                        {"lo", detail::approx(lo)},
                        {"hi", detail::approx(lo + cell)},
                        {"count", std::to_string(r.histogram[i])}});
    }
    return json{{"n", q.n},
                {"q", q.q.get_str()},
                {"v", to_string(q.v)},
                {"cd", to_string(q.cd)},
                {"interval", {to_string(q.domain.lo), to_string(q.domain.hi)}},
                {"count", std::to_string(r.count)},
                {"pairCount", std::to_string(r.pair_count)},
                {"cells", std::to_string(r.cells)},
                {"histogram", hist},
                {"enumerated", std::to_string(r.enumerated)},
                {"toolVersion", kToolVersion},
                {"meta", {{"elapsedSec", r.elapsed_sec}}}};
}

inline CensusRecord census_record_from_json(const json& j) {
    CensusRecord r;
    r.query.n = j.at("n").get<int>();
    r.query.q = Integer(j.at("q").get<std::string>());
    r.query.v = parse_rational(j.at("v").get<std::string>());
    r.query.cd = parse_rational(j.at("cd").get<std::string>());
    r.query.domain = Enclosure{parse_rational(j.at("interval")[0].get<std::string>()),
                               parse_rational(j.at("interval")[1].get<std::string>())};
    r.count = std::stoull(j.at("count").get<std::string>());
    r.pair_count = std::stoull(j.at("pairCount").get<std::string>());
    r.cells = std::stoull(j.at("cells").get<std::string>());
    for (const auto& h : j.at("histogram")) r.histogram.push_back(std::stoull(h.at("count").get<std::string>()));
    r.enumerated = std::stoull(j.at("enumerated").get<std::string>());
    if (j.contains("meta") && j.at("meta").contains("elapsedSec")) r.elapsed_sec = j.at("meta").at("elapsedSec").get<double>();
    return r;
}

inline json to_json(const ExclusionSet& e) {
    json iv = json::array();
    for (const auto& s : e.intervals) iv.push_back({to_string(s.lo), to_string(s.hi)});
    return json{{"n", e.n},
                {"hmax", e.hmax},
                {"rho", to_string(e.rho)},
                {"delta", to_string(e.delta)},
                {"base", {to_string(e.base.lo), to_string(e.base.hi)}},
                {"intervals", iv},
                {"totalMeasure", to_string(e.total_measure)},
                {"toolVersion", kToolVersion}};
}

inline json to_json(const ExponentFit& f) {
    json pts = json::array();
    for (const auto& [q, c] : f.points) pts.push_back({{"q", q}, {"count", c}});
    return json{{"points", pts}, {"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}};
}

}  // namespace algcensus
