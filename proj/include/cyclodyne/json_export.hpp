#pragma once

#include <json.hpp>

#include "cyclodyne/adic.hpp"
#include "cyclodyne/cyclotomy.hpp"
#include "cyclodyne/sequences.hpp"
#include "cyclodyne/verify.hpp"

namespace cyclodyne {

using ordered_json = nlohmann::ordered_json;

// {p, q, g, x, classes: {D0, D1, P, Q}}, class members in ascending order.
inline ordered_json partition_json(const Partition& part) {
    ordered_json j;
    j["p"] = part.params.p;
    j["q"] = part.params.q;
    j["g"] = part.params.g;
    j["x"] = part.params.x;
    j["classes"] = {
        {"D0", part.d0},
        {"D1", part.d1},
        {"P", part.pset},
        {"Q", part.qset},
    };
    return j;
}

inline ordered_json sequence_json(const BinarySequence& seq, const PeriodParams* params) {
    ordered_json j;
    if (params) {
        j["p"] = params->p;
        j["q"] = params->q;
        j["g"] = params->g;
    }
    j["class"] = to_string(seq.tag);
    j["period"] = seq.period;
    j["support"] = support(seq);
    return j;
}

inline ordered_json analysis_json(const BinarySequence& seq, const ComplexityReport& rep,
                                  uint64_t lc, const PeriodParams* params) {
    ordered_json j;
    if (params) {
        j["p"] = params->p;
        j["q"] = params->q;
    }
    j["class"] = to_string(seq.tag);
    j["N"] = seq.period;
    j["weight"] = weight(seq);
    j["S2"] = to_decimal(rep.s2);
    j["gcd"] = to_decimal(rep.g_common);
    j["phi2"] = rep.phi2;
    j["linear_complexity"] = lc;
    return j;
}

inline ordered_json audit_json(const FactorAudit& audit) {
    ordered_json factors = ordered_json::array();
    for (const auto& [base, g] : audit.factor_gcds)
        factors.push_back({{"base", to_decimal(base)}, {"gcd", to_decimal(g)}});
    ordered_json j;
    j["factors"] = std::move(factors);
    j["overall"] = to_decimal(audit.overall);
    j["all_coprime"] = audit.all_coprime;
    return j;
}

inline ordered_json det_verification_json(const DetVerification& v, const FactorAudit& audit) {
    ordered_json primes = ordered_json::array();
    for (const auto& pc : v.primes)
        primes.push_back({{"r", pc.r},
                          {"formula_mod", pc.formula_mod},
                          {"oracle_mod", pc.oracle_mod},
                          {"ok", pc.ok}});
    ordered_json j;
    j["theorem"] = v.theorem;
    j["p"] = v.p;
    j["q"] = v.q;
    j["class"] = to_string(v.cls);
    j["primes"] = std::move(primes);
    if (v.has_exact)
        j["exact"] = {{"det", to_decimal(v.exact_det)}, {"ok", v.exact_ok}};
    j["sign"] = v.sign;
    j["audit"] = audit_json(audit);
    return j;
}

} // namespace cyclodyne
