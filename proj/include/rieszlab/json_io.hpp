/*
   Copyright 2026 The rieszlab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "rieszlab/circle_riesz.hpp"
#include "rieszlab/estimators.hpp"
#include "rieszlab/harmonics.hpp"
#include "rieszlab/monomial_poly.hpp"
#include "rieszlab/rw_search.hpp"
#include "rieszlab/sphere_riesz.hpp"

namespace rieszlab {

using json = nlohmann::json;

// --- polynomials: arrays of {k | exponents, re, im} records ---------------

inline json to_json(const LaurentPoly& f) {
    json records = json::array();
    for (const auto& [k, c] : f.coeffs())
        records.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
    return records;
}

inline LaurentPoly laurent_from_json(const json& records) {
    LaurentPoly f;
    for (const auto& rec : records)
        f.add(rec.at("k").get<std::int64_t>(),
              cplx(rec.at("re").get<double>(), rec.value("im", 0.0)));
    return f;
}

inline json to_json(const MonomialPoly& f) {
    json records = json::array();
    for (const auto& [key, c] : f.coeffs()) {
        const Exponents e = Exponents::unpack(key);
        records.push_back({{"exponents", {e.a1, e.a2, e.b1, e.b2}},
                           {"re", c.real()},
                           {"im", c.imag()}});
    }
    return records;
}

inline MonomialPoly monomial_from_json(const json& records) {
    MonomialPoly f;
    for (const auto& rec : records) {
        const auto& e = rec.at("exponents");
        f.add({e.at(0).get<std::uint16_t>(), e.at(1).get<std::uint16_t>(),
               e.at(2).get<std::uint16_t>(), e.at(3).get<std::uint16_t>()},
              cplx(rec.at("re").get<double>(), rec.value("im", 0.0)));
    }
    return f;
}

// --- circle spec: {"J": [...], "c": [[re, im], ...]} -----------------------

inline json to_json(const CircleRieszSpec& spec) {
    json c = json::array();
    for (const cplx& v : spec.coefficients) c.push_back({v.real(), v.imag()});
    return {{"J", spec.frequencies}, {"c", c}};
}

inline CircleRieszSpec circle_spec_from_json(const json& j) {
    CircleRieszSpec spec;
    spec.frequencies = j.at("J").get<std::vector<std::int64_t>>();
    for (const auto& entry : j.at("c")) {
        if (entry.is_array())
            spec.coefficients.emplace_back(entry.at(0).get<double>(),
                                           entry.size() > 1 ? entry.at(1).get<double>() : 0.0);
        else
            spec.coefficients.emplace_back(entry.get<double>(), 0.0);
    }
    validate(spec);
    return spec;
}

// --- RW certificates --------------------------------------------------------

inline json to_json(const RWCertificate& cert) {
    json coeffs = json::array();
    for (const cplx& c : cert.coeffs) coeffs.push_back({c.real(), c.imag()});
    return {{"j", cert.degree},       {"coeffs", coeffs},
            {"l2_norm", cert.l2_norm}, {"sup_bound", cert.sup_bound},
            {"delta", cert.delta},     {"seed", cert.seed}};
}

inline RWCertificate rw_certificate_from_json(const json& j) {
    RWCertificate cert;
    cert.degree = j.at("j").get<int>();
    for (const auto& entry : j.at("coeffs"))
        cert.coeffs.emplace_back(entry.at(0).get<double>(),
                                 entry.size() > 1 ? entry.at(1).get<double>() : 0.0);
    cert.l2_norm = j.at("l2_norm").get<double>();
    cert.sup_bound = j.at("sup_bound").get<double>();
    cert.delta = j.at("delta").get<double>();
    cert.seed = j.value("seed", std::uint64_t(0));
    return cert;
}

// --- Riesz triples ----------------------------------------------------------
//
// {"delta": d, "factors": [{"j": n, "a": [re, im],
//   "R": {"poly": [...]} | {"monomial_seed": s} | {"rw_certificate": path}}]}

inline json to_json(const RieszTriple& triple) {
    json factors = json::array();
    for (const RieszFactor& f : triple.factors)
        factors.push_back({{"j", f.degree},
                           {"a", {f.a.real(), f.a.imag()}},
                           {"R", {{"poly", to_json(f.r.poly)}}}});
    return {{"delta", triple.delta}, {"factors", factors}};
}

inline RieszTriple triple_from_json(const json& j, const std::string& base_dir = ".") {
    RieszTriple triple;
    triple.delta = j.value("delta", 0.0);
    for (const auto& fj : j.at("factors")) {
        RieszFactor factor;
        factor.degree = fj.at("j").get<std::int64_t>();
        const auto& a = fj.at("a");
        if (a.is_array())
            factor.a = cplx(a.at(0).get<double>(), a.size() > 1 ? a.at(1).get<double>() : 0.0);
        else
            factor.a = cplx(a.get<double>(), 0.0);

        const auto& r = fj.at("R");
        if (r.contains("poly")) {
            factor.r = BidegreePoly(int(factor.degree), 0, monomial_from_json(r.at("poly")));
        } else if (r.contains("monomial_seed")) {
            factor.r = monomial_rw(int(factor.degree), r.at("monomial_seed").get<int>()).to_poly();
        } else if (r.contains("rw_certificate")) {
            const std::string path = base_dir + "/" + r.at("rw_certificate").get<std::string>();
            std::ifstream in(path);
            if (!in) throw std::invalid_argument("triple_from_json: cannot open " + path);
            json cj;
            in >> cj;
            const RWCertificate cert = rw_certificate_from_json(cj);
            if (cert.degree != int(factor.degree))
                throw std::invalid_argument("triple_from_json: certificate degree mismatch");
            factor.r = cert.to_poly();
        } else {
            throw std::invalid_argument("triple_from_json: factor R needs poly, monomial_seed "
                                        "or rw_certificate");
        }
        triple.factors.push_back(std::move(factor));
    }
    return triple;
}

// --- torus measures ---------------------------------------------------------

inline json to_json(const TorusMeasureSpec& spec) {
    json factors = json::array();
    for (const TorusFactor& f : spec.factors) {
        switch (f.kind) {
            case TorusFactor::Kind::point_mass:
                factors.push_back({{"kind", "point_mass"}, {"angle", f.angle}});
                break;
            case TorusFactor::Kind::lebesgue:
                factors.push_back({{"kind", "lebesgue"}});
                break;
            case TorusFactor::Kind::density:
                factors.push_back({{"kind", "density"}, {"coeffs", to_json(f.density)}});
                break;
        }
    }
    return {{"factors", factors}};
}

inline TorusMeasureSpec torus_spec_from_json(const json& j) {
    TorusMeasureSpec spec;
    for (const auto& fj : j.at("factors")) {
        const std::string kind = fj.at("kind").get<std::string>();
        TorusFactor factor;
        if (kind == "point_mass") {
            factor.kind = TorusFactor::Kind::point_mass;
            factor.angle = fj.value("angle", 0.0);
        } else if (kind == "lebesgue") {
            factor.kind = TorusFactor::Kind::lebesgue;
        } else if (kind == "density") {
            factor.kind = TorusFactor::Kind::density;
            factor.density = laurent_from_json(fj.at("coeffs"));
        } else {
            throw std::invalid_argument("torus_spec_from_json: unknown factor kind " + kind);
        }
        spec.factors.push_back(std::move(factor));
    }
    return spec;
}

// --- basis cache ------------------------------------------------------------

inline json to_json(const BasisCache& cache) {
    json entries = json::array();
    for (const auto& [pq, basis] : cache.entries()) {
        json elements = json::array();
        for (const BidegreePoly& b : basis.elements) elements.push_back(to_json(b.poly));
        entries.push_back({{"p", pq.first}, {"q", pq.second}, {"elements", elements}});
    }
    return {{"version", kBasisCacheVersion}, {"entries", entries}};
}

inline void load_basis_cache(BasisCache& cache, const json& j) {
    if (j.value("version", "") != kBasisCacheVersion)
        throw std::invalid_argument("basis cache: version mismatch");
    for (const auto& entry : j.at("entries")) {
        const int p = entry.at("p").get<int>();
        const int q = entry.at("q").get<int>();
        HpqBasis basis{p, q, 2, {}};
        for (const auto& ej : entry.at("elements"))
            basis.elements.emplace_back(p, q, monomial_from_json(ej));
        cache.put(p, q, std::move(basis));
    }
}

// --- reports ----------------------------------------------------------------

inline json to_json(const CircleDimensionReport& r) {
    return {{"alpha0", r.alpha0},
            {"energy_dim_lb", r.energy_dim_lb},
            {"hausdorff_lb", r.hausdorff_lb},
            {"simplified_term", r.simplified_term},
            {"simplified_lb", r.simplified_lb},
            {"K", r.truncation},
            {"window", r.window}};
}

inline json to_json(const SphereDimensionReport& r) {
    return {{"alpha0", r.alpha0},
            {"energy_lb", r.energy_lb},
            {"hausdorff_lb", r.hausdorff_lb},
            {"simplified_term", r.simplified_term},
            {"simplified_lb", r.simplified_lb},
            {"band_floor", r.band_floor},
            {"final_lower_bound", r.final_lb},
            {"K", r.truncation},
            {"window", r.window}};
}

inline json to_json(const McEstimate& e) {
    return {{"estimate", e.estimate}, {"stderr", e.stderr_}, {"pairs", e.pairs}};
}

inline json to_json(const DisintegrationResult& r) {
    return {{"lhs", {r.lhs.real(), r.lhs.imag()}},
            {"rhs", {r.rhs.real(), r.rhs.imag()}},
            {"stderr", r.stderr_},
            {"slices", r.slices}};
}

inline json to_json(const DimensionEstimate& e) {
    return {{"method", e.method},
            {"value", e.value},
            {"stderr", e.stderr_},
            {"log_scale", e.log_scale},
            {"log_count", e.log_count},
            {"degenerate", e.degenerate}};
}

inline json to_json(const TripleValidationReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"factor", v.factor_index}, {"what", v.what}});
    return {{"valid", r.valid()},
            {"violations", violations},
            {"l2_per_factor", r.l2_per_factor},
            {"sup_per_factor", r.sup_per_factor}};
}

inline json to_json(const BandedSpectrumReport& r) {
    return {{"epsilon0", r.epsilon0},
            {"banded", r.banded},
            {"witness", {r.witness.first, r.witness.second}}};
}

inline json to_json(const PlhExampleReport& r) {
    return {{"n", r.n},
            {"pluriharmonic", r.pluriharmonic.pluriharmonic},
            {"max_violation", r.pluriharmonic.max_violation},
            {"increment_ratio_below", r.increment_ratio_below},
            {"increment_ratio_above", r.increment_ratio_above},
            {"relative_increment_below", r.relative_increment_below},
            {"relative_increment_above", r.relative_increment_above},
            {"box_dimension", to_json(r.box)}};
}

}  // namespace rieszlab
