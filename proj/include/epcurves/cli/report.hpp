#pragma once

// End-to-end classification and its structured report.

#include <cstdint>
#include <sstream>
#include <string>

#include "epcurves/fibration.hpp"
#include "json.hpp"

namespace epc::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct ClassifyOptions {
    unsigned precision = 128;
    double tol_relations = 1e-8;
    double tol_identities = 1e-10;
    std::uint64_t seed = 20250813;
    bool permutation_search = false;
    int samples = 100;
    int points = 10;
};

enum class Conclusion { NoCompactCurves, ContainsTori, Undetermined, NotAdmissible };

inline const char* conclusion_name(Conclusion c) {
    switch (c) {
        case Conclusion::NoCompactCurves: return "NoCompactCurves";
        case Conclusion::ContainsTori: return "ContainsTori";
        case Conclusion::Undetermined: return "Undetermined";
        case Conclusion::NotAdmissible: return "NotAdmissible";
    }
    return "unknown";
}

struct Classification {
    Conclusion conclusion = Conclusion::NotAdmissible;
    nlohmann::ordered_json report;
    AdmissibilityReport admissibility;
    std::optional<CurveVerdict> curve;
    std::optional<LeafWord> leaf;
    std::vector<FibrationVerdict> fibrations;
    std::vector<GeometryCheck> geometry;
};

using Json = nlohmann::ordered_json;

inline Json to_json(const Integer& z) {
    if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max())
        return z.convert_to<long long>();
    return z.str();
}

inline Json to_json(const Rational& q) { return q.str(); }

inline Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline Json to_json(const IntVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

template <class Real>
std::string decimal(const Real& x, int digits = 30) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

inline Json to_json(const AdmissibilityReport& r) {
    Json j;
    j["admissible"] = r.admissible();
    j["reason"] = reason_code(r.reason);
    j["dimension"] = r.dim;
    j["n"] = r.n;
    j["det"] = to_json(r.det);
    j["is_unimodular"] = r.is_unimodular;
    j["charpoly"] = r.charpoly.to_string();
    j["real_root_count"] = r.real_root_count;
    if (r.alpha) {
        Json a;
        a["defining"] = r.alpha->defining.to_string();
        a["interval"] = {to_json(r.alpha->iv.lo), to_json(r.alpha->iv.hi)};
        a["interval_convention"] = "(lo, hi]";
        a["approx"] = decimal(Real128(r.alpha->iv.midpoint()), 20);
        a["minpoly"] = r.alpha->minpoly ? Json(r.alpha->minpoly->to_string()) : Json(nullptr);
        a["multiplicity"] = r.alpha_multiplicity;
        j["alpha"] = std::move(a);
    } else {
        j["alpha"] = nullptr;
    }
    j["alpha_simple"] = r.alpha_simple;
    j["alpha_positive"] = r.alpha_positive;
    j["alpha_not_one"] = r.alpha_not_one;
    j["note"] = r.note;
    return j;
}

inline Json to_json(const CurveVerdict& v) {
    Json j;
    j["outcome"] = outcome_name(v.outcome);
    j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
    j["minpoly"] = v.minpoly.to_string();
    j["minpoly_degree"] = v.minpoly_degree;
    j["kernel_dimension"] = v.kernel_dimension;
    j["adjugate_column"] = v.eigenvector.adjugate_column + 1;
    Json comps = Json::array();
    for (std::size_t i = 0; i < v.eigenvector.size(); ++i) {
        Json c = Json::array();
        for (const auto& q : v.eigenvector.component(i)) c.push_back(to_json(q));
        comps.push_back(std::move(c));
    }
    j["eigenvector_power_basis"] = std::move(comps);
    j["note"] = v.note;
    return j;
}

inline Json to_json(const LeafWord& w) {
    Json j;
    Json e = Json::array();
    for (long x : w.exponents) e.push_back(x);
    j["exponents"] = std::move(e);
    std::string word;
    for (std::size_t i = 1; i < w.exponents.size(); ++i) {
        if (w.exponents[i] == 0) continue;
        if (!word.empty()) word += " ";
        word += "g" + std::to_string(i);
        if (w.exponents[i] != 1) word += "^" + std::to_string(w.exponents[i]);
    }
    j["word"] = word.empty() ? "id" : word;
    j["order"] = "left-to-right application, g0 first";
    j["note"] = w.note;
    return j;
}

inline Json to_json(const FibrationVerdict& v) {
    Json j;
    j["applies"] = v.applies;
    j["kind"] = split_kind_name(v.kind);
    j["k"] = v.k;
    j["split"] = v.split;
    j["base_admissible"] = v.base_report.admissible();
    j["base_reason"] = reason_code(v.base_report.reason);
    j["base_charpoly"] = v.base_report.charpoly.to_string();
    j["p_spectrum_ok"] = v.p_spectrum_ok;
    Json checks = Json::array();
    for (const auto& c : v.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["passed"] = c.passed;
        cj["deviation"] = c.deviation ? Json(*c.deviation) : Json(nullptr);
        cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["fiber"] = v.fiber;
    j["base"] = v.base;
    j["note"] = v.note;
    return j;
}

inline Json to_json(const GeometryCheck& c) {
    Json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["deviation"] = c.deviation;
    j["tolerance"] = c.tolerance;
    j["detail"] = c.detail;
    return j;
}

template <class Real>
Classification classify_at(const IntMatrix& m, const ClassifyOptions& o) {
    Classification c;
    c.admissibility = verify_admissible(m);
    if (c.admissibility.admissible()) {
        c.curve = independence_test(m, c.admissibility);
        c.leaf = leaf_return_word(*c.curve);
        for (const auto& sp : detect_block_structure(m, {o.permutation_search, true}))
            c.fibrations.push_back(certify_fibration<Real>(m, sp, o.tol_relations, o.points, o.seed + 7));
        GeometryOptions go;
        go.tol_relations = o.tol_relations;
        go.tol_identities = o.tol_identities;
        go.samples = o.samples;
        go.points = o.points;
        go.seed = o.seed;
        c.geometry = run_geometry_checks(build_ep_data<Real>(m, c.admissibility), go);
    }

    const bool tori = std::any_of(c.fibrations.begin(), c.fibrations.end(), [](const auto& f) { return f.applies; });
    if (!c.admissibility.admissible())
        c.conclusion = Conclusion::NotAdmissible;
    else if (c.curve->outcome == CurveOutcome::Independent) {
        if (tori) throw ConsistencyError("classify: independent components together with a certified torus fibration");
        c.conclusion = Conclusion::NoCompactCurves;
    } else {
        c.conclusion = tori ? Conclusion::ContainsTori : Conclusion::Undetermined;
    }
    return c;
}

/// Runs the full pipeline at the requested precision (rounded up to 128,
/// 256 or 512 bits) and assembles the report.
inline Classification classify(const IntMatrix& m, const ClassifyOptions& o, const std::string& source = "<input>") {
    check_shape(m);
    Classification c = with_precision(o.precision, [&]<class Real>() { return classify_at<Real>(m, o); });

    Json r;
    r["schema"] = kSchemaVersion;
    r["input"] = {{"source", source}, {"dimension", m.rows()}, {"n", (m.rows() - 1) / 2}, {"matrix", to_json(m)}};
    r["admissibility"] = to_json(c.admissibility);
    r["curve_verdict"] = c.curve ? to_json(*c.curve) : Json(nullptr);
    r["leaf_word"] = c.leaf ? to_json(*c.leaf) : Json(nullptr);
    Json fib = Json::array();
    std::size_t best_k = 0;
    for (const auto& f : c.fibrations) {
        fib.push_back(to_json(f));
        if (f.applies && f.k > best_k) best_k = f.k;
    }
    r["fibration"] = std::move(fib);
    r["max_certified_k"] = best_k;
    Json geo = Json::array();
    for (const auto& g : c.geometry) geo.push_back(to_json(g));
    r["geometry_checks"] = std::move(geo);
    r["conclusion"] = conclusion_name(c.conclusion);
    Json notes = Json::array();
    switch (c.conclusion) {
        case Conclusion::NoCompactCurves:
            notes.push_back("The components of the alpha-eigenvector are linearly independent over Z, so T_M has no "
                            "compact complex curves.");
            notes.push_back("Informational: an Endo-Pajitnov manifold without compact complex curves contains no "
                            "closed complex surfaces except Inoue surfaces (not checked here).");
            break;
        case Conclusion::ContainsTori:
            notes.push_back("T_M is a holomorphic fiber bundle over a smaller Endo-Pajitnov manifold with complex "
                            "tori of dimension " + std::to_string(best_k) + " as fibers.");
            break;
        case Conclusion::Undetermined:
            notes.push_back("The components are dependent over Z, so the no-curves criterion does not apply, and no "
                            "torus fibration was certified; curves are not excluded.");
            break;
        case Conclusion::NotAdmissible:
            notes.push_back(std::string("The matrix does not define an Endo-Pajitnov manifold: ") +
                            reason_code(c.admissibility.reason) + ".");
            break;
    }
    r["notes"] = std::move(notes);
    r["provenance"] = {{"tool", "epcurves"},
                       {"version", kToolVersion},
                       {"precision_bits", o.precision},
                       {"working_precision_bits", precision_tier(o.precision)},
                       {"tol_relations", o.tol_relations},
                       {"tol_identities", o.tol_identities},
                       {"seed", o.seed},
                       {"lll_delta", "99/100"},
                       {"samples", o.samples},
                       {"permutation_search", o.permutation_search}};
    c.report = std::move(r);
    return c;
}

/// Short human-readable summary of a report.
inline std::string summary(const Classification& c) {
    const Json& r = c.report;
    std::ostringstream os;
    os << "input: " << r["input"]["source"].get<std::string>() << " (" << r["input"]["dimension"].get<std::size_t>()
       << "x" << r["input"]["dimension"].get<std::size_t>() << ")\n";
    const auto& a = c.admissibility;
    os << "charpoly: " << a.charpoly.to_string() << "\n";
    os << "admissible: " << (a.admissible() ? "yes" : "no") << " (" << reason_code(a.reason) << ")\n";
    if (a.alpha) os << "alpha: " << r["admissibility"]["alpha"]["approx"].get<std::string>() << "\n";
    if (c.curve) {
        os << "curve test: " << outcome_name(c.curve->outcome) << ", deg minpoly = " << c.curve->minpoly_degree;
        if (c.curve->witness) {
            os << ", witness (";
            for (std::size_t i = 0; i < c.curve->witness->size(); ++i) os << (i ? "," : "") << (*c.curve->witness)[i];
            os << ")";
        }
        os << "\n";
    }
    if (c.leaf) os << "leaf-return word: " << r["leaf_word"]["word"].get<std::string>() << "\n";
    for (const auto& f : c.fibrations)
        os << "fibration (" << split_kind_name(f.kind) << ", k = " << f.k << "): " << (f.applies ? "certified" : "not certified")
           << "\n";
    std::size_t failed = 0;
    for (const auto& g : c.geometry) failed += g.passed ? 0 : 1;
    if (!c.geometry.empty())
        os << "geometry checks: " << c.geometry.size() - failed << "/" << c.geometry.size() << " passed\n";
    os << "conclusion: " << conclusion_name(c.conclusion) << "\n";
    return os.str();
}

}  // namespace epc::cli
