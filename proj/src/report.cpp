#include "germforge/report.hpp"

#include <cmath>
#include <cstdio>

#include "germforge/parse.hpp"

namespace germforge {

namespace {

Json tagged(const std::string& value, const char* certification) {
    Json j;
    j["value"] = value;
    j["certification"] = certification;
    return j;
}

Json tagged(long value, const char* certification) {
    Json j;
    j["value"] = value;
    j["certification"] = certification;
    return j;
}

const char* verdict_name(ExponentVerdict v) {
    switch (v) {
        case ExponentVerdict::FiniteEstimated: return "finite_estimated";
        case ExponentVerdict::LikelyInfinite: return "likely_infinite";
        default: return "withheld";
    }
}

} // namespace

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Json exponent_json(const ExponentEstimate& e) {
    Json j;
    j["verdict"] = verdict_name(e.verdict);
    j["fitted_alpha"] = tagged(format_double(e.fitted_alpha), "fitted");
    j["fit_residual"] = tagged(format_double(e.fit_residual), "fitted");
    if (e.arc_lower_bound)
        j["arc_lower_bound"] = tagged(rational_to_string(*e.arc_lower_bound), "exact");
    else
        j["arc_lower_bound"] = nullptr;
    j["witness_arc"] = e.witness_arc ? Json(e.witness_arc->to_string()) : Json(nullptr);
    j["floor_clamped"] = e.floor_clamped;
    j["consistency_warning"] = e.consistency_warning;
    return j;
}

Json dim_json(const DimResult& d) {
    Json j;
    j["status"] = d.finite() ? "finite" : "unstabilized";
    j["dim"] = tagged(static_cast<long>(d.dim), "exact");
    j["n_max"] = d.n_max;
    Json trace = Json::array();
    for (auto [n, dn] : d.trace) trace.push_back(Json::array({n, dn}));
    j["trace"] = trace;
    return j;
}

Json determinacy_json(const DeterminacyReport& r) {
    Json j;
    j["k"] = tagged(static_cast<long>(r.k), r.rigorous ? "exact" : "fitted");
    j["rigorous"] = r.rigorous;
    j["alpha_tilde"] = exponent_json(r.alpha_tilde);
    j["beta"] = exponent_json(r.beta);
    return j;
}

Json regularity_json(const RegularityVerdict& v) {
    Json j;
    j["corank0"] = v.corank0;
    const char* name = "inconclusive";
    if (v.classification == RegularityClass::SmoothEmbedding) name = "smooth_embedding";
    if (v.classification == RegularityClass::NotLipschitzEmbedding)
        name = "not_lipschitz_embedding";
    Json c;
    c["value"] = name;
    c["certification"] = v.corank0 ? "exact" : "fitted";
    j["classification"] = c;
    j["double_point"] = exponent_json(v.double_point_estimate);
    return j;
}

Json link_json(const PolyMap& f, double epsilon, std::uint64_t seed,
               const EstimatorConfig& cfg, std::string* svg_out) {
    Json j;
    MilnorProbeResult probe = milnor_radius_probe(f, epsilon, cfg);
    j["epsilon"] = tagged(format_double(epsilon), "heuristic");
    j["milnor_probe"] = probe.probable ? "probable" : "failed";
    if (!probe.probable) {
        j["failure_point"] = Json::array({format_double(probe.failure_point[0]),
                                          format_double(probe.failure_point[1])});
        return j;
    }
    auto fiber = trace_fiber(f, epsilon, cfg);
    LinkCurve link = embed_link(f, fiber, epsilon);
    KnotDiagram raw = project_diagram(link, seed);
    KnotDiagram d = simplify_diagram(raw);
    LaurentPoly alex = alexander_polynomial(d);
    j["crossing_count"] = d.crossing_count;
    j["gauss_code"] = d.gauss_code;
    Json pd = Json::array();
    for (const auto& x : d.pd_code) pd.push_back(Json::array({x[0], x[1], x[2], x[3]}));
    j["pd_code"] = pd;
    j["alexander"] = tagged(alex.to_string(), "exact");
    j["determinant"] = tagged(knot_determinant(alex).get_str(), "exact");
    if (svg_out) *svg_out = diagram_svg(raw);
    return j;
}

Json analysis_report(const PolyMap& f, const AnalysisOptions& opt) {
    Json j;
    j["schema"] = 1;

    Json input;
    input["map"] = render(f);
    input["n"] = f.domain_dim();
    input["p"] = f.codomain_dim();
    input["t"] = opt.t ? Json(rational_to_string(*opt.t)) : Json(nullptr);
    j["input"] = input;

    j["corank"] = tagged(static_cast<long>(corank(f)), "exact");
    j["delta"] = dim_json(quotient_dim(double_point_ideal(f), opt.nmax));

    Json exps;
    exps["isolated_singularity"] =
        exponent_json(estimate_exponent_at_zero(isolated_singularity_system(f), opt.estimator));
    exps["double_point"] = exponent_json(estimate_double_point_exponent(f, opt.estimator));
    exps["gradient"] = exponent_json(estimate_exponent_at_zero(grad_norm_sq(f), opt.estimator));
    j["exponents"] = exps;

    if (f.domain_dim() == 2 && f.codomain_dim() == 4) {
        try {
            j["determinacy"] = determinacy_json(c0_determinacy_degree(f, opt.estimator));
        } catch (const OutOfScope&) {
            j["determinacy"] = nullptr;
        }
    } else {
        j["determinacy"] = nullptr;
    }

    j["regularity"] = regularity_json(classify_regularity(f, opt.estimator));

    if (opt.with_link && f.domain_dim() == 2 && f.codomain_dim() == 4)
        j["link"] = link_json(f, opt.epsilon, opt.seed, opt.estimator);
    else
        j["link"] = nullptr;

    Json meta;
    meta["tool_version"] = kToolVersion;
    meta["seed"] = opt.seed;
    j["meta"] = meta;
    return j;
}

CompareVerdict compare_links(const Json& report_a, const Json& report_b) {
    CompareVerdict v;
    const Json& la = report_a.at("link");
    const Json& lb = report_b.at("link");
    if (la.is_null() || lb.is_null()) return v;
    std::string aa = la.at("alexander").at("value").get<std::string>();
    std::string ab = lb.at("alexander").at("value").get<std::string>();
    if (aa != ab) {
        v.distinguished = true;
        v.invariant = "alexander";
        return v;
    }
    return v;
}

} // namespace germforge
