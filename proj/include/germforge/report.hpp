#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "germforge/alexander.hpp"
#include "germforge/localalgebra.hpp"
#include "germforge/regularity.hpp"

namespace germforge {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// Fixed 12-significant-digit rendering; floats are emitted as JSON strings
// so reports are byte-stable across platforms.
std::string format_double(double v);

Json exponent_json(const ExponentEstimate& e);
Json dim_json(const DimResult& d);
Json determinacy_json(const DeterminacyReport& r);
Json regularity_json(const RegularityVerdict& v);

struct AnalysisOptions {
    std::optional<Rational> t;
    std::uint64_t seed = 0;
    int nmax = 14;
    double epsilon = 0.3;
    bool with_link = false;
    EstimatorConfig estimator;
};

// Full report: input echo, corank, delta, the three exponents, determinacy
// and regularity when applicable, link invariants when requested.
Json analysis_report(const PolyMap& f, const AnalysisOptions& opt);

Json link_json(const PolyMap& f, double epsilon, std::uint64_t seed,
               const EstimatorConfig& cfg, std::string* svg_out = nullptr);

struct CompareVerdict {
    bool distinguished = false;
    std::string invariant; // set when distinguished
};

// Distinguished when the normalized Alexander polynomials differ; Consistent
// otherwise (never claims equivalence).
CompareVerdict compare_links(const Json& report_a, const Json& report_b);

} // namespace germforge
