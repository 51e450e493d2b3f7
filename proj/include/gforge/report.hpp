#pragma once

#include <string>

#include <json.hpp>

#include "gforge/backend.hpp"
#include "gforge/constructions.hpp"
#include "gforge/fibre.hpp"
#include "gforge/matrix.hpp"
#include "gforge/quotients.hpp"
#include "gforge/rips.hpp"
#include "gforge/smallcanc.hpp"

namespace gforge {

using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "gforge-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

// Skeleton every CLI report shares. Timing lives under "timing" and is the
// one subtree excluded from determinism comparisons.
Json report_base(const std::string& tool);

const char* wp_status_name(WpStatus s);

Json to_json(const WpResult& r);
Json to_json(const PieceReport& r);
Json to_json(const H1Result& r);
Json to_json(const PermSweepResult& r, const Presentation& pres);
Json to_json(const ZnCountResult& r);
Json to_json(const EpiCheckReport& r, const Alphabet& dom, const Alphabet& cod);
Json to_json(const NielsenOrbitReport& r);
Json to_json(const FreeImageReport& r);
Json to_json(const NormalityReport& r, const Alphabet& alpha);
Json to_json(const SubdirectReport& r);
Json fibre_summary(const FibrePresentation& fp);

}  // namespace gforge
