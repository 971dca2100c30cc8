#pragma once

#include "json.hpp"
#include "skewcp/io.hpp"

namespace skewcp::detail {

nlohmann::ordered_json report_json(const VerificationReport& report, bool include_timing);

}  // namespace skewcp::detail
