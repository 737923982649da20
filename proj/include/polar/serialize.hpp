#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polar/bursts.hpp"
#include "polar/measures.hpp"

namespace polar {

/// Stable field order of a flattened MeasureReport.
inline constexpr std::array<std::string_view, 10> kReportFields = {
    "n", "K", "bc", "dip_stat", "dip_pvalue", "dfu_raw", "dfu_display", "a_raw", "a_display",
    "balance"};

/// Values in kReportFields order; absent measures become empty cells.
[[nodiscard]] std::vector<std::string> report_cells(const MeasureReport& report);

/// Flat object keyed by kReportFields; absent measures are null.
[[nodiscard]] nlohmann::ordered_json report_json(const MeasureReport& report);

[[nodiscard]] nlohmann::ordered_json params_json(const BurstParams& params);

/// Params echo, phi, spans, peak_count and the skipped flag/reason.
[[nodiscard]] nlohmann::ordered_json burst_json(const BurstAnalysis& analysis,
                                                const BurstParams& params);

/// Quotes a CSV cell when it contains a comma, quote or newline.
[[nodiscard]] std::string csv_escape(std::string_view cell);

[[nodiscard]] std::string csv_join(const std::vector<std::string>& cells);

}  // namespace polar
