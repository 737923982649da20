#include "polar/serialize.hpp"

#include <optional>

#include "polar/io.hpp"

namespace polar {

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

nlohmann::ordered_json value(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::vector<std::string> report_cells(const MeasureReport& r) {
  return {std::to_string(r.n), std::to_string(r.bins), cell(r.bc),       cell(r.dip_stat),
          cell(r.dip_pvalue),  cell(r.dfu_raw),         cell(r.dfu_display), cell(r.a_raw),
          cell(r.a_display),   cell(r.balance)};
}

nlohmann::ordered_json report_json(const MeasureReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["K"] = r.bins;
  j["bc"] = value(r.bc);
  j["dip_stat"] = value(r.dip_stat);
  j["dip_pvalue"] = value(r.dip_pvalue);
  j["dfu_raw"] = value(r.dfu_raw);
  j["dfu_display"] = value(r.dfu_display);
  j["a_raw"] = value(r.a_raw);
  j["a_display"] = value(r.a_display);
  j["balance"] = value(r.balance);
  return j;
}

nlohmann::ordered_json params_json(const BurstParams& p) {
  nlohmann::ordered_json j;
  j["s"] = p.s;
  j["gamma"] = p.gamma;
  j["alpha"] = p.alpha;
  j["k"] = p.k;
  j["epsilon"] = p.epsilon;
  j["rounding_decimals"] = p.rounding_decimals;
  j["peak_level"] = p.peak_level;
  j["min_users"] = p.min_users;
  j["max_dedup_passes"] = p.max_dedup_passes;
  return j;
}

nlohmann::ordered_json burst_json(const BurstAnalysis& a, const BurstParams& params) {
  nlohmann::ordered_json j;
  j["params"] = params_json(params);
  j["phi"] = a.phi;
  auto spans = nlohmann::ordered_json::array();
  for (const auto& s : a.spans) {
    spans.push_back({{"level", s.level}, {"start", s.start}, {"end", s.end}});
  }
  j["spans"] = std::move(spans);
  j["peak_count"] = a.peak_count ? nlohmann::ordered_json(*a.peak_count) : nlohmann::ordered_json(nullptr);
  j["skipped"] = a.is_skipped();
  if (a.skipped) j["skipped_reason"] = *a.skipped;
  return j;
}

std::string csv_escape(std::string_view cell) {
  if (cell.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(cell);
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(cells[i]);
  }
  return out;
}

}  // namespace polar
