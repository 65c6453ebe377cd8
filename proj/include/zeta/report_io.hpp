#pragma once

// File formats: parameter and design-spec JSON in, CSV/JSON artifacts out.
// Every artifact carries the toolkit version and the resolved parameters.

#include "zeta/comparison.hpp"
#include "zeta/crosscheck.hpp"
#include "zeta/design.hpp"
#include "zeta/model.hpp"
#include "zeta/simulator.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeta::io {

inline constexpr const char* kVersion = "0.1.0";

/// Missing, unreadable, unwritable or unparsable files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip-stable text for CSV cells ("%.12g").
[[nodiscard]] std::string num(double v);

[[nodiscard]] nlohmann::json load_json(const std::filesystem::path& file);
void save_text(const std::filesystem::path& file, const std::string& text);

/// Flat object of numbers. Non-numeric values are validation errors.
[[nodiscard]] std::map<std::string, double> param_map(const nlohmann::json& j);
[[nodiscard]] ConverterParams read_params(const std::filesystem::path& file);
[[nodiscard]] design::DesignSpec design_spec_from(const nlohmann::json& j);

[[nodiscard]] nlohmann::json params_json(const ConverterParams& p);
[[nodiscard]] nlohmann::json report_json(const SteadyStateReport& r);
[[nodiscard]] nlohmann::json metrics_json(const SimMetrics& m);
[[nodiscard]] nlohmann::json design_json(const design::DesignResult& r);
[[nodiscard]] nlohmann::json verification_json(const std::vector<design::Verification>& v);
/// Counts and gain of each topology at (duty, n).
[[nodiscard]] nlohmann::json topology_table_json(double duty, double n);

/// `{"version": ..., "params": ...}` plus the given payload fields.
[[nodiscard]] nlohmann::json stamped(const nlohmann::json& params, nlohmann::json payload);

/// CSV writers. The leading `#` lines carry the version and inputs.
void write_trace_csv(std::ostream& os, const sim::Trace& trace, const ConverterParams& p);
void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows, const ConverterParams& p);
void write_gains_csv(std::ostream& os, const std::vector<comparison::GainRow>& rows, double n);
void write_topology_csv(std::ostream& os, double duty, double n);

}  // namespace zeta::io
