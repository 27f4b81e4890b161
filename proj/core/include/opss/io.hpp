// io.hpp — CSV/JSON exports and run manifests
//
// CSV files use '.' decimals, ',' separators, and a header row. Numeric
// output is shortest-round-trip formatted so identical runs produce
// byte-identical files.

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "opss/open_system.hpp"
#include "opss/optimizer.hpp"
#include "opss/robustness.hpp"
#include "opss/spectrum.hpp"

#include "json.hpp"

namespace opss {

std::string format_double(double value);

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);
void write_csv_row(std::ostream& out, const std::vector<double>& cells);

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumSlice>& slices);
void write_landscape_csv(std::ostream& out, const FidelityLandscape& landscape);
void write_trajectory_csv(std::ostream& out, const EvolutionResult& result,
                          const std::vector<std::string>& population_labels);
void write_flux_trace_csv(std::ostream& out, const FluxTrace& trace,
                          const std::vector<std::string>& population_labels);
void write_flux_landscape_csv(std::ostream& out, const FluxLandscape& landscape);
void write_window_stats_csv(std::ostream& out,
                            const std::vector<std::tuple<std::string, int, std::string, WindowStats>>& rows);

nlohmann::json sequence_to_json(const OpssSequence& seq, const std::string& model_tag);
OpssSequence sequence_from_json(const nlohmann::json& j);

nlohmann::json candidate_to_json(const Candidate& candidate, const std::string& model_tag,
                                 std::uint64_t seed, const CostWeights& weights,
                                 const SampleSpec& sample, ErrorAxis axis);

// Write-then-rename so partially written files never appear under the final name.
void atomic_write_text(const std::filesystem::path& path, const std::string& text);
void atomic_write_json(const std::filesystem::path& path, const nlohmann::json& j);

// FNV-1a over the canonical dump; stable across platforms and runs.
std::string config_hash(const nlohmann::json& config);

} // namespace opss
