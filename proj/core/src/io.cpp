#include "opss/io.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace opss {

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), result.ptr);
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << cells[i];
    }
    out << '\n';
}

void write_csv_row(std::ostream& out, const std::vector<double>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << format_double(cells[i]);
    }
    out << '\n';
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumSlice>& slices) {
    if (slices.empty()) {
        out << "ratio,gap\n";
        return;
    }
    std::vector<std::string> header{"ratio"};
    for (Eigen::Index n = 0; n < slices.front().eigenvalues.size(); ++n) {
        header.push_back("E_" + std::to_string(n));
    }
    header.push_back("gap");
    write_csv_row(out, header);
    for (const auto& slice : slices) {
        std::vector<double> row{slice.ratio};
        for (Eigen::Index n = 0; n < slice.eigenvalues.size(); ++n) {
            row.push_back(slice.eigenvalues[n]);
        }
        row.push_back(slice.selected_gap);
        write_csv_row(out, row);
    }
}

void write_landscape_csv(std::ostream& out, const FidelityLandscape& landscape) {
    out << "eps1,eps2,fidelity\n";
    for (Eigen::Index i = 0; i < landscape.eps1.size(); ++i) {
        for (Eigen::Index j = 0; j < landscape.eps2.size(); ++j) {
            write_csv_row(out, std::vector<double>{landscape.eps1[i], landscape.eps2[j],
                                                   landscape.fidelity(i, j)});
        }
    }
}

void write_trajectory_csv(std::ostream& out, const EvolutionResult& result,
                          const std::vector<std::string>& population_labels) {
    std::vector<std::string> header{"time"};
    for (const auto& label : population_labels) header.push_back("pop_" + label);
    write_csv_row(out, header);
    for (std::size_t s = 0; s < result.times.size(); ++s) {
        std::vector<double> row{result.times[s]};
        for (Eigen::Index j = 0; j < result.populations.cols(); ++j) {
            row.push_back(result.populations(static_cast<Eigen::Index>(s), j));
        }
        write_csv_row(out, row);
    }
}

void write_flux_trace_csv(std::ostream& out, const FluxTrace& trace,
                          const std::vector<std::string>& population_labels) {
    std::vector<std::string> header{"t", "t_over_T", "flux"};
    for (const auto& label : population_labels) header.push_back("pop_" + label);
    write_csv_row(out, header);
    for (std::size_t s = 0; s < trace.times.size(); ++s) {
        std::vector<double> row{trace.times[s], trace.times[s] / trace.total_time, trace.flux[s]};
        for (Eigen::Index j = 0; j < trace.populations.cols(); ++j) {
            row.push_back(trace.populations(static_cast<Eigen::Index>(s), j));
        }
        write_csv_row(out, row);
    }
}

void write_flux_landscape_csv(std::ostream& out, const FluxLandscape& landscape) {
    out << "t_over_T,eps,flux\n";
    for (std::size_t s = 0; s < landscape.t_over_t_total.size(); ++s) {
        for (std::size_t j = 0; j < landscape.eps.size(); ++j) {
            write_csv_row(out, std::vector<double>{
                                   landscape.t_over_t_total[s], landscape.eps[j],
                                   landscape.flux(static_cast<Eigen::Index>(s),
                                                  static_cast<Eigen::Index>(j))});
        }
    }
}

void write_window_stats_csv(
    std::ostream& out,
    const std::vector<std::tuple<std::string, int, std::string, WindowStats>>& rows) {
    out << "model,n_segments,axis,center_eps,mean,min,max\n";
    for (const auto& [model, n, axis, stats] : rows) {
        out << model << ',' << n << ',' << axis << ',' << format_double(stats.center_eps) << ','
            << format_double(stats.mean) << ',' << format_double(stats.min) << ','
            << format_double(stats.max) << '\n';
    }
}

nlohmann::json sequence_to_json(const OpssSequence& seq, const std::string& model_tag) {
    nlohmann::json j;
    j["model"] = model_tag;
    j["n_segments"] = seq.n_segments;
    j["representation"] = to_string(seq.representation);
    j["controls"] = seq.controls;
    j["total_time"] = seq.total_time;
    return j;
}

OpssSequence sequence_from_json(const nlohmann::json& j) {
    OpssSequence seq;
    seq.n_segments = j.at("n_segments").get<int>();
    seq.representation = control_rep_from_string(j.at("representation").get<std::string>());
    seq.controls = j.at("controls").get<std::vector<double>>();
    seq.total_time = j.at("total_time").get<double>();
    seq.validate();
    return seq;
}

nlohmann::json candidate_to_json(const Candidate& candidate, const std::string& model_tag,
                                 std::uint64_t seed, const CostWeights& weights,
                                 const SampleSpec& sample, ErrorAxis axis) {
    nlohmann::json j = sequence_to_json(candidate.sequence, model_tag);
    j["seed"] = seed;
    j["weights"] = {{"w_b", weights.w_b},
                    {"w_f", weights.w_f},
                    {"w_r", weights.w_r},
                    {"f_target", weights.f_target}};
    j["sample_spec"] = {{"m", sample.m},
                        {"eps_min", sample.eps_min},
                        {"eps_max", sample.eps_max},
                        {"axis", to_string(axis)}};
    j["cost"] = candidate.cost;
    j["fidelity_samples"] = candidate.fidelity_samples;
    return j;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out.good()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void atomic_write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    atomic_write_text(path, j.dump(2) + "\n");
}

std::string config_hash(const nlohmann::json& config) {
    const std::string dump = config.dump();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : dump) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    std::array<char, 17> buf{};
    static const char* digits = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) {
        buf[static_cast<std::size_t>(15 - i)] = digits[(hash >> (4 * i)) & 0xF];
    }
    return std::string(buf.data(), 8);  // first 8 hex chars
}

} // namespace opss
