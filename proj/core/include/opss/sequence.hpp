// sequence.hpp — piecewise-constant control sequences (the optimizable object)

#pragma once

#include <string>
#include <vector>

#include "opss/effective.hpp"

namespace opss {

enum class ControlRep { physical, detuning };

std::string to_string(ControlRep rep);
ControlRep control_rep_from_string(const std::string& s);

// N equal-duration segments; controls are either physical cavity frequencies
// omega_{c,k} or effective detunings Delta_k, tagged by the representation.
struct OpssSequence {
    int n_segments = 0;
    ControlRep representation = ControlRep::physical;
    std::vector<double> controls;
    double total_time = 0.0;

    static OpssSequence physical(std::vector<double> controls, double total_time);
    static OpssSequence detuning(std::vector<double> controls, double total_time);

    double segment_duration() const { return total_time / n_segments; }
    void validate() const;  // throws std::invalid_argument
};

OpssSequence to_physical(const OpssSequence& seq, const TwoLevelMap& map);
OpssSequence to_detuning(const OpssSequence& seq, const TwoLevelMap& map);

} // namespace opss
