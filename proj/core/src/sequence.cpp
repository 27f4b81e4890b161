#include "opss/sequence.hpp"

#include <stdexcept>

#include "opss/errors.hpp"

namespace opss {

std::string to_string(ControlRep rep) {
    return rep == ControlRep::physical ? "physical" : "detuning";
}

ControlRep control_rep_from_string(const std::string& s) {
    if (s == "physical") return ControlRep::physical;
    if (s == "detuning") return ControlRep::detuning;
    throw std::invalid_argument("unknown control representation '" + s + "'");
}

OpssSequence OpssSequence::physical(std::vector<double> controls, double total_time) {
    OpssSequence seq{static_cast<int>(controls.size()), ControlRep::physical,
                     std::move(controls), total_time};
    seq.validate();
    return seq;
}

OpssSequence OpssSequence::detuning(std::vector<double> controls, double total_time) {
    OpssSequence seq{static_cast<int>(controls.size()), ControlRep::detuning,
                     std::move(controls), total_time};
    seq.validate();
    return seq;
}

void OpssSequence::validate() const {
    if (n_segments <= 0) throw std::invalid_argument("sequence needs at least one segment");
    if (static_cast<int>(controls.size()) != n_segments) {
        throw std::invalid_argument("controls length does not match n_segments");
    }
    if (!(total_time > 0.0)) throw std::invalid_argument("total_time must be positive");
}

OpssSequence to_physical(const OpssSequence& seq, const TwoLevelMap& map) {
    seq.validate();
    if (seq.representation == ControlRep::physical) return seq;
    std::vector<double> controls(seq.controls.size());
    for (std::size_t k = 0; k < controls.size(); ++k) {
        controls[k] = map.control_for_delta(seq.controls[k]);
    }
    return OpssSequence::physical(std::move(controls), seq.total_time);
}

OpssSequence to_detuning(const OpssSequence& seq, const TwoLevelMap& map) {
    seq.validate();
    if (seq.representation == ControlRep::detuning) return seq;
    std::vector<double> controls(seq.controls.size());
    for (std::size_t k = 0; k < controls.size(); ++k) {
        controls[k] = map.delta(seq.controls[k]);
    }
    return OpssSequence::detuning(std::move(controls), seq.total_time);
}

} // namespace opss
