#include "psi6/modes.hpp"

#include <stdexcept>

namespace psi6 {

ModeRegister::ModeRegister(std::vector<OpticalMode> modes) : modes_(std::move(modes)) {
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        for (std::size_t j = i + 1; j < modes_.size(); ++j) {
            if (modes_[i] == modes_[j]) {
                throw std::invalid_argument("duplicate optical mode in register: " +
                                            modes_[i].label());
            }
        }
    }
}

ModeRegister ModeRegister::polarization_pairs(const std::vector<std::string>& spatials) {
    std::vector<OpticalMode> modes;
    modes.reserve(spatials.size() * 2);
    for (const auto& s : spatials) {
        modes.push_back({s, Pol::H});
        modes.push_back({s, Pol::V});
    }
    return ModeRegister(std::move(modes));
}

std::optional<std::size_t> ModeRegister::index_of(const OpticalMode& m) const {
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i] == m) return i;
    }
    return std::nullopt;
}

std::vector<std::string> ModeRegister::spatial_labels() const {
    std::vector<std::string> out;
    for (const auto& m : modes_) {
        bool seen = false;
        for (const auto& s : out) {
            if (s == m.spatial) {
                seen = true;
                break;
            }
        }
        if (!seen) out.push_back(m.spatial);
    }
    return out;
}

ModeRegister source_register() { return ModeRegister::polarization_pairs({"a0", "b0"}); }

}  // namespace psi6
