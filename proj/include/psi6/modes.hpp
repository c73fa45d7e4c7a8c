#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace psi6 {

enum class Pol { H, V };

inline char pol_char(Pol p) { return p == Pol::H ? 'H' : 'V'; }

/// One polarization-resolved optical mode, e.g. {"a0", H}.
struct OpticalMode {
    std::string spatial;
    Pol pol = Pol::H;

    bool operator==(const OpticalMode&) const = default;
    std::string label() const { return spatial + pol_char(pol); }
};

/// Ordered, immutable list of optical modes. Occupation vectors and network
/// matrices are indexed against a register; (spatial, pol) pairs are unique.
class ModeRegister {
public:
    ModeRegister() = default;
    explicit ModeRegister(std::vector<OpticalMode> modes);

    /// H and V sub-modes for each spatial label, in the given order.
    static ModeRegister polarization_pairs(const std::vector<std::string>& spatials);

    std::size_t size() const { return modes_.size(); }
    const OpticalMode& at(std::size_t i) const { return modes_.at(i); }
    const std::vector<OpticalMode>& modes() const { return modes_; }
    std::optional<std::size_t> index_of(const OpticalMode& m) const;

    /// Spatial labels in first-appearance order.
    std::vector<std::string> spatial_labels() const;

    bool operator==(const ModeRegister&) const = default;

private:
    std::vector<OpticalMode> modes_;
};

/// The two source modes of the pair emitter: a0H, a0V, b0H, b0V.
ModeRegister source_register();

}  // namespace psi6
