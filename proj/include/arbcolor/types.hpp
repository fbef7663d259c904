#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace arbcolor {

using NodeId = std::uint32_t;

inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();

/// Layer index of a (partial) beta-partition. The default-constructed value is
/// the infinity layer, which compares greater than every finite layer.
class Layer {
public:
    constexpr Layer() = default;
    constexpr explicit Layer(std::uint32_t value) : raw_(value) { assert(value != kInfRaw); }

    static constexpr Layer infinity() { return Layer{}; }

    [[nodiscard]] constexpr bool is_finite() const { return raw_ != kInfRaw; }
    [[nodiscard]] constexpr bool is_infinite() const { return raw_ == kInfRaw; }

    [[nodiscard]] constexpr std::uint32_t value() const {
        assert(is_finite());
        return raw_;
    }

    friend constexpr auto operator<=>(Layer, Layer) = default;

    [[nodiscard]] std::string to_string() const {
        return is_finite() ? std::to_string(raw_) : std::string("inf");
    }

    friend std::ostream& operator<<(std::ostream& os, Layer layer) { return os << layer.to_string(); }

private:
    static constexpr std::uint32_t kInfRaw = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t raw_ = kInfRaw;
};

inline constexpr Layer kInfinity = Layer::infinity();

} // namespace arbcolor
