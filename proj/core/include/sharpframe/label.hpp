#pragma once

#include <cstdint>
#include <span>

namespace sharpframe {

enum class FrameLabel : std::uint8_t {
    blur = 0,
    sharp = 1,
};

inline constexpr bool is_sharp(FrameLabel label) noexcept { return label == FrameLabel::sharp; }
inline constexpr FrameLabel label_from(bool sharp) noexcept { return sharp ? FrameLabel::sharp : FrameLabel::blur; }

using LabelSpan = std::span<const FrameLabel>;

} // namespace sharpframe
