// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace lrvis::accel {

// 32-bit node word: bit 31 leaf flag, bits 29-30 split axis, bits 0-28 payload
// (element index for leaves, node index otherwise).
inline constexpr std::uint32_t kLeafBit = 1u << 31;
inline constexpr int kAxisShift = 29;
inline constexpr std::uint32_t kAxisMask = 3u << kAxisShift;
inline constexpr std::uint32_t kPayloadMask = (1u << 29) - 1;
inline constexpr std::uint32_t kMaxPayload = kPayloadMask - 1;  // kPayloadMask marks "no element"

constexpr std::uint32_t make_leaf(std::uint32_t element) { return kLeafBit | (element & kPayloadMask); }
constexpr std::uint32_t make_internal(int axis, std::uint32_t payload) {
    return (static_cast<std::uint32_t>(axis) << kAxisShift) | (payload & kPayloadMask);
}
constexpr bool is_leaf(std::uint32_t word) { return (word & kLeafBit) != 0; }
constexpr int axis_of(std::uint32_t word) { return static_cast<int>((word & kAxisMask) >> kAxisShift); }
constexpr std::uint32_t payload_of(std::uint32_t word) { return word & kPayloadMask; }

/// One k-d forest node as laid out in the packed node buffer.
struct PackedNode {
    std::uint32_t word_r = 0;
    float split_g = 0.0f;

    friend bool operator==(const PackedNode&, const PackedNode&) = default;
};

}  // namespace lrvis::accel
