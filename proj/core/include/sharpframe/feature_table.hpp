#pragma once

#include <sharpframe/focus_metrics.hpp>
#include <sharpframe/label.hpp>

#include <iosfwd>
#include <optional>
#include <vector>

namespace sharpframe {

struct FeatureRow {
    std::size_t frame_index = 0;
    FocusFeatures features;
    std::optional<FrameLabel> label;
};

/// Feature dump:
///
///     # sharpframe-features schema_version=1 kernel_size=11
///     frame_index,mis3,gra7,lap1,sta3,dct3,wav1,label
///     0,0.0123,...,1
///
/// The label column is written only when every row carries a label. Values use
/// 17 significant digits so a dump reads back bit-identically.
void write_feature_table(std::ostream& out, std::span<const FeatureRow> rows);

/// Parses a feature dump. Throws InputError on a missing or different schema
/// version, a reordered header, or malformed rows.
std::vector<FeatureRow> read_feature_table(std::istream& in);

} // namespace sharpframe
