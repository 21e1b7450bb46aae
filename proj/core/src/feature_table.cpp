#include <sharpframe/feature_table.hpp>

#include <sharpframe/error.hpp>

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace sharpframe {

namespace {

constexpr std::string_view kMagic = "# sharpframe-features";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, sep)) parts.push_back(field);
    if (!line.empty() && line.back() == sep) parts.emplace_back();
    return parts;
}

double parse_double(const std::string& s, std::size_t line_no) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw InputError("feature table line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
    return v;
}

// Reads `key=value` out of the schema comment.
std::optional<int> header_int(const std::string& line, const std::string& key) {
    const auto pos = line.find(key + "=");
    if (pos == std::string::npos) return std::nullopt;
    return std::atoi(line.c_str() + pos + key.size() + 1);
}

} // namespace

void write_feature_table(std::ostream& out, std::span<const FeatureRow> rows) {
    bool labelled = !rows.empty();
    for (const auto& row : rows) labelled = labelled && row.label.has_value();
    const int k = rows.empty() ? kDefaultMetricKernel : rows.front().features.kernel_size;

    out << kMagic << " schema_version=" << kFeatureSchemaVersion << " kernel_size=" << k << '\n';
    out << "frame_index";
    for (auto name : kFeatureNames) out << ',' << name;
    if (labelled) out << ",label";
    out << '\n';
    for (const auto& row : rows) {
        out << row.frame_index;
        for (double v : row.features.values()) out << ',' << format_double(v);
        if (labelled) out << ',' << (is_sharp(*row.label) ? 1 : 0);
        out << '\n';
    }
}

std::vector<FeatureRow> read_feature_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind(kMagic, 0) != 0) {
        throw InputError("feature table: missing schema comment");
    }
    const auto version = header_int(line, "schema_version");
    if (!version || *version != kFeatureSchemaVersion) {
        throw InputError("feature table: unsupported schema_version (expected " +
                         std::to_string(kFeatureSchemaVersion) + ")");
    }
    const int k = header_int(line, "kernel_size").value_or(kDefaultMetricKernel);

    if (!std::getline(in, line)) throw InputError("feature table: missing header row");
    const auto header = split(line, ',');
    const bool labelled = header.size() == kFeatureCount + 2;
    if (header.size() != kFeatureCount + 1 && !labelled) {
        throw InputError("feature table: unexpected column count in header");
    }
    if (header[0] != "frame_index" || (labelled && header.back() != "label")) {
        throw InputError("feature table: unexpected header '" + line + "'");
    }
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (header[i + 1] != kFeatureNames[i]) {
            throw InputError("feature table: column " + std::to_string(i + 1) + " is '" + header[i + 1] +
                             "', schema " + std::to_string(kFeatureSchemaVersion) + " expects '" +
                             std::string(kFeatureNames[i]) + "'");
        }
    }

    std::vector<FeatureRow> rows;
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split(line, ',');
        if (fields.size() != header.size()) {
            throw InputError("feature table line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields");
        }
        FeatureRow row;
        row.frame_index = static_cast<std::size_t>(parse_double(fields[0], line_no));
        std::array<double, kFeatureCount> values{};
        for (std::size_t i = 0; i < kFeatureCount; ++i) values[i] = parse_double(fields[i + 1], line_no);
        row.features = FocusFeatures::from_values(values, k);
        if (labelled) {
            if (fields.back() != "0" && fields.back() != "1") {
                throw InputError("feature table line " + std::to_string(line_no) + ": label must be 0 or 1");
            }
            row.label = label_from(fields.back() == "1");
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace sharpframe
