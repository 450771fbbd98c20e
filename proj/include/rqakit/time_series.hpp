#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace rqakit {

// Ordered scalar samples plus generation metadata. `seed` is set by the
// built-in generators; `normalized` means the values span [0, 1] (the
// degenerate constant case normalizes to all 0.5, see normalize()).
struct TimeSeries {
    std::vector<double> values;
    std::optional<std::uint64_t> seed;
    bool normalized = false;

    std::size_t size() const noexcept { return values.size(); }
};

// Affine min-max rescale to [0, 1]; idempotent. A constant series cannot
// be rescaled and maps to all 0.5 with a warning on stderr.
TimeSeries normalize(const TimeSeries& series);

// Reads one numeric column from a delimited text file: one record per
// line, fields split on commas and/or blanks. Unparseable fields throw
// with the offending 1-based line number in the message.
TimeSeries ingest_csv(const std::filesystem::path& path, std::size_t column = 0);

} // namespace rqakit
