#include "surprise/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "surprise/rng.hpp"

namespace surprise::ingest {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, int line, const std::string& what) {
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": " << what;
    throw std::runtime_error(msg.str());
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::int64_t parse_count(const std::string& text, const std::filesystem::path& path, int line,
                         const char* column) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 0)
        fail(path, line, std::string("column '") + column + "' must be a nonnegative integer, got '" +
                             text + "'");
    return value;
}

double parse_real(const std::string& text, const std::filesystem::path& path, int line,
                  const char* column) {
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size())
        fail(path, line, std::string("column '") + column + "' must be a number, got '" + text + "'");
    return value;
}

std::ifstream open_checked(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ingest: cannot open " + path.string());
    return in;
}

void expect_header(const std::string& got, const std::string& want,
                   const std::filesystem::path& path) {
    if (trim(got) != want)
        fail(path, 1, "expected header '" + want + "', got '" + trim(got) + "'");
}

}  // namespace

std::vector<RegionRecord> load_regions(const std::filesystem::path& votes_path,
                                       const std::filesystem::path& coords_path) {
    // Coordinates keyed by region.
    std::map<std::string, LatLon> coords;
    {
        auto in = open_checked(coords_path);
        std::string line;
        int line_no = 1;
        if (!std::getline(in, line)) fail(coords_path, 1, "empty file");
        expect_header(line, "region_id,lat,lon", coords_path);
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty()) continue;
            const auto fields = split_csv(line);
            if (fields.size() != 3) fail(coords_path, line_no, "expected 3 columns");
            LatLon pos{parse_real(fields[1], coords_path, line_no, "lat"),
                       parse_real(fields[2], coords_path, line_no, "lon")};
            if (!valid_coordinates(pos))
                fail(coords_path, line_no, "coordinates out of range for region '" + fields[0] + "'");
            if (!coords.emplace(fields[0], pos).second)
                fail(coords_path, line_no, "duplicate region_id '" + fields[0] + "'");
        }
    }

    std::vector<RegionRecord> records;
    std::vector<std::string> missing;
    {
        auto in = open_checked(votes_path);
        std::string line;
        int line_no = 1;
        if (!std::getline(in, line)) fail(votes_path, 1, "empty file");
        expect_header(line, "region_id,votes_a1,votes_a2", votes_path);
        std::map<std::string, int> seen;
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty()) continue;
            const auto fields = split_csv(line);
            if (fields.size() != 3) fail(votes_path, line_no, "expected 3 columns");
            if (fields[0].empty()) fail(votes_path, line_no, "empty region_id");
            if (!seen.emplace(fields[0], line_no).second)
                fail(votes_path, line_no, "duplicate region_id '" + fields[0] + "'");

            RegionRecord rec;
            rec.region_id = fields[0];
            rec.votes_a1 = parse_count(fields[1], votes_path, line_no, "votes_a1");
            rec.votes_a2 = parse_count(fields[2], votes_path, line_no, "votes_a2");
            if (rec.votes_a1 + rec.votes_a2 < 1)
                fail(votes_path, line_no, "region '" + rec.region_id + "' has no ballots");

            const auto it = coords.find(rec.region_id);
            if (it == coords.end()) {
                missing.push_back(rec.region_id);
            } else {
                rec.position = it->second;
            }
            records.push_back(std::move(rec));
        }
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "ingest: no coordinates for " << missing.size() << " region(s):";
        for (const auto& id : missing) msg << " " << id;
        throw std::runtime_error(msg.str());
    }
    if (records.empty()) throw std::runtime_error("ingest: votes file has no regions");
    return records;
}

void swap_options(std::vector<RegionRecord>& records) {
    for (auto& rec : records) std::swap(rec.votes_a1, rec.votes_a2);
}

std::int64_t total_ballots(const std::vector<RegionRecord>& records) {
    std::int64_t total = 0;
    for (const auto& rec : records) total += rec.votes_a1 + rec.votes_a2;
    return total;
}

SampledElectorate sample_voters(const std::vector<RegionRecord>& records, std::int64_t k,
                                std::uint64_t seed) {
    const std::int64_t total = total_ballots(records);
    if (k < 1) throw std::invalid_argument("ingest: sample size must be at least 1");
    if (k > total) {
        std::ostringstream msg;
        msg << "ingest: sample size " << k << " exceeds the " << total << " pooled ballots";
        throw std::invalid_argument(msg.str());
    }

    // Cell-wise multivariate hypergeometric over region x option cells:
    // condition each cell's allocation on the ballots still unassigned.
    const size_t regions = records.size();
    std::vector<std::int64_t> take_a1(regions), take_a2(regions);
    rng::Stream stream(rng::derive(seed, 0x5a3c9d1fULL));
    std::int64_t remaining_total = total;
    std::int64_t remaining_draws = k;
    for (size_t r = 0; r < regions && remaining_draws > 0; ++r) {
        for (int option = 0; option < 2; ++option) {
            const std::int64_t cell =
                option == 0 ? records[r].votes_a1 : records[r].votes_a2;
            const std::int64_t drawn =
                rng::hypergeometric(stream, remaining_total, cell, remaining_draws);
            (option == 0 ? take_a1 : take_a2)[r] = drawn;
            remaining_total -= cell;
            remaining_draws -= drawn;
            if (remaining_draws == 0) break;
        }
    }

    std::int64_t n1 = 0, n2 = 0;
    for (size_t r = 0; r < regions; ++r) {
        n1 += take_a1[r];
        n2 += take_a2[r];
    }

    SampledElectorate sample{Electorate::with_counts(n1, n2), {}, {}, {}};
    sample.positions.reserve(size_t(k));
    sample.source_region.reserve(size_t(k));
    sample.region_ids.reserve(regions);
    for (const auto& rec : records) sample.region_ids.push_back(rec.region_id);

    // Canonical voter order: all A1 voters first, grouped by region.
    for (int option = 0; option < 2; ++option) {
        const auto& take = option == 0 ? take_a1 : take_a2;
        for (size_t r = 0; r < regions; ++r) {
            for (std::int64_t v = 0; v < take[r]; ++v) {
                sample.positions.push_back(records[r].position);
                sample.source_region.push_back(std::int32_t(r));
            }
        }
    }
    return sample;
}

}  // namespace surprise::ingest
