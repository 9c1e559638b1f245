#include "airmia/dataset_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "airmia/error.hpp"

namespace airmia::io {

using rfsim::kSymbolsPerSample;
using rfsim::SignalSample;

std::string dataset_csv_header()
{
    std::string h = "sample_id,tx_id,class,member,view";
    for (std::size_t k = 0; k < kSymbolsPerSample; ++k) h += ",phase_" + std::to_string(k);
    for (std::size_t k = 0; k < kSymbolsPerSample; ++k) h += ",power_" + std::to_string(k);
    return h;
}

std::string dataset_to_csv(const std::vector<SignalSample>& samples)
{
    std::string out = dataset_csv_header();
    out += '\n';
    char buf[64];
    for (const auto& s : samples) {
        out += std::to_string(s.sample_id);
        out += ',';
        out += std::to_string(s.tx_id);
        out += ',';
        out += std::to_string(s.class_label);
        out += s.member ? ",1," : ",0,";
        out += rfsim::to_string(s.view);
        for (double v : s.phases) {
            std::snprintf(buf, sizeof buf, ",%.9f", v);
            out += buf;
        }
        for (double v : s.powers) {
            std::snprintf(buf, sizeof buf, ",%.9f", v);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

namespace {

template <typename T>
T parse_number(std::string_view field, const std::string& origin, std::size_t line)
{
    T value{};
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw LoadError(origin, "line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        fields.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

}  // namespace

std::vector<SignalSample> dataset_from_csv(std::string_view text, const std::string& origin)
{
    std::vector<SignalSample> out;
    std::size_t line_no = 0;
    bool header_seen = false;
    const std::string header = dataset_csv_header();
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != header) throw LoadError(origin, "unexpected CSV header");
            header_seen = true;
            continue;
        }
        const auto f = split(line);
        if (f.size() != 5 + 2 * kSymbolsPerSample) {
            throw LoadError(origin, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(5 + 2 * kSymbolsPerSample) + " fields");
        }
        SignalSample s;
        s.sample_id = parse_number<std::uint64_t>(f[0], origin, line_no);
        s.tx_id = parse_number<int>(f[1], origin, line_no);
        s.class_label = parse_number<int>(f[2], origin, line_no);
        const int member = parse_number<int>(f[3], origin, line_no);
        if ((s.class_label != 0 && s.class_label != 1) || (member != 0 && member != 1)) {
            throw LoadError(origin, "line " + std::to_string(line_no) + ": class/member must be 0 or 1");
        }
        s.member = member == 1;
        try {
            s.view = rfsim::receiver_from_string(f[4]);
        } catch (const InvalidInput& e) {
            throw LoadError(origin, "line " + std::to_string(line_no) + ": " + e.what());
        }
        for (std::size_t k = 0; k < kSymbolsPerSample; ++k) {
            s.phases[k] = parse_number<double>(f[5 + k], origin, line_no);
            s.powers[k] = parse_number<double>(f[5 + kSymbolsPerSample + k], origin, line_no);
        }
        out.push_back(s);
    }
    if (!header_seen) throw LoadError(origin, "empty CSV");
    return out;
}

void atomic_write_text(const std::filesystem::path& path, std::string_view content)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw LoadError(path.string(), "cannot open file");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_dataset_csv(const std::filesystem::path& path, const std::vector<SignalSample>& samples)
{
    atomic_write_text(path, dataset_to_csv(samples));
}

std::vector<SignalSample> read_dataset_csv(const std::filesystem::path& path)
{
    return dataset_from_csv(read_text(path), path.string());
}

}  // namespace airmia::io
