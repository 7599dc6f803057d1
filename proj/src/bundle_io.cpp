#include "vigil/bundle_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vigil/errors.hpp"
#include "vigil/strconv.hpp"

namespace vigil {

namespace {

constexpr char kHexDigits[] = "0123456789ABCDEF";

void hex_append(std::string& out, std::uint8_t byte) {
    out.push_back(kHexDigits[byte >> 4]);
    out.push_back(kHexDigits[byte & 0xF]);
}

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw FormatError(std::string("bundle: bad hex digit '") + c + "'");
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("bundle: cannot write " + path.string());
    return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("bundle: cannot read " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

void expect_header(const std::vector<std::string>& lines, const std::string& header,
                   const char* file) {
    if (lines.empty() || lines.front() != header)
        throw FormatError(std::string("bundle: ") + file + " missing header '" + header + "'");
}

void check_increasing(double prev, double t, const char* file) {
    if (t <= prev) throw FormatError(std::string("bundle: ") + file + " timestamps not increasing");
}

void check_span(double last_t, double total, double hz, const char* file) {
    if (last_t < total - 1.0 / hz - 1e-6 || last_t >= total)
        throw FormatError(std::string("bundle: ") + file + " does not span the scripted duration");
}

}  // namespace

void write_bundle(const SensorBundle& bundle, const ScenarioSpec& spec, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);

    {
        auto out = open_out(base / "meta.cfg");
        out << dump_scenario(spec);
    }
    {
        auto out = open_out(base / "frames.csv");
        out << "timestamp,width,height,pixels\n";
        std::string hex;
        for (const auto& f : bundle.frames) {
            hex.clear();
            hex.reserve(f.pixels.size() * 2);
            for (std::uint8_t px : f.pixels) hex_append(hex, px);
            out << fmt_double(f.timestamp) << ',' << fmt_int(f.width) << ',' << fmt_int(f.height)
                << ',' << hex << '\n';
        }
    }
    {
        auto out = open_out(base / "accel.csv");
        out << "timestamp,ax,ay,az\n";
        for (const auto& a : bundle.accel)
            out << fmt_double(a.timestamp) << ',' << fmt_double(a.ax) << ',' << fmt_double(a.ay)
                << ',' << fmt_double(a.az) << '\n';
    }
    {
        auto out = open_out(base / "ppg.csv");
        out << "timestamp,amplitude\n";
        for (const auto& p : bundle.ppg)
            out << fmt_double(p.timestamp) << ',' << fmt_double(p.amplitude) << '\n';
    }
    {
        auto out = open_out(base / "pir.csv");
        out << "timestamp\n";
        for (const auto& e : bundle.pir) out << fmt_double(e.timestamp) << '\n';
    }
}

LoadedBundle load_bundle(const std::string& dir) {
    const std::filesystem::path base(dir);
    LoadedBundle loaded;
    try {
        loaded.spec = load_scenario((base / "meta.cfg").string());
    } catch (const ConfigError& e) {
        throw FormatError(std::string("bundle: bad meta.cfg: ") + e.what());
    }

    {
        const auto lines = read_lines(base / "frames.csv");
        expect_header(lines, "timestamp,width,height,pixels", "frames.csv");
        double prev = -1.0;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto fields = split_csv(lines[i]);
            if (fields.size() != 4) throw FormatError("bundle: frames.csv wrong field count");
            Frame f;
            f.timestamp = parse_double(fields[0]);
            f.width = static_cast<int>(parse_int(fields[1]));
            f.height = static_cast<int>(parse_int(fields[2]));
            if (f.width <= 0 || f.height <= 0)
                throw FormatError("bundle: frames.csv non-positive dimensions");
            const std::string& hex = fields[3];
            const std::size_t n = static_cast<std::size_t>(f.width) * static_cast<std::size_t>(f.height);
            if (hex.size() != n * 2) throw FormatError("bundle: frames.csv pixel column length");
            f.pixels.resize(n);
            for (std::size_t p = 0; p < n; ++p)
                f.pixels[p] =
                    static_cast<std::uint8_t>((hex_nibble(hex[2 * p]) << 4) | hex_nibble(hex[2 * p + 1]));
            check_increasing(prev, f.timestamp, "frames.csv");
            prev = f.timestamp;
            loaded.bundle.frames.push_back(std::move(f));
        }
    }
    {
        const auto lines = read_lines(base / "accel.csv");
        expect_header(lines, "timestamp,ax,ay,az", "accel.csv");
        double prev = -1.0;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto fields = split_csv(lines[i]);
            if (fields.size() != 4) throw FormatError("bundle: accel.csv wrong field count");
            AccelSample a{parse_double(fields[0]), parse_double(fields[1]), parse_double(fields[2]),
                          parse_double(fields[3])};
            check_increasing(prev, a.timestamp, "accel.csv");
            prev = a.timestamp;
            loaded.bundle.accel.push_back(a);
        }
    }
    {
        const auto lines = read_lines(base / "ppg.csv");
        expect_header(lines, "timestamp,amplitude", "ppg.csv");
        double prev = -1.0;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto fields = split_csv(lines[i]);
            if (fields.size() != 2) throw FormatError("bundle: ppg.csv wrong field count");
            PpgSample p{parse_double(fields[0]), parse_double(fields[1])};
            check_increasing(prev, p.timestamp, "ppg.csv");
            prev = p.timestamp;
            loaded.bundle.ppg.push_back(p);
        }
    }
    {
        const auto lines = read_lines(base / "pir.csv");
        expect_header(lines, "timestamp", "pir.csv");
        double prev = -1.0;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (lines[i].empty()) throw FormatError("bundle: pir.csv empty row");
            PirEvent e{parse_double(lines[i])};
            check_increasing(prev, e.timestamp, "pir.csv");
            prev = e.timestamp;
            loaded.bundle.pir.push_back(e);
        }
    }

    const double total = loaded.spec.script.total_duration();
    if (loaded.bundle.frames.empty() || loaded.bundle.accel.empty() || loaded.bundle.ppg.empty())
        throw FormatError("bundle: empty sensor stream");
    check_span(loaded.bundle.frames.back().timestamp, total, loaded.spec.script.frame_hz,
               "frames.csv");
    check_span(loaded.bundle.accel.back().timestamp, total, loaded.spec.script.accel_hz,
               "accel.csv");
    check_span(loaded.bundle.ppg.back().timestamp, total, loaded.spec.script.ppg_hz, "ppg.csv");
    return loaded;
}

}  // namespace vigil
