#include "vigil/telemetry.hpp"

#include <array>
#include <istream>
#include <limits>
#include <optional>
#include <utility>

#include "vigil/errors.hpp"
#include "vigil/strconv.hpp"

namespace vigil {

namespace {

constexpr std::string_view kMagic = "FTG1";
constexpr std::array<std::string_view, 5> kStateCodes = {"AW", "DR", "SL", "AS", "IN"};
constexpr std::array<std::string_view, 5> kHrCodes = {"OK", "BR", "TA", "NP", "NA"};

constexpr std::array<std::uint16_t, 256> make_crc_table() {
    std::array<std::uint16_t, 256> table{};
    for (int byte = 0; byte < 256; ++byte) {
        std::uint16_t crc = static_cast<std::uint16_t>(byte << 8);
        for (int bit = 0; bit < 8; ++bit)
            crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021)
                                 : static_cast<std::uint16_t>(crc << 1);
        table[static_cast<std::size_t>(byte)] = crc;
    }
    return table;
}

constexpr auto kCrcTable = make_crc_table();

bool known_code(std::string_view code, const std::array<std::string_view, 5>& alphabet) {
    for (auto c : alphabet)
        if (c == code) return true;
    return false;
}

std::string crc_hex(std::uint16_t crc) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string s(4, '0');
    for (int i = 3; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = kHex[crc & 0xF];
        crc = static_cast<std::uint16_t>(crc >> 4);
    }
    return s;
}

// Exactly four uppercase hex digits, or empty when the field is malformed.
std::optional<std::uint16_t> parse_crc_field(std::string_view field) {
    if (field.size() != 4) return std::nullopt;
    std::uint16_t value = 0;
    for (char ch : field) {
        int digit;
        if (ch >= '0' && ch <= '9') digit = ch - '0';
        else if (ch >= 'A' && ch <= 'F') digit = ch - 'A' + 10;
        else return std::nullopt;
        value = static_cast<std::uint16_t>((value << 4) | digit);
    }
    return value;
}

std::uint32_t parse_u32_field(std::string_view s, const char* what) {
    const unsigned long long v = parse_uint(s);
    if (v > std::numeric_limits<std::uint32_t>::max())
        throw FormatError(std::string("field out of range: ") + what);
    return static_cast<std::uint32_t>(v);
}

}  // namespace

std::string state_code_for(DriverState s) {
    switch (s) {
        case DriverState::Awake: return "AW";
        case DriverState::Drowsy: return "DR";
        case DriverState::Sleepy: return "SL";
        case DriverState::Asleep: return "AS";
        case DriverState::Incapacitated: return "IN";
    }
    throw DomainError("telemetry: unknown driver state");
}

std::string hr_code_for(Vitality v) {
    switch (v) {
        case Vitality::Normal: return "OK";
        case Vitality::Bradycardia: return "BR";
        case Vitality::Tachycardia: return "TA";
        case Vitality::NoPulse: return "NP";
        case Vitality::Unknown: return "NA";
    }
    throw DomainError("telemetry: unknown vitality");
}

std::uint16_t crc16_ccitt_false(std::span<const unsigned char> data) {
    std::uint16_t crc = 0xFFFF;
    for (unsigned char byte : data)
        crc = static_cast<std::uint16_t>((crc << 8) ^ kCrcTable[((crc >> 8) ^ byte) & 0xFF]);
    return crc;
}

std::uint16_t crc16_ccitt_false(std::string_view data) {
    return crc16_ccitt_false(
        std::span(reinterpret_cast<const unsigned char*>(data.data()), data.size()));
}

std::string encode(const StatusMessage& msg) {
    if (!known_code(msg.state_code, kStateCodes))
        throw EncodeError("telemetry: state code '" + msg.state_code + "' outside alphabet");
    if (!known_code(msg.hr_code, kHrCodes))
        throw EncodeError("telemetry: hr code '" + msg.hr_code + "' outside alphabet");
    if (msg.bpm < -1) throw EncodeError("telemetry: bpm below -1");

    std::string body;
    body.reserve(48);
    body.append(kMagic);
    body.push_back(',');
    body.append(fmt_uint(msg.seq));
    body.push_back(',');
    body.append(fmt_uint(msg.timestamp));
    body.push_back(',');
    body.append(msg.state_code);
    body.push_back(',');
    body.append(msg.hr_code);
    body.push_back(',');
    body.append(fmt_int(msg.bpm));
    body.push_back(',');
    body.append(fmt_uint(msg.speed_dkmh));
    body.push_back(',');

    std::string line = body + crc_hex(crc16_ccitt_false(body));
    line.push_back('\n');
    return line;
}

StatusMessage decode(std::string_view line) {
    if (line.ends_with('\n')) line.remove_suffix(1);

    // Integrity first: locate and verify the checksum envelope before reading
    // any field, so corruption is never misclassified as a format problem.
    const auto comma = line.rfind(',');
    if (comma == std::string_view::npos)
        throw IntegrityError("telemetry: no checksum field");
    const auto claimed = parse_crc_field(line.substr(comma + 1));
    if (!claimed) throw IntegrityError("telemetry: malformed checksum field");
    const std::string_view body = line.substr(0, comma + 1);  // includes trailing comma
    if (crc16_ccitt_false(body) != *claimed)
        throw IntegrityError("telemetry: checksum mismatch");

    // Structural parse of the authenticated body.
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    const std::string_view payload = line.substr(0, comma);
    while (true) {
        const auto pos = payload.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(payload.substr(start));
            break;
        }
        fields.push_back(payload.substr(start, pos - start));
        start = pos + 1;
    }
    if (fields.size() != 7) throw FormatError("telemetry: wrong field count");
    if (fields[0] != kMagic)
        throw FormatError("telemetry: bad magic '" + std::string(fields[0]) + "'");

    StatusMessage msg;
    msg.seq = parse_u32_field(fields[1], "seq");
    msg.timestamp = parse_u32_field(fields[2], "timestamp");
    msg.state_code = std::string(fields[3]);
    msg.hr_code = std::string(fields[4]);
    if (!known_code(msg.state_code, kStateCodes))
        throw FormatError("telemetry: unknown state code '" + msg.state_code + "'");
    if (!known_code(msg.hr_code, kHrCodes))
        throw FormatError("telemetry: unknown hr code '" + msg.hr_code + "'");
    const long long bpm = parse_int(fields[5]);
    if (bpm < -1 || bpm > 1000) throw FormatError("telemetry: bpm out of range");
    msg.bpm = static_cast<int>(bpm);
    msg.speed_dkmh = parse_u32_field(fields[6], "speed");
    return msg;
}

ControlRoomReceiver::ControlRoomReceiver(const std::string& log_path, const std::string& ack_path)
    : log_(log_path, std::ios::out | std::ios::app), ack_(ack_path, std::ios::out | std::ios::app) {
    if (!log_) throw IoError("telemetry: cannot open log file " + log_path);
    if (!ack_) throw IoError("telemetry: cannot open ack file " + ack_path);
}

bool ControlRoomReceiver::feed_line(std::string_view line) {
    std::string_view trimmed = line;
    if (trimmed.ends_with('\n')) trimmed.remove_suffix(1);
    try {
        StatusMessage msg = decode(trimmed);
        log_ << trimmed << '\n';
        ack_ << "ACK," << fmt_uint(msg.seq) << '\n';
        log_.flush();
        ack_.flush();
        ++stats_.accepted;
        accepted_.push_back(std::move(msg));
        return true;
    } catch (const IntegrityError&) {
        ++stats_.integrity_rejects;
        return false;
    } catch (const FormatError&) {
        ++stats_.format_rejects;
        return false;
    }
}

std::pair<std::vector<StatusMessage>, ReceiveStats> receive_log(std::istream& stream,
                                                                const std::string& log_path,
                                                                const std::string& ack_path) {
    ControlRoomReceiver receiver(log_path, ack_path);
    std::string line;
    while (std::getline(stream, line)) receiver.feed_line(line);
    return {receiver.accepted(), receiver.stats()};
}

}  // namespace vigil
