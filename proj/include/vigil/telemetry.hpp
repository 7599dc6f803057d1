#pragma once

#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vigil/fusion_fsm.hpp"
#include "vigil/heart_monitor.hpp"

namespace vigil {

// Checksummed driver-status record, the GSM-link payload. Wire format is one
// ASCII line:
//   FTG1,<seq>,<timestamp>,<state>,<hr>,<bpm>,<speed>,<CRC>\n
// with the CRC-16/CCITT-FALSE of every byte from 'F' through the comma before
// the CRC field, as four uppercase hex digits. Decimal fields are unpadded.
struct StatusMessage {
    std::uint32_t seq = 0;
    std::uint32_t timestamp = 0;   // unsigned Unix seconds
    std::string state_code = "AW"; // {AW, DR, SL, AS, IN}
    std::string hr_code = "NA";    // {OK, BR, TA, NP, NA}
    int bpm = -1;                  // -1 when unknown
    std::uint32_t speed_dkmh = 0;  // 0.1 km/h units

    bool operator==(const StatusMessage&) const = default;
};

std::string state_code_for(DriverState s);
std::string hr_code_for(Vitality v);

// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, no final XOR.
std::uint16_t crc16_ccitt_false(std::span<const unsigned char> data);
std::uint16_t crc16_ccitt_false(std::string_view data);

std::string encode(const StatusMessage& msg);          // throws EncodeError on bad codes

// The CRC is verified before any structural parsing, so a corrupted line is
// always an IntegrityError and never misreported as a format problem.
StatusMessage decode(std::string_view line);           // FormatError / IntegrityError

struct ReceiveStats {
    std::uint64_t accepted = 0;
    std::uint64_t format_rejects = 0;
    std::uint64_t integrity_rejects = 0;
};

// Control-room endpoint: validates each line, appends accepted lines verbatim
// to an append-only log, emits `ACK,<seq>` per acceptance and counts rejects
// by error class. Duplicate sequence numbers are logged as-is; deduplication
// is the consumer's job.
class ControlRoomReceiver {
public:
    ControlRoomReceiver(const std::string& log_path, const std::string& ack_path);

    bool feed_line(std::string_view line);  // true when accepted

    const ReceiveStats& stats() const { return stats_; }
    const std::vector<StatusMessage>& accepted() const { return accepted_; }

private:
    std::ofstream log_;
    std::ofstream ack_;
    ReceiveStats stats_;
    std::vector<StatusMessage> accepted_;
};

// Feeds every '\n'-terminated line of `stream` through a receiver.
std::pair<std::vector<StatusMessage>, ReceiveStats> receive_log(std::istream& stream,
                                                                const std::string& log_path,
                                                                const std::string& ack_path);

}  // namespace vigil
