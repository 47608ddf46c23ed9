#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "aam/codec.hpp"
#include "aam/flight_reporting.hpp"
#include "aam/geometry4d.hpp"
#include "aam/hash.hpp"

namespace aam::chain {

// Thread-specific block contents. Each payload has a canonical, injective
// byte encoding (leading kind tag, fixed field order).

struct HeartbeatPayload {};

struct SubmissionPayload {
    geo::OperatingVolumeContract ovc;
    std::string escrow_id;
    int64_t deposit = 0;
    double submitted_at = 0;
};

struct EndorsementPayload {
    std::string ovc_id;
    Hash256 submission_block;
    // Branch-objective committee inputs (PoS): beacon is the finalized block
    // id confirmation_depth behind this block's parent on its own branch;
    // round advances when earlier committees stall.
    Hash256 beacon;
    uint32_t committee_round = 0;
};

struct ConflictDemoPayload {
    geo::ConflictWitness witness;
    std::string against_ovc;  // the OVC being demoted
};

struct ReportPayload {
    report::FlightReport flight_report;
    bool playoff = false;
    std::string original_report_id;
};

struct ChallengePayload {
    std::string challenge_id;
    std::string report_id;
    std::string challenger;
    std::string escrow_id;
};

struct VotePayload {
    std::string challenge_id;
    std::string voter;
    report::Verdict verdict = report::Verdict::UpholdReport;
};

struct EvaluationPayload {
    std::string report_id;
    std::string evaluator;
    uint16_t measure_q = 0;
};

using Payload = std::variant<HeartbeatPayload, SubmissionPayload, EndorsementPayload,
                             ConflictDemoPayload, ReportPayload, ChallengePayload,
                             VotePayload, EvaluationPayload>;

std::vector<uint8_t> encode_payload(const Payload& p);
Payload decode_payload(std::span<const uint8_t> bytes);

// Field-level helpers shared with scenario ingest and the export format.
void encode_ovc(codec::Encoder& e, const geo::OperatingVolumeContract& ovc);
geo::OperatingVolumeContract decode_ovc(codec::Decoder& d);
void encode_point(codec::Encoder& e, const geo::Point4D& p);
geo::Point4D decode_point(codec::Decoder& d);

}  // namespace aam::chain
