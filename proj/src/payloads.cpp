#include "aam/payloads.hpp"

namespace aam::chain {

namespace {

enum class Kind : uint8_t {
    Heartbeat = 0,
    Submission = 1,
    Endorsement = 2,
    ConflictDemo = 3,
    Report = 4,
    Challenge = 5,
    Vote = 6,
    Evaluation = 7,
};

void encode_vec3(codec::Encoder& e, const geo::Vec3& v) {
    e.real(v.x);
    e.real(v.y);
    e.real(v.z);
}

geo::Vec3 decode_vec3(codec::Decoder& d) {
    geo::Vec3 v;
    v.x = d.real();
    v.y = d.real();
    v.z = d.real();
    return v;
}

}  // namespace

void encode_point(codec::Encoder& e, const geo::Point4D& p) {
    e.real(p.t);
    e.real(p.x);
    e.real(p.y);
    e.real(p.z);
}

geo::Point4D decode_point(codec::Decoder& d) {
    geo::Point4D p;
    p.t = d.real();
    p.x = d.real();
    p.y = d.real();
    p.z = d.real();
    return p;
}

void encode_ovc(codec::Encoder& e, const geo::OperatingVolumeContract& ovc) {
    e.str(ovc.ovc_id);
    e.str(ovc.operator_id);
    e.list(ovc.segments, [](codec::Encoder& enc, const geo::VolumeSegment& s) {
        enc.real(s.t_start);
        enc.real(s.t_end);
        encode_vec3(enc, s.box_min);
        encode_vec3(enc, s.box_max);
    });
    e.boolean(ovc.exclusive);
    e.u8(static_cast<uint8_t>(ovc.priority_class));
    e.u32(ovc.capacity_limit);
    e.i64(ovc.deposit);
    e.optional(ovc.approval_hash,
               [](codec::Encoder& enc, const Hash256& h) { enc.hash(h); });
    e.list(ovc.referenced_exclusive,
           [](codec::Encoder& enc, const std::string& id) { enc.str(id); });
}

geo::OperatingVolumeContract decode_ovc(codec::Decoder& d) {
    geo::OperatingVolumeContract ovc;
    ovc.ovc_id = d.str();
    ovc.operator_id = d.str();
    ovc.segments = d.list<geo::VolumeSegment>([](codec::Decoder& dd) {
        geo::VolumeSegment s;
        s.t_start = dd.real();
        s.t_end = dd.real();
        s.box_min = decode_vec3(dd);
        s.box_max = decode_vec3(dd);
        return s;
    });
    ovc.exclusive = d.boolean();
    ovc.priority_class = static_cast<geo::PriorityClass>(d.u8());
    ovc.capacity_limit = d.u32();
    ovc.deposit = d.i64();
    ovc.approval_hash =
        d.opt<Hash256>([](codec::Decoder& dd) { return dd.hash(); });
    ovc.referenced_exclusive =
        d.list<std::string>([](codec::Decoder& dd) { return dd.str(); });
    return ovc;
}

namespace {

void encode_report(codec::Encoder& e, const report::FlightReport& r) {
    e.str(r.report_id);
    e.str(r.ovc_id);
    e.list(r.track, [](codec::Encoder& enc, const geo::Point4D& p) {
        encode_point(enc, p);
    });
    e.list(r.justifications, [](codec::Encoder& enc, const report::Justification& j) {
        enc.real(j.t_start);
        enc.real(j.t_end);
        enc.u8(static_cast<uint8_t>(j.reason));
        enc.str(j.note);
    });
    e.str(r.deposit_escrow);
}

report::FlightReport decode_report(codec::Decoder& d) {
    report::FlightReport r;
    r.report_id = d.str();
    r.ovc_id = d.str();
    r.track = d.list<geo::Point4D>([](codec::Decoder& dd) { return decode_point(dd); });
    r.justifications = d.list<report::Justification>([](codec::Decoder& dd) {
        report::Justification j;
        j.t_start = dd.real();
        j.t_end = dd.real();
        j.reason = static_cast<report::JustificationReason>(dd.u8());
        j.note = dd.str();
        return j;
    });
    r.deposit_escrow = d.str();
    return r;
}

}  // namespace

std::vector<uint8_t> encode_payload(const Payload& p) {
    codec::Encoder e;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, HeartbeatPayload>) {
                e.u8(static_cast<uint8_t>(Kind::Heartbeat));
            } else if constexpr (std::is_same_v<T, SubmissionPayload>) {
                e.u8(static_cast<uint8_t>(Kind::Submission));
                encode_ovc(e, v.ovc);
                e.str(v.escrow_id);
                e.i64(v.deposit);
                e.real(v.submitted_at);
            } else if constexpr (std::is_same_v<T, EndorsementPayload>) {
                e.u8(static_cast<uint8_t>(Kind::Endorsement));
                e.str(v.ovc_id);
                e.hash(v.submission_block);
                e.hash(v.beacon);
                e.u32(v.committee_round);
            } else if constexpr (std::is_same_v<T, ConflictDemoPayload>) {
                e.u8(static_cast<uint8_t>(Kind::ConflictDemo));
                e.str(v.witness.ovc_a);
                e.str(v.witness.ovc_b);
                encode_point(e, v.witness.witness);
                e.str(v.against_ovc);
            } else if constexpr (std::is_same_v<T, ReportPayload>) {
                e.u8(static_cast<uint8_t>(Kind::Report));
                encode_report(e, v.flight_report);
                e.boolean(v.playoff);
                e.str(v.original_report_id);
            } else if constexpr (std::is_same_v<T, ChallengePayload>) {
                e.u8(static_cast<uint8_t>(Kind::Challenge));
                e.str(v.challenge_id);
                e.str(v.report_id);
                e.str(v.challenger);
                e.str(v.escrow_id);
            } else if constexpr (std::is_same_v<T, VotePayload>) {
                e.u8(static_cast<uint8_t>(Kind::Vote));
                e.str(v.challenge_id);
                e.str(v.voter);
                e.u8(static_cast<uint8_t>(v.verdict));
            } else if constexpr (std::is_same_v<T, EvaluationPayload>) {
                e.u8(static_cast<uint8_t>(Kind::Evaluation));
                e.str(v.report_id);
                e.str(v.evaluator);
                e.u16(v.measure_q);
            }
        },
        p);
    return e.take();
}

Payload decode_payload(std::span<const uint8_t> bytes) {
    codec::Decoder d(bytes);
    auto kind = static_cast<Kind>(d.u8());
    Payload out;
    switch (kind) {
        case Kind::Heartbeat:
            out = HeartbeatPayload{};
            break;
        case Kind::Submission: {
            SubmissionPayload v;
            v.ovc = decode_ovc(d);
            v.escrow_id = d.str();
            v.deposit = d.i64();
            v.submitted_at = d.real();
            out = v;
            break;
        }
        case Kind::Endorsement: {
            EndorsementPayload v;
            v.ovc_id = d.str();
            v.submission_block = d.hash();
            v.beacon = d.hash();
            v.committee_round = d.u32();
            out = v;
            break;
        }
        case Kind::ConflictDemo: {
            ConflictDemoPayload v;
            v.witness.ovc_a = d.str();
            v.witness.ovc_b = d.str();
            v.witness.witness = decode_point(d);
            v.against_ovc = d.str();
            out = v;
            break;
        }
        case Kind::Report: {
            ReportPayload v;
            v.flight_report = decode_report(d);
            v.playoff = d.boolean();
            v.original_report_id = d.str();
            out = v;
            break;
        }
        case Kind::Challenge: {
            ChallengePayload v;
            v.challenge_id = d.str();
            v.report_id = d.str();
            v.challenger = d.str();
            v.escrow_id = d.str();
            out = v;
            break;
        }
        case Kind::Vote: {
            VotePayload v;
            v.challenge_id = d.str();
            v.voter = d.str();
            v.verdict = static_cast<report::Verdict>(d.u8());
            out = v;
            break;
        }
        case Kind::Evaluation: {
            EvaluationPayload v;
            v.report_id = d.str();
            v.evaluator = d.str();
            v.measure_q = d.u16();
            out = v;
            break;
        }
        default:
            throw codec::DecodeError("unknown payload kind");
    }
    d.expect_done();
    return out;
}

}  // namespace aam::chain
