#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aam/geometry4d.hpp"
#include "aam/token_ledger.hpp"

namespace aam::report {

enum class JustificationReason : uint8_t {
    EmergencyTermination = 0,
    PriorityGiveWay = 1,
    BlunderAvoidance = 2,
    Other = 3,
};
const char* to_string(JustificationReason r);

struct Justification {
    double t_start = 0;
    double t_end = 0;
    JustificationReason reason = JustificationReason::Other;
    std::string note;
};

struct FlightReport {
    std::string report_id;
    std::string ovc_id;
    std::vector<geo::Point4D> track;  // strictly increasing in t
    std::vector<Justification> justifications;
    std::string deposit_escrow;  // the retained OVC escrow
};

enum class Verdict : uint8_t { UpholdReport = 0, UpholdChallenge = 1 };
enum class ChallengeStatus : uint8_t { Open, LapsedNoQuorum, ChallengerWins, ReportWins };
const char* to_string(ChallengeStatus s);

struct VoteRecord {
    std::string voter;
    Verdict verdict = Verdict::UpholdReport;
};

struct Challenge {
    std::string challenge_id;
    std::string report_id;
    std::string challenger;
    std::string challenge_escrow;
    std::vector<VoteRecord> votes;
    ChallengeStatus status = ChallengeStatus::Open;
};

enum class ReportErrc {
    MalformedTrack,
    MalformedJustification,
    OvcNotEndorsed,
    DuplicateReport,
    ChallengePeriodOver,
    WrongDepositAmount,
    SelfChallenge,
    ChallengeAlreadyOpen,
    AlreadySettled,
    NoEvaluations,
    PlayoffAlreadyUsed,
    OriginalNotRefused,
};
const char* to_string(ReportErrc e);

struct ReportError : std::runtime_error {
    ReportErrc code;
    explicit ReportError(ReportErrc c) : std::runtime_error(to_string(c)), code(c) {}
};

// Track and justification invariants; throws ReportError.
void validate(const FlightReport& r);

// Compliance measures are consensus values, quantized to 1e-4 and carried as
// integers in [0, 10000].
constexpr int kMeasureScale = 10000;

// Fraction of flight time spent inside the OVC or inside an accepted
// justification interval, by linear interpolation between track points.
// accepted_justifications indexes into report.justifications.
double compliance_measure(const FlightReport& report,
                          const geo::OperatingVolumeContract& ovc,
                          const std::vector<size_t>& accepted_justifications);
uint16_t compliance_measure_q(const FlightReport& report,
                              const geo::OperatingVolumeContract& ovc,
                              const std::vector<size_t>& accepted_justifications);

// Modal value of the quantized measures; ties resolved to the smaller value.
uint16_t prevalent_measure(const std::vector<uint16_t>& measures_q);

struct ChallengeOutcome {
    ChallengeStatus status = ChallengeStatus::Open;
    ledger::Tokens fee_paid = 0;  // settlement fee routed to the authority
    ledger::Tokens share = 0;     // per-winner payout
    std::vector<std::string> winners;
};

// Executes the challenge settlement matrix on the ledger:
//  - fewer than committee_min votes: LapsedNoQuorum, challenger refunded.
//  - majority UpholdChallenge: challenger refunded; report escrow minus the
//    settlement fee split equally among challenger + challenger-side voters;
//    remainder to the authority.
//  - otherwise (majority UpholdReport or tie): challenge escrow minus the fee
//    split equally among report-side voters; remainder to the authority; the
//    report escrow is left for compliance evaluation.
// Duplicate voters beyond the first occurrence are ignored.
ChallengeOutcome settle_challenge(ledger::TokenLedger& ledger,
                                  const std::string& challenge_escrow,
                                  const std::string& report_escrow,
                                  const std::string& challenger,
                                  const std::vector<VoteRecord>& votes,
                                  int committee_min,
                                  ledger::Tokens settlement_fee,
                                  const std::string& authority);

struct EvaluationRecord {
    std::string evaluator;
    uint16_t measure_q = 0;
};

struct RebateOutcome {
    uint16_t prevalent_q = 0;
    ledger::Tokens fees_paid = 0;
    ledger::Tokens rebate = 0;
    ledger::Tokens residual = 0;
};

// Pays each distinct evaluator its fee from the report escrow, rebates
// floor(measure x remaining) to the operator and releases the residual to
// the authority. Throws NoEvaluations when the list is empty.
RebateOutcome evaluate_and_rebate(ledger::TokenLedger& ledger,
                                  const std::string& report_escrow,
                                  const std::string& operator_id,
                                  const std::vector<EvaluationRecord>& evaluations,
                                  ledger::Tokens evaluation_fee,
                                  const std::string& authority);

// The timeout path when no evaluations ever arrive (measure treated as the
// given value, normally 0), and the tail of evaluate_and_rebate.
RebateOutcome rebate_with_measure(ledger::TokenLedger& ledger,
                                  const std::string& report_escrow,
                                  const std::string& operator_id, uint16_t measure_q,
                                  const std::string& authority);

}  // namespace aam::report
