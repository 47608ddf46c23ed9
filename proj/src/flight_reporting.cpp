#include "aam/flight_reporting.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace aam::report {

const char* to_string(JustificationReason r) {
    switch (r) {
        case JustificationReason::EmergencyTermination: return "EmergencyTermination";
        case JustificationReason::PriorityGiveWay: return "PriorityGiveWay";
        case JustificationReason::BlunderAvoidance: return "BlunderAvoidance";
        case JustificationReason::Other: return "Other";
    }
    return "?";
}

const char* to_string(ChallengeStatus s) {
    switch (s) {
        case ChallengeStatus::Open: return "Open";
        case ChallengeStatus::LapsedNoQuorum: return "LapsedNoQuorum";
        case ChallengeStatus::ChallengerWins: return "ChallengerWins";
        case ChallengeStatus::ReportWins: return "ReportWins";
    }
    return "?";
}

const char* to_string(ReportErrc e) {
    switch (e) {
        case ReportErrc::MalformedTrack: return "MalformedTrack";
        case ReportErrc::MalformedJustification: return "MalformedJustification";
        case ReportErrc::OvcNotEndorsed: return "OvcNotEndorsed";
        case ReportErrc::DuplicateReport: return "DuplicateReport";
        case ReportErrc::ChallengePeriodOver: return "ChallengePeriodOver";
        case ReportErrc::WrongDepositAmount: return "WrongDepositAmount";
        case ReportErrc::SelfChallenge: return "SelfChallenge";
        case ReportErrc::ChallengeAlreadyOpen: return "ChallengeAlreadyOpen";
        case ReportErrc::AlreadySettled: return "AlreadySettled";
        case ReportErrc::NoEvaluations: return "NoEvaluations";
        case ReportErrc::PlayoffAlreadyUsed: return "PlayoffAlreadyUsed";
        case ReportErrc::OriginalNotRefused: return "OriginalNotRefused";
    }
    return "?";
}

void validate(const FlightReport& r) {
    if (r.report_id.empty() || r.ovc_id.empty()) throw ReportError(ReportErrc::MalformedTrack);
    if (r.track.empty()) throw ReportError(ReportErrc::MalformedTrack);
    for (const auto& p : r.track)
        if (!std::isfinite(p.t) || !std::isfinite(p.x) || !std::isfinite(p.y) ||
            !std::isfinite(p.z))
            throw ReportError(ReportErrc::MalformedTrack);
    for (size_t i = 1; i < r.track.size(); ++i)
        if (!(r.track[i - 1].t < r.track[i].t))
            throw ReportError(ReportErrc::MalformedTrack);

    double t0 = r.track.front().t, t1 = r.track.back().t;
    std::vector<std::pair<double, double>> ivals;
    for (const auto& j : r.justifications) {
        if (!(j.t_start < j.t_end) || j.t_start < t0 || j.t_end > t1)
            throw ReportError(ReportErrc::MalformedJustification);
        ivals.emplace_back(j.t_start, j.t_end);
    }
    std::sort(ivals.begin(), ivals.end());
    for (size_t i = 1; i < ivals.size(); ++i)
        if (ivals[i].first < ivals[i - 1].second)
            throw ReportError(ReportErrc::MalformedJustification);
}

namespace {

// lambda-interval on [w0, w1] where lo <= a + lambda*slope <= hi; empty
// interval is signalled by first > second.
void clip_axis(double a, double slope, double lo, double hi, double& w0, double& w1) {
    if (slope == 0.0) {
        if (a < lo || a > hi) w0 = 1.0, w1 = 0.0;
        return;
    }
    double l0 = (lo - a) / slope;
    double l1 = (hi - a) / slope;
    if (l0 > l1) std::swap(l0, l1);
    w0 = std::max(w0, l0);
    w1 = std::min(w1, l1);
}

}  // namespace

double compliance_measure(const FlightReport& report,
                          const geo::OperatingVolumeContract& ovc,
                          const std::vector<size_t>& accepted_justifications) {
    const auto& track = report.track;
    double total = track.back().t - track.front().t;
    if (total <= 0.0) {
        return geo::contains(ovc, track.front()) ? 1.0 : 0.0;
    }

    std::vector<std::pair<double, double>> accepted;
    for (size_t idx : accepted_justifications) {
        if (idx >= report.justifications.size()) continue;
        const auto& j = report.justifications[idx];
        accepted.emplace_back(j.t_start, j.t_end);
    }

    double credited = 0.0;
    for (size_t i = 0; i + 1 < track.size(); ++i) {
        const auto& p0 = track[i];
        const auto& p1 = track[i + 1];
        double leg = p1.t - p0.t;

        // Credited sub-intervals of [p0.t, p1.t]: inside some OVC segment or
        // inside an accepted justification window. Collect, merge, sum.
        std::vector<std::pair<double, double>> credit;
        for (const auto& s : ovc.segments) {
            double w0 = std::max(p0.t, s.t_start);
            double w1 = std::min(p1.t, s.t_end);
            if (w0 >= w1) continue;
            // Convert to leg fractions and clip by each axis.
            double f0 = (w0 - p0.t) / leg;
            double f1 = (w1 - p0.t) / leg;
            clip_axis(p0.x, p1.x - p0.x, s.box_min.x, s.box_max.x, f0, f1);
            clip_axis(p0.y, p1.y - p0.y, s.box_min.y, s.box_max.y, f0, f1);
            clip_axis(p0.z, p1.z - p0.z, s.box_min.z, s.box_max.z, f0, f1);
            if (f0 < f1)
                credit.emplace_back(p0.t + f0 * leg, p0.t + f1 * leg);
        }
        for (const auto& [a, b] : accepted) {
            double w0 = std::max(p0.t, a);
            double w1 = std::min(p1.t, b);
            if (w0 < w1) credit.emplace_back(w0, w1);
        }
        std::sort(credit.begin(), credit.end());
        double cursor = p0.t;
        for (const auto& [a, b] : credit) {
            double lo = std::max(a, cursor);
            if (b > lo) {
                credited += b - lo;
                cursor = b;
            }
        }
    }
    double m = credited / total;
    return std::min(std::max(m, 0.0), 1.0);
}

uint16_t compliance_measure_q(const FlightReport& report,
                              const geo::OperatingVolumeContract& ovc,
                              const std::vector<size_t>& accepted_justifications) {
    double m = compliance_measure(report, ovc, accepted_justifications);
    long q = std::lround(m * kMeasureScale);
    if (q < 0) q = 0;
    if (q > kMeasureScale) q = kMeasureScale;
    return static_cast<uint16_t>(q);
}

uint16_t prevalent_measure(const std::vector<uint16_t>& measures_q) {
    if (measures_q.empty()) throw ReportError(ReportErrc::NoEvaluations);
    std::map<uint16_t, size_t> counts;
    for (auto m : measures_q) ++counts[m];
    uint16_t best = measures_q.front();
    size_t best_count = 0;
    for (const auto& [value, count] : counts) {
        // map iterates ascending, so the first maximum is the smallest value
        if (count > best_count) {
            best = value;
            best_count = count;
        }
    }
    return best;
}

namespace {

std::vector<VoteRecord> dedup_votes(const std::vector<VoteRecord>& votes) {
    std::vector<VoteRecord> out;
    for (const auto& v : votes) {
        bool seen = false;
        for (const auto& o : out)
            if (o.voter == v.voter) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(v);
    }
    return out;
}

}  // namespace

ChallengeOutcome settle_challenge(ledger::TokenLedger& ledger,
                                  const std::string& challenge_escrow,
                                  const std::string& report_escrow,
                                  const std::string& challenger,
                                  const std::vector<VoteRecord>& votes,
                                  int committee_min, ledger::Tokens settlement_fee,
                                  const std::string& authority) {
    ChallengeOutcome out;
    auto counted = dedup_votes(votes);

    if (counted.size() < static_cast<size_t>(committee_min)) {
        out.status = ChallengeStatus::LapsedNoQuorum;
        ledger.release_escrow(challenge_escrow, challenger);
        return out;
    }

    size_t uphold_challenge = 0;
    for (const auto& v : counted)
        if (v.verdict == Verdict::UpholdChallenge) ++uphold_challenge;
    size_t uphold_report = counted.size() - uphold_challenge;

    auto side_voters = [&](Verdict side) {
        std::vector<std::string> ids;
        for (const auto& v : counted)
            if (v.verdict == side) ids.push_back(v.voter);
        std::sort(ids.begin(), ids.end());
        return ids;
    };

    auto pay_pot = [&](const std::string& escrow, const std::vector<std::string>& winners,
                       bool challenger_included) {
        ledger::Tokens pot = ledger.escrow(escrow).remaining;
        ledger::Tokens fee = std::min(settlement_fee, pot);
        if (fee > 0) {
            ledger.pay_from_escrow(escrow, {{authority, fee}},
                                   ledger::TxReason::ValidationFee);
            out.fee_paid = fee;
            pot -= fee;
        }
        ledger::Tokens share = ledger::TokenLedger::equal_share(pot, winners.size());
        out.share = share;
        out.winners = winners;
        if (share > 0) {
            for (const auto& w : winners) {
                bool is_challenger = challenger_included && w == challenger;
                ledger.pay_from_escrow(
                    escrow, {{w, share}},
                    is_challenger ? ledger::TxReason::ChallengePayout
                                  : ledger::TxReason::VoterReward);
            }
        }
        ledger.release_escrow(escrow, authority);
    };

    if (uphold_challenge > uphold_report) {
        out.status = ChallengeStatus::ChallengerWins;
        // Challenger recovers its deposit in full.
        ledger.release_escrow(challenge_escrow, challenger);
        auto winners = side_voters(Verdict::UpholdChallenge);
        winners.push_back(challenger);
        std::sort(winners.begin(), winners.end());
        winners.erase(std::unique(winners.begin(), winners.end()), winners.end());
        pay_pot(report_escrow, winners, true);
    } else {
        // Ties favor the report: the burden of proof is the challenger's.
        out.status = ChallengeStatus::ReportWins;
        pay_pot(challenge_escrow, side_voters(Verdict::UpholdReport), false);
    }
    return out;
}

RebateOutcome rebate_with_measure(ledger::TokenLedger& ledger,
                                  const std::string& report_escrow,
                                  const std::string& operator_id, uint16_t measure_q,
                                  const std::string& authority) {
    RebateOutcome out;
    out.prevalent_q = measure_q;
    ledger::Tokens remaining = ledger.escrow(report_escrow).remaining;
    out.rebate = remaining * static_cast<ledger::Tokens>(measure_q) / kMeasureScale;
    if (out.rebate > 0)
        ledger.pay_from_escrow(report_escrow, {{operator_id, out.rebate}},
                               ledger::TxReason::Rebate);
    out.residual = ledger.escrow(report_escrow).remaining;
    ledger.release_escrow(report_escrow, authority);
    return out;
}

RebateOutcome evaluate_and_rebate(ledger::TokenLedger& ledger,
                                  const std::string& report_escrow,
                                  const std::string& operator_id,
                                  const std::vector<EvaluationRecord>& evaluations,
                                  ledger::Tokens evaluation_fee,
                                  const std::string& authority) {
    if (evaluations.empty()) throw ReportError(ReportErrc::NoEvaluations);

    std::vector<std::string> evaluators;
    std::vector<uint16_t> measures;
    for (const auto& e : evaluations) {
        if (std::find(evaluators.begin(), evaluators.end(), e.evaluator) !=
            evaluators.end())
            continue;
        evaluators.push_back(e.evaluator);
        measures.push_back(e.measure_q);
    }
    uint16_t prevalent = prevalent_measure(measures);

    RebateOutcome out;
    std::sort(evaluators.begin(), evaluators.end());
    for (const auto& ev : evaluators) {
        ledger::Tokens remaining = ledger.escrow(report_escrow).remaining;
        ledger::Tokens fee = std::min(evaluation_fee, remaining);
        if (fee <= 0) break;
        ledger.pay_from_escrow(report_escrow, {{ev, fee}},
                               ledger::TxReason::ValidationFee);
        out.fees_paid += fee;
    }
    auto tail = rebate_with_measure(ledger, report_escrow, operator_id, prevalent, authority);
    out.prevalent_q = tail.prevalent_q;
    out.rebate = tail.rebate;
    out.residual = tail.residual;
    return out;
}

}  // namespace aam::report
