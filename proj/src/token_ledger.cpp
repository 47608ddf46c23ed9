#include "aam/token_ledger.hpp"

#include <cassert>

namespace aam::ledger {

const char* to_string(Role r) {
    switch (r) {
        case Role::Operator: return "Operator";
        case Role::ValidatorNode: return "ValidatorNode";
        case Role::Authority: return "Authority";
        case Role::StationPool: return "StationPool";
    }
    return "?";
}

const char* to_string(EscrowPurpose p) {
    switch (p) {
        case EscrowPurpose::OvcDeposit: return "OvcDeposit";
        case EscrowPurpose::ReportDeposit: return "ReportDeposit";
        case EscrowPurpose::ChallengeDeposit: return "ChallengeDeposit";
    }
    return "?";
}

const char* to_string(TxReason r) {
    switch (r) {
        case TxReason::Deposit: return "Deposit";
        case TxReason::ValidationFee: return "ValidationFee";
        case TxReason::ChallengePayout: return "ChallengePayout";
        case TxReason::VoterReward: return "VoterReward";
        case TxReason::Rebate: return "Rebate";
        case TxReason::AuthorityResidual: return "AuthorityResidual";
        case TxReason::Mint: return "Mint";
        case TxReason::Burn: return "Burn";
    }
    return "?";
}

const char* to_string(LedgerErrc e) {
    switch (e) {
        case LedgerErrc::UnknownAccount: return "UnknownAccount";
        case LedgerErrc::UnknownEscrow: return "UnknownEscrow";
        case LedgerErrc::DuplicateAccount: return "DuplicateAccount";
        case LedgerErrc::InsufficientBalance: return "InsufficientBalance";
        case LedgerErrc::NonPositiveAmount: return "NonPositiveAmount";
        case LedgerErrc::EscrowOverdraw: return "EscrowOverdraw";
        case LedgerErrc::EscrowAlreadyReleased: return "EscrowAlreadyReleased";
        case LedgerErrc::NotAuthority: return "NotAuthority";
    }
    return "?";
}

Account& TokenLedger::account_ref(const std::string& id) {
    auto it = accounts_.find(id);
    if (it == accounts_.end()) throw LedgerError(LedgerErrc::UnknownAccount);
    return it->second;
}

Escrow& TokenLedger::escrow_ref(const std::string& id) {
    auto it = escrows_.find(id);
    if (it == escrows_.end()) throw LedgerError(LedgerErrc::UnknownEscrow);
    return it->second;
}

void TokenLedger::record(const std::string& from, const std::string& to,
                         Tokens amount, TxReason reason) {
    journal_.push_back(TokenTransaction{
        static_cast<uint64_t>(journal_.size() + 1), from, to, amount, reason});
}

void TokenLedger::create_account(const std::string& id, Role role,
                                 Tokens initial_balance) {
    if (initial_balance < 0) throw LedgerError(LedgerErrc::NonPositiveAmount);
    if (accounts_.count(id)) throw LedgerError(LedgerErrc::DuplicateAccount);
    accounts_.emplace(id, Account{id, initial_balance, role});
    initial_supply_ += initial_balance;
}

std::string TokenLedger::open_escrow(const std::string& source, Tokens amount,
                                     EscrowPurpose purpose) {
    if (amount <= 0) throw LedgerError(LedgerErrc::NonPositiveAmount);
    Account& src = account_ref(source);
    if (src.balance < amount) throw LedgerError(LedgerErrc::InsufficientBalance);

    std::string id = "esc" + std::to_string(next_escrow_++);
    src.balance -= amount;
    escrows_.emplace(id, Escrow{id, source, amount, purpose, EscrowStatus::Held});
    record(source, id, amount, TxReason::Deposit);
    return id;
}

std::vector<TokenTransaction> TokenLedger::pay_from_escrow(
    const std::string& escrow_id,
    const std::vector<std::pair<std::string, Tokens>>& recipients, TxReason reason) {
    Escrow& esc = escrow_ref(escrow_id);
    if (esc.status == EscrowStatus::Released)
        throw LedgerError(LedgerErrc::EscrowAlreadyReleased);

    Tokens total = 0;
    for (const auto& [to, amount] : recipients) {
        if (amount <= 0) throw LedgerError(LedgerErrc::NonPositiveAmount);
        account_ref(to);  // existence check before any mutation
        total += amount;
    }
    if (total > esc.remaining) throw LedgerError(LedgerErrc::EscrowOverdraw);

    std::vector<TokenTransaction> txs;
    for (const auto& [to, amount] : recipients) {
        account_ref(to).balance += amount;
        esc.remaining -= amount;
        record(escrow_id, to, amount, reason);
        txs.push_back(journal_.back());
    }
    return txs;
}

std::optional<TokenTransaction> TokenLedger::release_escrow(
    const std::string& escrow_id, const std::string& residual_to) {
    Escrow& esc = escrow_ref(escrow_id);
    if (esc.status == EscrowStatus::Released)
        throw LedgerError(LedgerErrc::EscrowAlreadyReleased);
    Account& to = account_ref(residual_to);

    esc.status = EscrowStatus::Released;
    if (esc.remaining == 0) return std::nullopt;
    Tokens amount = esc.remaining;
    esc.remaining = 0;
    to.balance += amount;
    record(escrow_id, residual_to, amount, TxReason::AuthorityResidual);
    return journal_.back();
}

TokenTransaction TokenLedger::authority_mint(const std::string& caller,
                                             const std::string& to, Tokens amount) {
    if (account_ref(caller).role != Role::Authority)
        throw LedgerError(LedgerErrc::NotAuthority);
    if (amount <= 0) throw LedgerError(LedgerErrc::NonPositiveAmount);
    Account& dst = account_ref(to);
    dst.balance += amount;
    minted_ += amount;
    record("", to, amount, TxReason::Mint);
    return journal_.back();
}

TokenTransaction TokenLedger::authority_burn(const std::string& caller,
                                             const std::string& from, Tokens amount) {
    if (account_ref(caller).role != Role::Authority)
        throw LedgerError(LedgerErrc::NotAuthority);
    if (amount <= 0) throw LedgerError(LedgerErrc::NonPositiveAmount);
    Account& src = account_ref(from);
    if (src.balance < amount) throw LedgerError(LedgerErrc::InsufficientBalance);
    src.balance -= amount;
    burned_ += amount;
    record(from, "", amount, TxReason::Burn);
    return journal_.back();
}

Tokens TokenLedger::balance(const std::string& account_id) const {
    auto it = accounts_.find(account_id);
    if (it == accounts_.end()) throw LedgerError(LedgerErrc::UnknownAccount);
    return it->second.balance;
}

const Escrow& TokenLedger::escrow(const std::string& escrow_id) const {
    auto it = escrows_.find(escrow_id);
    if (it == escrows_.end()) throw LedgerError(LedgerErrc::UnknownEscrow);
    return it->second;
}

Tokens TokenLedger::circulating_total() const {
    Tokens total = 0;
    for (const auto& [id, acc] : accounts_) total += acc.balance;
    for (const auto& [id, esc] : escrows_)
        if (esc.status == EscrowStatus::Held) total += esc.remaining;
    return total;
}

void TokenLedger::write_journal(std::ostream& os) const {
    for (const auto& tx : journal_) {
        os << "{\"tx\":" << tx.tx_id << ",\"from\":\"" << tx.from << "\",\"to\":\""
           << tx.to << "\",\"amount\":" << tx.amount << ",\"reason\":\""
           << to_string(tx.reason) << "\"}\n";
    }
}

}  // namespace aam::ledger
