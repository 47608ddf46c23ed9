#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aam::ledger {

using Tokens = int64_t;

enum class Role : uint8_t { Operator, ValidatorNode, Authority, StationPool };
enum class EscrowPurpose : uint8_t { OvcDeposit, ReportDeposit, ChallengeDeposit };
enum class EscrowStatus : uint8_t { Held, Released };
enum class TxReason : uint8_t {
    Deposit,
    ValidationFee,
    ChallengePayout,
    VoterReward,
    Rebate,
    AuthorityResidual,
    Mint,
    Burn,
};

const char* to_string(Role r);
const char* to_string(EscrowPurpose p);
const char* to_string(TxReason r);

enum class LedgerErrc {
    UnknownAccount,
    UnknownEscrow,
    DuplicateAccount,
    InsufficientBalance,
    NonPositiveAmount,
    EscrowOverdraw,
    EscrowAlreadyReleased,
    NotAuthority,
};

const char* to_string(LedgerErrc e);

struct LedgerError : std::runtime_error {
    LedgerErrc code;
    explicit LedgerError(LedgerErrc c)
        : std::runtime_error(to_string(c)), code(c) {}
};

struct Account {
    std::string account_id;
    Tokens balance = 0;
    Role role = Role::Operator;
};

struct Escrow {
    std::string escrow_id;
    std::string source;
    Tokens remaining = 0;
    EscrowPurpose purpose = EscrowPurpose::OvcDeposit;
    EscrowStatus status = EscrowStatus::Held;
};

struct TokenTransaction {
    uint64_t tx_id = 0;
    std::string from;  // account or escrow id
    std::string to;
    Tokens amount = 0;
    TxReason reason = TxReason::Deposit;
};

// Account balances, escrows and the append-only transaction journal.
// Single-writer: the simulation event loop owns all mutations. Every
// operation either completes or throws with state unchanged; balances are
// never negative and Sum(balances) + Sum(held escrows) is conserved up to
// explicit mint/burn.
class TokenLedger {
public:
    void create_account(const std::string& id, Role role, Tokens initial_balance);

    // Moves amount from source into a new Held escrow; returns its id.
    std::string open_escrow(const std::string& source, Tokens amount,
                            EscrowPurpose purpose);

    // Pays recipients out of a held escrow. The sum must not exceed the
    // remaining amount; the escrow stays Held.
    std::vector<TokenTransaction> pay_from_escrow(
        const std::string& escrow_id,
        const std::vector<std::pair<std::string, Tokens>>& recipients,
        TxReason reason);

    // Transfers the remaining amount to residual_to and marks the escrow
    // Released. A zero remainder records no transaction.
    std::optional<TokenTransaction> release_escrow(const std::string& escrow_id,
                                                   const std::string& residual_to);

    TokenTransaction authority_mint(const std::string& caller, const std::string& to,
                                    Tokens amount);
    TokenTransaction authority_burn(const std::string& caller, const std::string& from,
                                    Tokens amount);

    Tokens balance(const std::string& account_id) const;
    const Escrow& escrow(const std::string& escrow_id) const;
    bool has_account(const std::string& id) const { return accounts_.count(id) != 0; }
    const std::map<std::string, Account>& accounts() const { return accounts_; }
    const std::vector<TokenTransaction>& journal() const { return journal_; }

    Tokens initial_supply() const { return initial_supply_; }
    Tokens minted() const { return minted_; }
    Tokens burned() const { return burned_; }
    // Sum(balances) + Sum(held escrow remainders).
    Tokens circulating_total() const;
    bool conservation_holds() const {
        return circulating_total() == initial_supply_ + minted_ - burned_;
    }

    // Equal split with the integer remainder left in place: each of k
    // recipients gets floor(amount / k).
    static Tokens equal_share(Tokens amount, size_t k) {
        return k == 0 ? 0 : amount / static_cast<Tokens>(k);
    }

    // One transaction per line, fixed field order:
    // {"tx":N,"from":...,"to":...,"amount":N,"reason":...}
    void write_journal(std::ostream& os) const;

private:
    Account& account_ref(const std::string& id);
    Escrow& escrow_ref(const std::string& id);
    void record(const std::string& from, const std::string& to, Tokens amount,
                TxReason reason);

    std::map<std::string, Account> accounts_;
    std::map<std::string, Escrow> escrows_;
    std::vector<TokenTransaction> journal_;
    uint64_t next_escrow_ = 1;
    Tokens initial_supply_ = 0;
    Tokens minted_ = 0;
    Tokens burned_ = 0;
};

}  // namespace aam::ledger
