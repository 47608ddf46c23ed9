#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aam/codec.hpp"
#include "aam/hash.hpp"

namespace aam::chain {

enum class Thread : uint8_t {
    UnverifiedOvc = 0,
    ValidatedOvc = 1,
    ConflictDemo = 2,
    Report = 3,
};
constexpr int kThreadCount = 4;
const char* to_string(Thread t);

enum class ChainErrc {
    UnknownParent,
    DuplicateBlock,
    InvalidBlock,
    BadProofOfWork,
    BadHeight,
    FewerAccountsThanK,
};
const char* to_string(ChainErrc e);

struct ChainError : std::runtime_error {
    ChainErrc code;
    std::string detail;
    ChainError(ChainErrc c, std::string d = {})
        : std::runtime_error(std::string(to_string(c)) +
                             (d.empty() ? "" : ": " + d)),
          code(c),
          detail(std::move(d)) {}
};

// hash < 2^exponent, i.e. 256-exponent leading zero bits. exponent=256 admits
// every hash (no puzzle).
struct DifficultyTarget {
    int exponent = 256;

    static DifficultyTarget from_zero_bits(int bits) { return {256 - bits}; }
    int zero_bits() const { return 256 - exponent; }
    bool admits(const Hash256& h) const {
        return exponent >= 256 || h.leading_zero_bits() >= 256 - exponent;
    }
};

struct Block {
    Hash256 parent;  // zero = genesis sentinel
    Thread thread = Thread::UnverifiedOvc;
    std::string producer;
    uint64_t nonce = 0;
    uint64_t height = 1;
    std::vector<uint8_t> payload;

    Hash256 block_id;  // H(canonical encoding of all other fields)

    bool genesis_parent() const { return parent.is_zero(); }
};

// Canonical block encoding; block_id = sha256(encode_for_hash(block)).
std::vector<uint8_t> encode_block(const Block& b);
Block decode_block(std::span<const uint8_t> bytes);  // verifies the id
Hash256 compute_block_id(const Block& b);

// Sequential nonce search from nonce_seed until the id satisfies target.
Block mine_block(const Hash256& parent, uint64_t parent_height, Thread thread,
                 std::vector<uint8_t> payload, const std::string& producer,
                 DifficultyTarget target, uint64_t nonce_seed = 0);

// k distinct accounts drawn without replacement, probability proportional to
// stake, from the deterministic stream H(beacon || ovc_id || counter). Every
// honest node computes the same committee.
std::vector<std::string> select_endorsers(
    const std::string& ovc_id,
    const std::vector<std::pair<std::string, uint64_t>>& stake_table, size_t k,
    const Hash256& randomness_beacon);

// Thread-specific payload validation, run before a block enters the store.
// Receives the candidate and the store (the parent chain is reachable via
// ancestors_of). Throws ChainError{InvalidBlock} to reject.
class ChainStore;
using ValidityHook = std::function<void(const Block&, const ChainStore&)>;

// Append-only block store with per-thread heaviest-chain fork choice
// (greatest height, ties to the numerically smaller block_id) and
// depth-based finality.
class ChainStore {
public:
    ChainStore(DifficultyTarget pow_target, bool enforce_pow, int confirmation_depth)
        : target_(pow_target),
          enforce_pow_(enforce_pow),
          confirmation_depth_(confirmation_depth) {}

    // Validates structure (parent, height, puzzle when enforced, hook),
    // stores the block and updates head/finality for its thread.
    void append(const Block& b, const ValidityHook& hook = {});

    bool contains(const Hash256& id) const { return blocks_.count(id) != 0; }
    const Block& block(const Hash256& id) const;
    // Zero hash when the thread is empty.
    Hash256 head(Thread t) const { return heads_[static_cast<int>(t)]; }
    uint64_t head_height(Thread t) const;

    // Highest finalized block of the thread (depth >= confirmation_depth
    // behind the head). Zero hash when nothing is finalized yet.
    Hash256 finalized_tip(Thread t) const;
    bool is_finalized(const Hash256& id) const;

    // Walks tip -> genesis, calling fn on each block.
    void for_each_ancestor(const Hash256& tip,
                           const std::function<void(const Block&)>& fn) const;
    // Ancestor of tip that sits depth blocks above genesis-height cut, i.e.
    // the block at `height` on tip's branch; zero hash if height == 0.
    Hash256 ancestor_at_height(const Hash256& tip, uint64_t height) const;

    // True once a head change implied rewriting an already-finalized prefix.
    bool finality_violated() const { return finality_violated_; }

    std::vector<Block> all_blocks_by_id() const;  // sorted by block_id
    size_t size() const { return blocks_.size(); }
    int confirmation_depth() const { return confirmation_depth_; }

    void export_stream(std::ostream& os) const;

private:
    void update_head(Thread t);

    DifficultyTarget target_;
    bool enforce_pow_;
    int confirmation_depth_;
    std::map<Hash256, Block> blocks_;
    std::array<Hash256, kThreadCount> heads_{};
    // thread -> (height -> finalized block id); entries never change.
    std::array<std::map<uint64_t, Hash256>, kThreadCount> finalized_{};
    std::array<std::set<Hash256>, kThreadCount> tips_{};
    bool finality_violated_ = false;
};

}  // namespace aam::chain
