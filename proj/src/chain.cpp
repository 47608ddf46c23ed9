#include "aam/chain.hpp"

#include <algorithm>
#include <cassert>

namespace aam::chain {

const char* to_string(Thread t) {
    switch (t) {
        case Thread::UnverifiedOvc: return "UnverifiedOvc";
        case Thread::ValidatedOvc: return "ValidatedOvc";
        case Thread::ConflictDemo: return "ConflictDemo";
        case Thread::Report: return "Report";
    }
    return "?";
}

const char* to_string(ChainErrc e) {
    switch (e) {
        case ChainErrc::UnknownParent: return "UnknownParent";
        case ChainErrc::DuplicateBlock: return "DuplicateBlock";
        case ChainErrc::InvalidBlock: return "InvalidBlock";
        case ChainErrc::BadProofOfWork: return "BadProofOfWork";
        case ChainErrc::BadHeight: return "BadHeight";
        case ChainErrc::FewerAccountsThanK: return "FewerAccountsThanK";
    }
    return "?";
}

static std::vector<uint8_t> encode_for_hash(const Block& b) {
    codec::Encoder e;
    e.hash(b.parent);
    e.u8(static_cast<uint8_t>(b.thread));
    e.str(b.producer);
    e.u64(b.nonce);
    e.u64(b.height);
    e.blob(b.payload);
    return e.take();
}

Hash256 compute_block_id(const Block& b) {
    auto bytes = encode_for_hash(b);
    return sha256(std::span<const uint8_t>(bytes));
}

std::vector<uint8_t> encode_block(const Block& b) {
    codec::Encoder e;
    e.hash(b.block_id);
    e.raw(encode_for_hash(b));
    return e.take();
}

Block decode_block(std::span<const uint8_t> bytes) {
    codec::Decoder d(bytes);
    Block b;
    b.block_id = d.hash();
    b.parent = d.hash();
    b.thread = static_cast<Thread>(d.u8());
    if (static_cast<int>(b.thread) >= kThreadCount)
        throw codec::DecodeError("bad thread tag");
    b.producer = d.str();
    b.nonce = d.u64();
    b.height = d.u64();
    b.payload = d.blob();
    d.expect_done();
    if (compute_block_id(b) != b.block_id)
        throw codec::DecodeError("block id does not match contents");
    return b;
}

Block mine_block(const Hash256& parent, uint64_t parent_height, Thread thread,
                 std::vector<uint8_t> payload, const std::string& producer,
                 DifficultyTarget target, uint64_t nonce_seed) {
    Block b;
    b.parent = parent;
    b.thread = thread;
    b.producer = producer;
    b.height = parent_height + 1;
    b.payload = std::move(payload);
    for (uint64_t nonce = nonce_seed;; ++nonce) {
        b.nonce = nonce;
        b.block_id = compute_block_id(b);
        if (target.admits(b.block_id)) return b;
    }
}

std::vector<std::string> select_endorsers(
    const std::string& ovc_id,
    const std::vector<std::pair<std::string, uint64_t>>& stake_table, size_t k,
    const Hash256& randomness_beacon) {
    if (k < 1) throw ChainError(ChainErrc::FewerAccountsThanK, "k must be >= 1");

    // Candidates in ascending account order so the cumulative layout is the
    // same on every node regardless of the caller's table order.
    std::vector<std::pair<std::string, uint64_t>> pool;
    for (const auto& [id, stake] : stake_table)
        if (stake > 0) pool.emplace_back(id, stake);
    std::sort(pool.begin(), pool.end());
    if (pool.size() < k)
        throw ChainError(ChainErrc::FewerAccountsThanK,
                         "k exceeds accounts with positive stake");

    uint64_t counter = 0;
    auto next_draw = [&]() {
        HashWriter w;
        w.write(randomness_beacon);
        w.write(ovc_id);
        w.write_u64(counter++);
        return w.finish().to_u64();
    };

    std::vector<std::string> chosen;
    uint64_t total = 0;
    for (const auto& [id, stake] : pool) total += stake;
    while (chosen.size() < k) {
        // Map a 64-bit draw onto [0, total); the bias is ~total/2^64.
        uint64_t r = static_cast<uint64_t>(
            (static_cast<__uint128_t>(next_draw()) * total) >> 64);
        uint64_t acc = 0;
        size_t pick = 0;
        for (size_t i = 0; i < pool.size(); ++i) {
            acc += pool[i].second;
            if (r < acc) {
                pick = i;
                break;
            }
        }
        chosen.push_back(pool[pick].first);
        total -= pool[pick].second;
        pool.erase(pool.begin() + static_cast<long>(pick));
    }
    return chosen;
}

const Block& ChainStore::block(const Hash256& id) const {
    auto it = blocks_.find(id);
    if (it == blocks_.end())
        throw ChainError(ChainErrc::UnknownParent, "block not in store");
    return it->second;
}

uint64_t ChainStore::head_height(Thread t) const {
    Hash256 h = head(t);
    return h.is_zero() ? 0 : block(h).height;
}

void ChainStore::append(const Block& b, const ValidityHook& hook) {
    if (compute_block_id(b) != b.block_id)
        throw ChainError(ChainErrc::InvalidBlock, "stated id does not match contents");
    if (blocks_.count(b.block_id)) throw ChainError(ChainErrc::DuplicateBlock);

    uint64_t parent_height = 0;
    if (!b.genesis_parent()) {
        auto it = blocks_.find(b.parent);
        if (it == blocks_.end()) throw ChainError(ChainErrc::UnknownParent);
        if (it->second.thread != b.thread)
            throw ChainError(ChainErrc::InvalidBlock, "parent on different thread");
        parent_height = it->second.height;
    }
    if (b.height != parent_height + 1) throw ChainError(ChainErrc::BadHeight);
    if (enforce_pow_ && !target_.admits(b.block_id))
        throw ChainError(ChainErrc::BadProofOfWork);
    if (hook) hook(b, *this);

    blocks_.emplace(b.block_id, b);
    auto& tips = tips_[static_cast<int>(b.thread)];
    tips.erase(b.parent);
    tips.insert(b.block_id);
    update_head(b.thread);
}

void ChainStore::update_head(Thread t) {
    const auto& tips = tips_[static_cast<int>(t)];
    Hash256 best;
    uint64_t best_height = 0;
    for (const auto& tip : tips) {
        uint64_t h = block(tip).height;
        if (best.is_zero() || h > best_height ||
            (h == best_height && tip < best)) {
            best = tip;
            best_height = h;
        }
    }
    heads_[static_cast<int>(t)] = best;

    // Extend the finalized prefix; flag any attempt to rewrite it.
    auto& fin = finalized_[static_cast<int>(t)];
    if (best.is_zero()) return;
    if (best_height <= static_cast<uint64_t>(confirmation_depth_)) return;
    uint64_t fin_height = best_height - static_cast<uint64_t>(confirmation_depth_);
    Hash256 cursor = best;
    while (block(cursor).height > fin_height) cursor = block(cursor).parent;
    for (Hash256 c = cursor;;) {
        const Block& blk = block(c);
        auto it = fin.find(blk.height);
        if (it != fin.end()) {
            if (it->second != blk.block_id) finality_violated_ = true;
            break;
        }
        fin.emplace(blk.height, blk.block_id);
        if (blk.genesis_parent()) break;
        c = blk.parent;
    }
}

Hash256 ChainStore::finalized_tip(Thread t) const {
    const auto& fin = finalized_[static_cast<int>(t)];
    if (fin.empty()) return Hash256::zero();
    return fin.rbegin()->second;
}

bool ChainStore::is_finalized(const Hash256& id) const {
    auto it = blocks_.find(id);
    if (it == blocks_.end()) return false;
    const auto& fin = finalized_[static_cast<int>(it->second.thread)];
    auto f = fin.find(it->second.height);
    return f != fin.end() && f->second == id;
}

void ChainStore::for_each_ancestor(
    const Hash256& tip, const std::function<void(const Block&)>& fn) const {
    Hash256 cursor = tip;
    while (!cursor.is_zero()) {
        const Block& b = block(cursor);
        fn(b);
        cursor = b.parent;
    }
}

Hash256 ChainStore::ancestor_at_height(const Hash256& tip, uint64_t height) const {
    if (height == 0) return Hash256::zero();
    Hash256 cursor = tip;
    while (!cursor.is_zero()) {
        const Block& b = block(cursor);
        if (b.height == height) return cursor;
        if (b.height < height) break;
        cursor = b.parent;
    }
    throw ChainError(ChainErrc::UnknownParent, "no ancestor at height");
}

std::vector<Block> ChainStore::all_blocks_by_id() const {
    std::vector<Block> out;
    out.reserve(blocks_.size());
    for (const auto& [id, b] : blocks_) out.push_back(b);
    return out;
}

void ChainStore::export_stream(std::ostream& os) const {
    // Parents-first ordering: sort by (height, id). Loading in this order
    // never hits UnknownParent.
    std::vector<const Block*> ordered;
    ordered.reserve(blocks_.size());
    for (const auto& [id, b] : blocks_) ordered.push_back(&b);
    std::sort(ordered.begin(), ordered.end(), [](const Block* a, const Block* b) {
        return a->height != b->height ? a->height < b->height
                                      : a->block_id < b->block_id;
    });
    for (const Block* b : ordered) {
        auto bytes = encode_block(*b);
        codec::Encoder e;
        e.u32(static_cast<uint32_t>(bytes.size()));
        os.write(reinterpret_cast<const char*>(e.bytes().data()),
                 static_cast<std::streamsize>(e.bytes().size()));
        os.write(reinterpret_cast<const char*>(bytes.data()),
                 static_cast<std::streamsize>(bytes.size()));
    }
}

}  // namespace aam::chain
