#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <string>

namespace nshedb {

enum class OpKind : std::uint8_t {
    add = 0,
    sub,
    neg,
    mul,
    plain_mul,
    plain_add,
    rotate,
    extract,
    broadcast,
    relinearize,
    key_switch,
    eq,
    range_cmp,
    in_set,
    between,
    bool_op,
    select_apply,
    rotate_sum,
    join_mask,
    group_mask,
    order_mask,
    bootstrap,     // always 0 by construction
    transcipher,   // always 0 by construction
    kCount
};

const char* op_kind_name(OpKind k);

/// Thread-safe operation counters. Attached to an evaluation context by the
/// executor; null sink means no counting.
class TraceSink {
public:
    void hit(OpKind k, std::uint64_t delta = 1) {
        counts_[static_cast<std::size_t>(k)].fetch_add(delta, std::memory_order_relaxed);
    }
    std::uint64_t count(OpKind k) const {
        return counts_[static_cast<std::size_t>(k)].load(std::memory_order_relaxed);
    }
    void reset() {
        for (auto& c : counts_) c.store(0, std::memory_order_relaxed);
    }
    /// Stable snapshot keyed by op name; zero entries omitted.
    std::map<std::string, std::uint64_t> snapshot() const;

private:
    std::array<std::atomic<std::uint64_t>, static_cast<std::size_t>(OpKind::kCount)> counts_{};
};

}  // namespace nshedb
