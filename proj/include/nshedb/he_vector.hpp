#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nshedb/errors.hpp"
#include "nshedb/params.hpp"
#include "nshedb/rational.hpp"
#include "nshedb/trace.hpp"

namespace nshedb {

enum class Backend : std::uint8_t { sim = 0, bfv = 1 };

/// Opaque per-backend payload. Sim: the tracked slot array. Bfv: a ciphertext.
struct VectorPayload {
    virtual ~VectorPayload() = default;
};

/// Plaintext operand: exactly n slot values reduced mod p.
class PlainVector {
public:
    PlainVector(std::vector<std::uint64_t> slots, const Params& params);
    static PlainVector constant(std::uint64_t value, const Params& params);
    static PlainVector basis(std::uint64_t index, const Params& params);

    const std::vector<std::uint64_t>& slots() const { return slots_; }
    std::uint64_t operator[](std::size_t i) const { return slots_[i]; }
    std::size_t size() const { return slots_.size(); }

private:
    std::vector<std::uint64_t> slots_;
};

/// Immutable handle to a ciphertext (or tracked simulation) of n slots mod p,
/// carrying the multiplicative-depth accumulator.
class HEVector {
public:
    HEVector() = default;
    HEVector(Backend backend, std::shared_ptr<const VectorPayload> payload, std::uint64_t params_fp,
             Rational depth, bool fresh)
        : backend_(backend), payload_(std::move(payload)), params_fp_(params_fp), depth_(depth), fresh_(fresh) {}

    Backend backend() const { return backend_; }
    const VectorPayload* payload() const { return payload_.get(); }
    std::shared_ptr<const VectorPayload> payload_ptr() const { return payload_; }
    std::uint64_t params_fingerprint() const { return params_fp_; }
    Rational depth() const { return depth_; }
    bool fresh() const { return fresh_; }
    bool valid() const { return payload_ != nullptr; }

    /// Same payload, different depth annotation. Composite operators use this
    /// to apply their exact depth contracts (see predicate_ops).
    HEVector with_depth(Rational depth) const { return HEVector(backend_, payload_, params_fp_, depth, false); }

private:
    Backend backend_ = Backend::sim;
    std::shared_ptr<const VectorPayload> payload_;
    std::uint64_t params_fp_ = 0;
    Rational depth_;
    bool fresh_ = false;
};

inline Rational depth_of(const HEVector& v) { return v.depth(); }

/// Abstract SIMD homomorphic-vector interface every operator targets.
/// Depth accounting and budget enforcement live here; backends implement the
/// slot arithmetic only. All operations are pure; contexts are safe to share
/// across threads.
class HeContext {
public:
    explicit HeContext(const Params& params);
    virtual ~HeContext() = default;

    const Params& params() const { return params_; }
    virtual Backend backend() const = 0;

    Rational budget() const { return budget_; }
    /// Raise (or drop) the enforced budget; used by the planner-bypass flag.
    void override_budget(Rational budget) { budget_ = budget; }

    void set_trace_sink(TraceSink* sink) { sink_ = sink; }
    TraceSink* trace_sink() const { return sink_; }

    // Element-wise mod-p arithmetic. add/sub advance depth by 1/p, mul by 1
    // (checked against the budget), the rest leave it unchanged.
    HEVector add(const HEVector& a, const HEVector& b) const;
    HEVector sub(const HEVector& a, const HEVector& b) const;
    HEVector neg(const HEVector& a) const;
    HEVector mul(const HEVector& a, const HEVector& b) const;
    HEVector plain_mul(const HEVector& a, const PlainVector& m) const;
    HEVector plain_add(const HEVector& a, const PlainVector& m) const;
    HEVector plain_add_scalar(const HEVector& a, std::uint64_t c) const;
    /// c - a, slot-wise (plaintext operand; depth unchanged).
    HEVector plain_sub_from_scalar(std::uint64_t c, const HEVector& a) const;

    /// Left cyclic rotation: slot i of the result is slot (i+k mod n) of the input.
    HEVector rotate(const HEVector& a, std::uint64_t k) const;

    /// Keeps slot i, zeroes the rest (one plaintext basis multiplication).
    HEVector extract(const HEVector& a, std::uint64_t i) const;
    /// Replicates slot i into every slot: extract followed by log2(n)
    /// rotate/add doubling steps. Depth-free in the model, like extract.
    HEVector broadcast(const HEVector& a, std::uint64_t i) const;

    /// Fresh depth-0 vector holding plaintext values (sim: the payload itself;
    /// bfv: a trivial, noiseless ciphertext).
    HEVector from_plain(const PlainVector& values) const;
    HEVector from_scalar(std::uint64_t value) const;

protected:
    virtual std::shared_ptr<const VectorPayload> add_impl(const HEVector& a, const HEVector& b) const = 0;
    virtual std::shared_ptr<const VectorPayload> sub_impl(const HEVector& a, const HEVector& b) const = 0;
    virtual std::shared_ptr<const VectorPayload> neg_impl(const HEVector& a) const = 0;
    virtual std::shared_ptr<const VectorPayload> mul_impl(const HEVector& a, const HEVector& b) const = 0;
    virtual std::shared_ptr<const VectorPayload> plain_mul_impl(const HEVector& a, const PlainVector& m) const = 0;
    virtual std::shared_ptr<const VectorPayload> plain_add_impl(const HEVector& a, const PlainVector& m) const = 0;
    virtual std::shared_ptr<const VectorPayload> rotate_impl(const HEVector& a, std::uint64_t k) const = 0;
    virtual std::shared_ptr<const VectorPayload> from_plain_impl(const PlainVector& values) const = 0;

    void check_operand(const HEVector& a) const;
    void check_pair(const HEVector& a, const HEVector& b) const;
    void hit(OpKind k) const {
        if (sink_) sink_->hit(k);
    }

    Params params_;
    Rational budget_;
    TraceSink* sink_ = nullptr;
};

// Free-function spellings used throughout operators and tests.
inline HEVector he_add(const HeContext& ctx, const HEVector& a, const HEVector& b) { return ctx.add(a, b); }
inline HEVector he_sub(const HeContext& ctx, const HEVector& a, const HEVector& b) { return ctx.sub(a, b); }
inline HEVector he_neg(const HeContext& ctx, const HEVector& a) { return ctx.neg(a); }
inline HEVector he_mul(const HeContext& ctx, const HEVector& a, const HEVector& b) { return ctx.mul(a, b); }
inline HEVector he_plain_mul(const HeContext& ctx, const HEVector& a, const PlainVector& m) {
    return ctx.plain_mul(a, m);
}
inline HEVector he_rotate(const HeContext& ctx, const HEVector& a, std::uint64_t k) { return ctx.rotate(a, k); }
inline HEVector extract(const HeContext& ctx, const HEVector& a, std::uint64_t i) { return ctx.extract(a, i); }
inline HEVector broadcast(const HeContext& ctx, const HEVector& a, std::uint64_t i) { return ctx.broadcast(a, i); }

/// RAII scope under which he_mul skips the budget check. Composite operators
/// (eq, lt, ...) verify their exact depth contract once at entry and run
/// their internal chains inside this scope, so the 1/p-order bookkeeping of
/// internal additions can never trip the budget spuriously.
class DepthContractScope {
public:
    DepthContractScope();
    ~DepthContractScope();
    static bool active();

    DepthContractScope(const DepthContractScope&) = delete;
    DepthContractScope& operator=(const DepthContractScope&) = delete;
};

}  // namespace nshedb
