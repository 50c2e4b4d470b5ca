#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nshedb/he_vector.hpp"
#include "nshedb/predicate_ops.hpp"

namespace nshedb {

/// One table column packed into ceil(rows/n) full-width ciphertexts.
/// Padding slots beyond `rows` encode 0; dictionary IDs start at 1, so
/// padding never collides with a real value.
struct EncryptedColumn {
    std::vector<HEVector> chunks;
    std::uint64_t rows = 0;

    std::uint64_t chunk_count() const { return chunks.size(); }
    Rational depth() const {
        Rational d(0);
        for (const auto& c : chunks) d = max(d, c.depth());
        return d;
    }
};

/// Column of predicate masks, chunk-aligned with the data columns.
using MaskColumn = EncryptedColumn;

/// (SUM, COUNT) pair; the client performs the division.
struct AggregatePair {
    HEVector sum;
    HEVector count;
};

// Depth model pieces shared with the planner.
Rational agg_depth_increment(const Params& params, std::uint64_t chunk_count);
Rational join_output_depth_increment(std::uint64_t p);
Rational merge_depth_increment(const Params& params, std::uint64_t term_count);

/// Plain 0/1 validity mask for one chunk of a column with `rows` real rows.
PlainVector validity_mask(const Params& params, std::uint64_t rows, std::uint64_t chunk_index);

/// Doubling rotate-and-add reduction: exactly log2(n) rotate+add steps;
/// afterwards every slot holds the sum of all slots mod p.
HEVector rotate_sum(const HeContext& ctx, const HEVector& v);

/// Multiplies mask into column: matches keep their value, the rest become
/// encrypted zeros. Ciphertext count unchanged (selectivity stays hidden).
EncryptedColumn select_apply(const HeContext& ctx, const EncryptedColumn& col, const MaskColumn& mask);

/// COUNT: rotate-sum of the mask (validity-corrected); all slots hold the count.
HEVector count_rows(const HeContext& ctx, const MaskColumn& mask);
/// COUNT(*) with no predicate: the row count is public metadata.
HEVector count_all(const HeContext& ctx, std::uint64_t rows);
/// SUM of col (times optional mask), validity-corrected.
HEVector sum_rows(const HeContext& ctx, const EncryptedColumn& col, const MaskColumn* mask);
AggregatePair avg_rows(const HeContext& ctx, const EncryptedColumn& col, const MaskColumn* mask);

/// One mask per key tuple over the cross-product of the grouping dictionaries,
/// in lexicographic order (first column outermost). IDs are 1-based.
struct GroupEntry {
    std::vector<std::uint64_t> key_ids;
    MaskColumn mask;
};
std::vector<GroupEntry> group_by(const HeContext& ctx, const std::vector<const EncryptedColumn*>& cols,
                                 const std::vector<std::uint64_t>& domain_sizes);

/// Equi-join via extract/broadcast of the reference key (Fig. 3 pipeline):
/// per reference row j, mask_j = eq(fact.key, broadcast(ref.key, j)); outputs
/// are fact-aligned merges of mask_j x broadcast(attr, j).
struct JoinResult {
    std::vector<EncryptedColumn> ref_attr_cols;   // one per requested ref attribute
    std::vector<EncryptedColumn> fact_attr_cols;  // one per requested fact attribute
    MaskColumn match_mask;                        // sum of per-row masks (0/1 for unique ref keys)
    Rational per_output_depth;                    // exactly ceil(log2(p-1)) + 1
    std::uint64_t ciphertext_ops = 0;             // ref_rows x ceil(fact_rows/n)
};
JoinResult join_project(const HeContext& ctx, const EncryptedColumn& fact_key, const EncryptedColumn& ref_key,
                        const std::vector<const EncryptedColumn*>& fact_attrs,
                        const std::vector<const EncryptedColumn*>& ref_attrs);

/// Join fused with aggregation and an optional reference-side GROUP BY:
/// one accumulator per group, never a materialized join. Aggregates fact-side
/// `value` (SUM) or join multiplicity (COUNT) under an optional fact mask.
struct JoinAggregateResult {
    std::vector<HEVector> per_group;  // all-slots totals, one per group entry (or a single total)
    std::uint64_t ciphertext_ops = 0;
};
JoinAggregateResult join_group_aggregate(const HeContext& ctx, const EncryptedColumn& fact_key,
                                         const EncryptedColumn& ref_key, const EncryptedColumn* fact_value,
                                         const MaskColumn* fact_mask,
                                         const std::vector<GroupEntry>* ref_groups);

/// Dictionary-domain sort: equality masks for every domain value in key order
/// (fixed |D| iterations), ties resolved by the next sort column. Ascending
/// iterates IDs upward, descending in reverse.
struct OrderedBucket {
    std::vector<std::uint64_t> key_ids;
    std::vector<EncryptedColumn> projected;  // masked records per projected column
    HEVector count;
};
std::vector<OrderedBucket> order_by(const HeContext& ctx, const std::vector<const EncryptedColumn*>& key_cols,
                                    const std::vector<std::uint64_t>& domain_sizes,
                                    const std::vector<bool>& descending,
                                    const std::vector<const EncryptedColumn*>& projected);

}  // namespace nshedb
