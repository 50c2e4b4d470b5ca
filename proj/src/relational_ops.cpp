#include "nshedb/relational_ops.hpp"
#include <algorithm>


#include "nshedb/errors.hpp"

namespace nshedb {

Rational agg_depth_increment(const Params& params, std::uint64_t chunk_count) {
    auto p = static_cast<std::int64_t>(params.p);
    Rational inc(params.log2_n(), p);
    if (chunk_count > 1) inc += Rational(ceil_log2_u64(chunk_count), p);
    return inc;
}

Rational join_output_depth_increment(std::uint64_t p) { return eq_depth_increment(p) + Rational(1); }

Rational merge_depth_increment(const Params& params, std::uint64_t term_count) {
    if (term_count <= 1) return Rational(0);
    return Rational(ceil_log2_u64(term_count), static_cast<std::int64_t>(params.p));
}

PlainVector validity_mask(const Params& params, std::uint64_t rows, std::uint64_t chunk_index) {
    std::vector<std::uint64_t> v(params.n, 0);
    std::uint64_t start = chunk_index * params.n;
    for (std::uint64_t i = 0; i < params.n && start + i < rows; ++i) v[i] = 1;
    return PlainVector(std::move(v), params);
}

HEVector rotate_sum(const HeContext& ctx, const HEVector& v) {
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::rotate_sum);
    HEVector acc = v;
    for (std::uint64_t k = ctx.params().n / 2; k >= 1; k >>= 1) acc = ctx.add(acc, ctx.rotate(acc, k));
    return acc;
}

namespace {

void check_aligned(const EncryptedColumn& a, const EncryptedColumn& b) {
    if (a.chunks.size() != b.chunks.size() || a.rows != b.rows)
        throw ShapeMismatch("columns are not chunk-aligned");
}

/// Slot coordinates of reference row j.
std::pair<std::uint64_t, std::uint64_t> row_slot(const Params& params, std::uint64_t j) {
    return {j / params.n, j % params.n};
}

}  // namespace

EncryptedColumn select_apply(const HeContext& ctx, const EncryptedColumn& col, const MaskColumn& mask) {
    check_aligned(col, mask);
    EncryptedColumn out;
    out.rows = col.rows;
    out.chunks.reserve(col.chunks.size());
    for (std::size_t i = 0; i < col.chunks.size(); ++i) {
        if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::select_apply);
        out.chunks.push_back(ctx.mul(col.chunks[i], mask.chunks[i]));
    }
    return out;
}

HEVector count_rows(const HeContext& ctx, const MaskColumn& mask) {
    if (mask.chunks.empty()) return ctx.from_scalar(0);
    std::vector<HEVector> partials;
    partials.reserve(mask.chunks.size());
    for (std::size_t i = 0; i < mask.chunks.size(); ++i) {
        HEVector m = ctx.plain_mul(mask.chunks[i], validity_mask(ctx.params(), mask.rows, i));
        partials.push_back(rotate_sum(ctx, m));
    }
    return balanced_add(ctx, std::move(partials));
}

HEVector count_all(const HeContext& ctx, std::uint64_t rows) {
    return ctx.from_scalar(rows % ctx.params().p);
}

HEVector sum_rows(const HeContext& ctx, const EncryptedColumn& col, const MaskColumn* mask) {
    if (col.chunks.empty()) return ctx.from_scalar(0);
    if (mask) check_aligned(col, *mask);
    std::vector<HEVector> partials;
    partials.reserve(col.chunks.size());
    for (std::size_t i = 0; i < col.chunks.size(); ++i) {
        HEVector x = col.chunks[i];
        if (mask) x = ctx.mul(x, mask->chunks[i]);
        x = ctx.plain_mul(x, validity_mask(ctx.params(), col.rows, i));
        partials.push_back(rotate_sum(ctx, x));
    }
    return balanced_add(ctx, std::move(partials));
}

AggregatePair avg_rows(const HeContext& ctx, const EncryptedColumn& col, const MaskColumn* mask) {
    AggregatePair out{sum_rows(ctx, col, mask), mask ? count_rows(ctx, *mask) : count_all(ctx, col.rows)};
    return out;
}

std::vector<GroupEntry> group_by(const HeContext& ctx, const std::vector<const EncryptedColumn*>& cols,
                                 const std::vector<std::uint64_t>& domain_sizes) {
    if (cols.empty() || cols.size() != domain_sizes.size()) throw Error("group_by: bad column/domain spec");
    for (std::size_t j = 1; j < cols.size(); ++j) check_aligned(*cols[0], *cols[j]);
    std::uint64_t chunks = cols[0]->chunk_count();

    // Per-column, per-id equality masks computed once; tuple masks are products.
    std::vector<std::vector<std::vector<MaskVector>>> col_masks(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (domain_sizes[j] == 0) throw Error("group_by: empty dictionary");
        col_masks[j].resize(domain_sizes[j]);
        for (std::uint64_t id = 1; id <= domain_sizes[j]; ++id) {
            for (std::uint64_t c = 0; c < chunks; ++c) {
                if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::group_mask);
                col_masks[j][id - 1].push_back(eq_plain(ctx, cols[j]->chunks[c], id % ctx.params().p));
            }
        }
    }

    std::vector<GroupEntry> out;
    std::vector<std::uint64_t> ids(cols.size(), 1);
    while (true) {
        GroupEntry entry;
        entry.key_ids = ids;
        entry.mask.rows = cols[0]->rows;
        for (std::uint64_t c = 0; c < chunks; ++c) {
            MaskVector m = col_masks[0][ids[0] - 1][c];
            for (std::size_t j = 1; j < cols.size(); ++j) m = ctx.mul(m, col_masks[j][ids[j] - 1][c]);
            entry.mask.chunks.push_back(std::move(m));
        }
        out.push_back(std::move(entry));
        // lexicographic increment, last column fastest
        std::size_t j = cols.size();
        while (j > 0) {
            --j;
            if (++ids[j] <= domain_sizes[j]) break;
            ids[j] = 1;
            if (j == 0) return out;
        }
    }
}

JoinResult join_project(const HeContext& ctx, const EncryptedColumn& fact_key, const EncryptedColumn& ref_key,
                        const std::vector<const EncryptedColumn*>& fact_attrs,
                        const std::vector<const EncryptedColumn*>& ref_attrs) {
    if (ref_key.rows == 0 || fact_key.rows == 0) throw Error("join: empty key column");
    for (auto* a : fact_attrs) check_aligned(fact_key, *a);
    for (auto* a : ref_attrs) check_aligned(ref_key, *a);

    JoinResult result;
    result.per_output_depth =
        max(fact_key.depth(), ref_key.depth()) + join_output_depth_increment(ctx.params().p);
    std::uint64_t fact_chunks = fact_key.chunk_count();

    // mask_j per fact chunk, then attribute merges; outputs stay fact-aligned.
    std::vector<std::vector<MaskVector>> masks(fact_chunks);  // [chunk][ref row]
    std::vector<std::vector<std::vector<HEVector>>> ref_terms(ref_attrs.size());
    for (auto& per_attr : ref_terms) per_attr.resize(fact_chunks);

    for (std::uint64_t j = 0; j < ref_key.rows; ++j) {
        auto [jc, js] = row_slot(ctx.params(), j);
        HEVector key_b = ctx.broadcast(ref_key.chunks[jc], js);
        std::vector<HEVector> attr_b;
        attr_b.reserve(ref_attrs.size());
        for (auto* a : ref_attrs) attr_b.push_back(ctx.broadcast(a->chunks[jc], js));
        for (std::uint64_t f = 0; f < fact_chunks; ++f) {
            if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::join_mask);
            ++result.ciphertext_ops;
            MaskVector m = eq(ctx, fact_key.chunks[f], key_b);
            for (std::size_t a = 0; a < ref_attrs.size(); ++a)
                ref_terms[a][f].push_back(ctx.mul(m, attr_b[a]));
            masks[f].push_back(std::move(m));
        }
    }

    result.match_mask.rows = fact_key.rows;
    for (std::uint64_t f = 0; f < fact_chunks; ++f)
        result.match_mask.chunks.push_back(balanced_add(ctx, masks[f]));

    for (std::size_t a = 0; a < ref_attrs.size(); ++a) {
        EncryptedColumn col;
        col.rows = fact_key.rows;
        for (std::uint64_t f = 0; f < fact_chunks; ++f)
            col.chunks.push_back(balanced_add(ctx, std::move(ref_terms[a][f])));
        result.ref_attr_cols.push_back(std::move(col));
    }
    for (auto* a : fact_attrs) result.fact_attr_cols.push_back(select_apply(ctx, *a, result.match_mask));
    return result;
}

JoinAggregateResult join_group_aggregate(const HeContext& ctx, const EncryptedColumn& fact_key,
                                         const EncryptedColumn& ref_key, const EncryptedColumn* fact_value,
                                         const MaskColumn* fact_mask,
                                         const std::vector<GroupEntry>* ref_groups) {
    if (ref_key.rows == 0 || fact_key.rows == 0) throw Error("join: empty key column");
    if (fact_value) check_aligned(fact_key, *fact_value);
    if (fact_mask) check_aligned(fact_key, *fact_mask);

    JoinAggregateResult result;
    std::uint64_t fact_chunks = fact_key.chunk_count();
    std::size_t groups = ref_groups ? ref_groups->size() : 1;
    std::vector<std::vector<HEVector>> terms(groups);  // per group, per ref row

    for (std::uint64_t j = 0; j < ref_key.rows; ++j) {
        auto [jc, js] = row_slot(ctx.params(), j);
        HEVector key_b = ctx.broadcast(ref_key.chunks[jc], js);
        // Per-row contribution: rotate-summed masked matches across fact chunks.
        std::vector<HEVector> partials;
        partials.reserve(fact_chunks);
        for (std::uint64_t f = 0; f < fact_chunks; ++f) {
            if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::join_mask);
            ++result.ciphertext_ops;
            HEVector m = eq(ctx, fact_key.chunks[f], key_b);
            if (fact_mask) m = ctx.mul(m, fact_mask->chunks[f]);
            if (fact_value) m = ctx.mul(m, fact_value->chunks[f]);
            partials.push_back(rotate_sum(ctx, m));
        }
        HEVector row_total = balanced_add(ctx, std::move(partials));
        if (!ref_groups) {
            terms[0].push_back(std::move(row_total));
            continue;
        }
        for (std::size_t g = 0; g < groups; ++g) {
            HEVector gmask_b = ctx.broadcast((*ref_groups)[g].mask.chunks[jc], js);
            terms[g].push_back(ctx.mul(row_total, gmask_b));
        }
    }

    result.per_group.reserve(groups);
    for (std::size_t g = 0; g < groups; ++g) result.per_group.push_back(balanced_add(ctx, std::move(terms[g])));
    return result;
}

std::vector<OrderedBucket> order_by(const HeContext& ctx, const std::vector<const EncryptedColumn*>& key_cols,
                                    const std::vector<std::uint64_t>& domain_sizes,
                                    const std::vector<bool>& descending,
                                    const std::vector<const EncryptedColumn*>& projected) {
    if (key_cols.empty() || key_cols.size() != domain_sizes.size() || key_cols.size() != descending.size())
        throw Error("order_by: bad sort spec");
    auto entries = group_by(ctx, key_cols, domain_sizes);

    // group_by emits tuples lexicographically ascending; reorder per-column
    // directions by sorting the public key tuples.
    std::vector<std::size_t> order(entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ka = entries[a].key_ids;
        const auto& kb = entries[b].key_ids;
        for (std::size_t j = 0; j < ka.size(); ++j) {
            if (ka[j] != kb[j]) return descending[j] ? ka[j] > kb[j] : ka[j] < kb[j];
        }
        return false;
    });

    std::vector<OrderedBucket> out;
    out.reserve(order.size());
    for (std::size_t idx : order) {
        if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::order_mask);
        OrderedBucket bucket;
        bucket.key_ids = entries[idx].key_ids;
        for (auto* col : projected) bucket.projected.push_back(select_apply(ctx, *col, entries[idx].mask));
        bucket.count = count_rows(ctx, entries[idx].mask);
        out.push_back(std::move(bucket));
    }
    return out;
}

}  // namespace nshedb
