#include "nvemb/element.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace nvemb {

PatternReport validate_pattern(const Pattern& p) {
    if (p.empty())
        return {false, "pattern is empty"};
    int n = p[0].dim();
    if (n < 1)
        return {false, "rectangle 0 has dimension 0"};
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i].dim() != n)
            return {false, "rectangle " + std::to_string(i) + " has mismatched dimension"};
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (rect_intersection(p[i], p[j]))
                return {false, "rectangles " + std::to_string(i) + " and " + std::to_string(j) +
                                   " overlap"};
    Measure total(0, 0);
    for (const auto& r : p) total = add(total, measure(r));
    if (total != Dyadic(1, 0))
        return {false, "pattern measure is " + total.to_fraction_string() + ", expected 1"};
    return {};
}

bool operator==(const Piece& a, const Piece& b) {
    return a.domain == b.domain && a.range == b.range;
}

bool operator==(const Element& a, const Element& b) {
    return a.dim == b.dim && a.pieces == b.pieces;
}

Pattern domain_pattern(const Element& f) {
    Pattern p;
    p.reserve(f.pieces.size());
    for (const auto& piece : f.pieces) p.push_back(piece.domain);
    return p;
}

Pattern range_pattern(const Element& f) {
    Pattern p;
    p.reserve(f.pieces.size());
    for (const auto& piece : f.pieces) p.push_back(piece.range);
    return p;
}

ElementReport validate_element(const Element& f) {
    if (f.dim < 1)
        return {false, "element dimension must be >= 1"};
    if (f.pieces.empty())
        return {false, "element has no pieces"};
    for (std::size_t i = 0; i < f.pieces.size(); ++i)
        if (f.pieces[i].domain.dim() != f.dim || f.pieces[i].range.dim() != f.dim)
            return {false, "piece " + std::to_string(i) + " has mismatched dimension"};
    PatternReport dom = validate_pattern(domain_pattern(f));
    if (!dom.ok)
        return {false, "domain pattern: " + dom.message};
    PatternReport rng = validate_pattern(range_pattern(f));
    if (!rng.ok)
        return {false, "range pattern: " + rng.message};
    return {};
}

Element identity(int n) {
    Element e;
    e.dim = n;
    e.pieces.push_back({Rectangle::unit_cube(n), Rectangle::unit_cube(n)});
    return e;
}

Point apply(const Element& f, const Point& p) {
    if (static_cast<int>(p.size()) != f.dim)
        throw std::invalid_argument("apply: point dimension mismatch");
    if (!point_in_unit_cube(p))
        throw std::invalid_argument("apply: point outside [0,1)^n");
    for (const auto& piece : f.pieces)
        if (contains_point(piece.domain, p))
            return affine_map_point(piece.domain, piece.range, p);
    throw std::runtime_error("apply: no domain piece contains the point (invalid element)");
}

Element inverse(const Element& f) {
    Element g;
    g.dim = f.dim;
    g.pieces.reserve(f.pieces.size());
    for (const auto& piece : f.pieces) g.pieces.push_back({piece.range, piece.domain});
    return g;
}

Rectangle transport_rect(const Rectangle& x, const Rectangle& from, const Rectangle& to) {
    Rectangle out;
    out.axes.reserve(x.axes.size());
    for (std::size_t d = 0; d < x.axes.size(); ++d) {
        int extra = x.axes[d].depth - from.axes[d].depth;
        assert(extra >= 0);
        BigInt suffix = x.axes[d].num - (from.axes[d].num << extra);
        assert(suffix >= 0 && (suffix >> extra) == 0);
        out.axes.emplace_back((to.axes[d].num << extra) + suffix, to.axes[d].depth + extra);
    }
    return out;
}

Element compose(const Element& f, const Element& g) {
    if (f.dim != g.dim)
        throw std::invalid_argument("compose: dimension mismatch");
    const std::size_t n = static_cast<std::size_t>(f.dim);
    Element out;
    out.dim = f.dim;
    std::vector<DyadicInterval> common(n);
    for (const auto& fp : f.pieces) {
        for (const auto& gp : g.pieces) {
            // Common refinement cell: fp.range ∩ gp.domain.
            bool disjoint = false;
            for (std::size_t d = 0; d < n; ++d) {
                const DyadicInterval& a = fp.range.axes[d];
                const DyadicInterval& b = gp.domain.axes[d];
                if (a.depth <= b.depth) {
                    if ((b.num >> (b.depth - a.depth)) != a.num) { disjoint = true; break; }
                    common[d] = b;
                } else {
                    if ((a.num >> (a.depth - b.depth)) != b.num) { disjoint = true; break; }
                    common[d] = a;
                }
            }
            if (disjoint) continue;
            Rectangle cell(common);
            out.pieces.push_back({transport_rect(cell, fp.range, fp.domain),
                                  transport_rect(cell, gp.domain, gp.range)});
        }
    }
    return out;
}

bool is_identity(const Element& f) {
    for (const auto& piece : f.pieces)
        if (piece.domain != piece.range) return false;
    return true;
}

bool equals(const Element& f, const Element& g) {
    if (f.dim != g.dim)
        throw std::invalid_argument("equals: dimension mismatch");
    if (f == g) return true;
    return is_identity(compose(f, inverse(g)));
}

Element refine_piece(const Element& f, int piece, int axis) {
    if (piece < 0 || piece >= f.piece_count())
        throw std::invalid_argument("refine_piece: piece index out of range");
    if (axis < 0 || axis >= f.dim)
        throw std::invalid_argument("refine_piece: axis out of range");
    Element out = f;
    const Piece& old = f.pieces[static_cast<std::size_t>(piece)];
    auto [dom_lo, dom_hi] = subdivide(old.domain, axis);
    auto [rng_lo, rng_hi] = subdivide(old.range, axis);
    out.pieces[static_cast<std::size_t>(piece)] = {dom_lo, rng_lo};
    out.pieces.insert(out.pieces.begin() + piece + 1, {dom_hi, rng_hi});
    return out;
}

namespace {

// A piece pair merges on axis d when the domain rectangles are the two halves
// of a common parent on d (all other axes equal) and the range rectangles are
// likewise halves of a common parent on d, with lower matching lower.  The
// merged piece carries the parent rectangles; the represented map is unchanged.
struct MergeKey {
    int axis;
    Rectangle dom_parent;
    Rectangle rng_parent;

    bool operator==(const MergeKey& o) const {
        return axis == o.axis && dom_parent == o.dom_parent && rng_parent == o.rng_parent;
    }
};

struct MergeKeyHash {
    std::size_t operator()(const MergeKey& k) const {
        std::size_t seed = boost::hash<int>{}(k.axis);
        boost::hash_combine(seed, hash_value(k.dom_parent));
        boost::hash_combine(seed, hash_value(k.rng_parent));
        return seed;
    }
};

int total_depth(const Rectangle& r) {
    int t = 0;
    for (const auto& iv : r.axes) t += iv.depth;
    return t;
}

struct MergeCandidate {
    int depth_sum;
    std::size_t lower, upper;
    int axis;
};

}  // namespace

Element reduce(const Element& f) {
    Element cur = f;
    const std::size_t n = static_cast<std::size_t>(cur.dim);
    bool changed = true;
    while (changed) {
        changed = false;
        // Pair up half-pieces through a hash of their would-be parents.
        std::unordered_map<MergeKey, std::pair<std::size_t, std::size_t>, MergeKeyHash> buckets;
        constexpr std::size_t kNone = static_cast<std::size_t>(-1);
        std::vector<MergeCandidate> candidates;
        for (std::size_t i = 0; i < cur.pieces.size(); ++i) {
            const Piece& p = cur.pieces[i];
            for (std::size_t d = 0; d < n; ++d) {
                const DyadicInterval& di = p.domain.axes[d];
                const DyadicInterval& ri = p.range.axes[d];
                if (di.depth == 0 || ri.depth == 0) continue;
                bool lower = di.is_lower_child();
                if (ri.is_lower_child() != lower) continue;
                MergeKey key{static_cast<int>(d), p.domain, p.range};
                key.dom_parent.axes[d] = di.parent();
                key.rng_parent.axes[d] = ri.parent();
                auto [it, inserted] = buckets.try_emplace(std::move(key), kNone, kNone);
                auto& slot = lower ? it->second.first : it->second.second;
                slot = i;
                const std::size_t other = lower ? it->second.second : it->second.first;
                if (other != kNone) {
                    std::size_t lo = lower ? i : other;
                    std::size_t hi = lower ? other : i;
                    candidates.push_back({total_depth(cur.pieces[lo].domain) +
                                              total_depth(cur.pieces[lo].range),
                                          lo, hi, static_cast<int>(d)});
                }
            }
        }
        if (candidates.empty()) break;
        // Deepest merges first; index order breaks ties.
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const MergeCandidate& a, const MergeCandidate& b) {
                             if (a.depth_sum != b.depth_sum) return a.depth_sum > b.depth_sum;
                             return std::tie(a.lower, a.upper) < std::tie(b.lower, b.upper);
                         });
        std::vector<char> consumed(cur.pieces.size(), 0);
        for (const auto& c : candidates) {
            if (consumed[c.lower] || consumed[c.upper]) continue;
            Piece& keep = cur.pieces[std::min(c.lower, c.upper)];
            const Piece& low = cur.pieces[c.lower];
            Piece merged = low;
            merged.domain.axes[static_cast<std::size_t>(c.axis)] =
                low.domain.axes[static_cast<std::size_t>(c.axis)].parent();
            merged.range.axes[static_cast<std::size_t>(c.axis)] =
                low.range.axes[static_cast<std::size_t>(c.axis)].parent();
            keep = merged;
            consumed[std::max(c.lower, c.upper)] = 2;  // drop
            consumed[std::min(c.lower, c.upper)] = 1;  // keep, already rewritten
            changed = true;
        }
        if (changed) {
            std::vector<Piece> next;
            next.reserve(cur.pieces.size());
            for (std::size_t i = 0; i < cur.pieces.size(); ++i)
                if (consumed[i] != 2) next.push_back(std::move(cur.pieces[i]));
            cur.pieces = std::move(next);
        }
    }
    return cur;
}

}  // namespace nvemb
