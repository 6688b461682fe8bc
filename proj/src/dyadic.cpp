#include "nvemb/dyadic.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace nvemb {

Dyadic::Dyadic(BigInt n, int e) : num(std::move(n)), exp(e) {
    if (num < 0 || exp < 0)
        throw std::invalid_argument("Dyadic: negative numerator or exponent");
    if (num == 0) {
        exp = 0;
        return;
    }
    int tz = static_cast<int>(boost::multiprecision::lsb(num));
    int shift = std::min(exp, tz);
    num >>= shift;
    exp -= shift;
}

int compare(const Dyadic& a, const Dyadic& b) {
    // Align to the larger exponent and compare numerators.
    BigInt an = a.num, bn = b.num;
    if (a.exp < b.exp)
        an <<= (b.exp - a.exp);
    else if (b.exp < a.exp)
        bn <<= (a.exp - b.exp);
    if (an < bn) return -1;
    if (an > bn) return 1;
    return 0;
}

bool operator==(const Dyadic& a, const Dyadic& b) { return a.num == b.num && a.exp == b.exp; }
bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) < 0; }
bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) <= 0; }

Dyadic add(const Dyadic& a, const Dyadic& b) {
    int e = std::max(a.exp, b.exp);
    return Dyadic((a.num << (e - a.exp)) + (b.num << (e - b.exp)), e);
}

Dyadic sub(const Dyadic& a, const Dyadic& b) {
    int e = std::max(a.exp, b.exp);
    BigInt an = a.num << (e - a.exp);
    BigInt bn = b.num << (e - b.exp);
    if (an < bn)
        throw std::invalid_argument("Dyadic sub: result would be negative");
    return Dyadic(an - bn, e);
}

Dyadic mul_pow2(const Dyadic& a, int k) {
    if (a.num == 0) return Dyadic();
    if (k >= 0) {
        if (a.exp >= k) return Dyadic(a.num, a.exp - k);
        return Dyadic(a.num << (k - a.exp), 0);
    }
    return Dyadic(a.num, a.exp - k);
}

std::string Dyadic::to_decimal_string() const {
    // num / 2^exp == num * 5^exp / 10^exp.
    BigInt scaled = num * boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(exp));
    std::string digits = scaled.str();
    if (exp == 0) return digits;
    if (static_cast<int>(digits.size()) <= exp)
        digits.insert(0, static_cast<std::size_t>(exp) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(exp), 1, '.');
    return digits;
}

std::string Dyadic::to_fraction_string() const {
    if (exp == 0) return num.str();
    return num.str() + "/2^" + std::to_string(exp);
}

std::size_t hash_value(const Dyadic& a) {
    std::size_t seed = boost::hash<BigInt>{}(a.num);
    boost::hash_combine(seed, a.exp);
    return seed;
}

DyadicInterval::DyadicInterval(BigInt n, int d) : num(std::move(n)), depth(d) {
    if (depth < 0 || num < 0 || num >> depth != 0)
        throw std::invalid_argument("DyadicInterval: require 0 <= num < 2^depth");
}

DyadicInterval DyadicInterval::child(int bit) const {
    assert(bit == 0 || bit == 1);
    return DyadicInterval((num << 1) | bit, depth + 1);
}

DyadicInterval DyadicInterval::parent() const {
    if (depth == 0)
        throw std::invalid_argument("DyadicInterval: [0,1) has no parent");
    return DyadicInterval(num >> 1, depth - 1);
}

bool DyadicInterval::is_lower_child() const {
    return depth > 0 && !boost::multiprecision::bit_test(num, 0);
}

bool DyadicInterval::contains(const Dyadic& x) const {
    if (x.exp <= depth) {
        // x = x.num * 2^(depth - x.exp) in units of 2^-depth: lands exactly
        // on grid points, so membership is a half-open integer range test.
        BigInt xn = x.num << (depth - x.exp);
        return xn >= num && xn < num + 1;
    }
    // x is finer than the interval: floor(x * 2^depth) must equal num.
    return (x.num >> (x.exp - depth)) == num;
}

std::string DyadicInterval::address() const {
    std::string bits(static_cast<std::size_t>(depth), '0');
    for (int j = 0; j < depth; ++j)
        if (boost::multiprecision::bit_test(num, static_cast<unsigned>(depth - 1 - j)))
            bits[static_cast<std::size_t>(j)] = '1';
    return bits;
}

DyadicInterval DyadicInterval::from_address(const std::string& bits) {
    BigInt n = 0;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("DyadicInterval: address must be over {0,1}");
        n = (n << 1) | (c == '1' ? 1 : 0);
    }
    return DyadicInterval(n, static_cast<int>(bits.size()));
}

std::string DyadicInterval::to_string() const {
    return "[" + lo().to_decimal_string() + "," + hi().to_decimal_string() + ")";
}

bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
    return a.depth == b.depth && a.num == b.num;
}
bool operator!=(const DyadicInterval& a, const DyadicInterval& b) { return !(a == b); }

IntervalRelation interval_relation(const DyadicInterval& a, const DyadicInterval& b) {
    if (a.depth == b.depth)
        return a.num == b.num ? IntervalRelation::Equal : IntervalRelation::Disjoint;
    if (a.depth < b.depth)
        return (b.num >> (b.depth - a.depth)) == a.num ? IntervalRelation::AContainsB
                                                       : IntervalRelation::Disjoint;
    return (a.num >> (a.depth - b.depth)) == b.num ? IntervalRelation::BContainsA
                                                   : IntervalRelation::Disjoint;
}

std::optional<DyadicInterval> interval_intersection(const DyadicInterval& a,
                                                    const DyadicInterval& b) {
    switch (interval_relation(a, b)) {
        case IntervalRelation::Disjoint: return std::nullopt;
        case IntervalRelation::Equal:
        case IntervalRelation::AContainsB: return b;
        case IntervalRelation::BContainsA: return a;
    }
    return std::nullopt;
}

std::size_t hash_value(const DyadicInterval& iv) {
    std::size_t seed = boost::hash<BigInt>{}(iv.num);
    boost::hash_combine(seed, iv.depth);
    return seed;
}

Rectangle Rectangle::unit_cube(int n) {
    if (n < 1)
        throw std::invalid_argument("Rectangle: dimension must be >= 1");
    return Rectangle(std::vector<DyadicInterval>(static_cast<std::size_t>(n)));
}

bool Rectangle::is_unit_cube() const {
    for (const auto& iv : axes)
        if (iv.depth != 0) return false;
    return !axes.empty();
}

std::string Rectangle::to_string() const {
    std::string s;
    for (std::size_t d = 0; d < axes.size(); ++d) {
        if (d) s += "x";
        s += axes[d].to_string();
    }
    return s;
}

bool operator==(const Rectangle& a, const Rectangle& b) { return a.axes == b.axes; }
bool operator!=(const Rectangle& a, const Rectangle& b) { return !(a == b); }

std::size_t hash_value(const Rectangle& r) {
    std::size_t seed = 0;
    for (const auto& iv : r.axes)
        boost::hash_combine(seed, hash_value(iv));
    return seed;
}

namespace {

void require_same_dim(const Rectangle& a, const Rectangle& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("Rectangle: dimension mismatch");
}

}  // namespace

std::optional<Rectangle> rect_intersection(const Rectangle& r1, const Rectangle& r2) {
    require_same_dim(r1, r2);
    Rectangle out;
    out.axes.reserve(r1.axes.size());
    for (std::size_t d = 0; d < r1.axes.size(); ++d) {
        auto iv = interval_intersection(r1.axes[d], r2.axes[d]);
        if (!iv) return std::nullopt;
        out.axes.push_back(*iv);
    }
    return out;
}

bool rect_contains(const Rectangle& outer, const Rectangle& inner) {
    require_same_dim(outer, inner);
    for (std::size_t d = 0; d < outer.axes.size(); ++d) {
        auto rel = interval_relation(outer.axes[d], inner.axes[d]);
        if (rel != IntervalRelation::Equal && rel != IntervalRelation::AContainsB)
            return false;
    }
    return true;
}

RelAddress relative_address(const Rectangle& child, const Rectangle& parent) {
    require_same_dim(child, parent);
    if (!rect_contains(parent, child))
        throw std::invalid_argument("relative_address: child not contained in parent");
    RelAddress rel;
    rel.reserve(child.axes.size());
    for (std::size_t d = 0; d < child.axes.size(); ++d) {
        int extra = child.axes[d].depth - parent.axes[d].depth;
        std::string bits(static_cast<std::size_t>(extra), '0');
        for (int j = 0; j < extra; ++j)
            if (boost::multiprecision::bit_test(child.axes[d].num,
                                                static_cast<unsigned>(extra - 1 - j)))
                bits[static_cast<std::size_t>(j)] = '1';
        rel.push_back(std::move(bits));
    }
    return rel;
}

Rectangle apply_relative_address(const Rectangle& parent, const RelAddress& rel) {
    if (static_cast<int>(rel.size()) != parent.dim())
        throw std::invalid_argument("apply_relative_address: dimension mismatch");
    Rectangle out = parent;
    for (std::size_t d = 0; d < rel.size(); ++d) {
        for (char c : rel[d]) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("apply_relative_address: bad address bit");
            out.axes[d] = out.axes[d].child(c == '1' ? 1 : 0);
        }
    }
    return out;
}

Point affine_map_point(const Rectangle& src, const Rectangle& dst, const Point& p) {
    require_same_dim(src, dst);
    if (static_cast<int>(p.size()) != src.dim())
        throw std::invalid_argument("affine_map_point: point dimension mismatch");
    Point out;
    out.reserve(p.size());
    for (std::size_t d = 0; d < p.size(); ++d) {
        if (!src.axes[d].contains(p[d]))
            throw std::invalid_argument("affine_map_point: point outside source rectangle");
        Dyadic offset = sub(p[d], src.axes[d].lo());
        offset = mul_pow2(offset, src.axes[d].depth - dst.axes[d].depth);
        out.push_back(add(offset, dst.axes[d].lo()));
    }
    return out;
}

Measure measure(const Rectangle& r) {
    int total = 0;
    for (const auto& iv : r.axes) total += iv.depth;
    return Dyadic(1, total);
}

std::pair<Rectangle, Rectangle> subdivide(const Rectangle& r, int axis) {
    if (axis < 0 || axis >= r.dim())
        throw std::invalid_argument("subdivide: axis out of range");
    Rectangle lo = r, hi = r;
    lo.axes[static_cast<std::size_t>(axis)] = r.axes[static_cast<std::size_t>(axis)].child(0);
    hi.axes[static_cast<std::size_t>(axis)] = r.axes[static_cast<std::size_t>(axis)].child(1);
    return {lo, hi};
}

bool contains_point(const Rectangle& r, const Point& p) {
    if (static_cast<int>(p.size()) != r.dim())
        throw std::invalid_argument("contains_point: dimension mismatch");
    for (std::size_t d = 0; d < p.size(); ++d)
        if (!r.axes[d].contains(p[d])) return false;
    return true;
}

Point lower_corner(const Rectangle& r) {
    Point p;
    p.reserve(r.axes.size());
    for (const auto& iv : r.axes) p.push_back(iv.lo());
    return p;
}

bool point_in_unit_cube(const Point& p) {
    for (const auto& x : p)
        if (compare(x, Dyadic(1, 0)) >= 0) return false;
    return !p.empty();
}

std::string point_to_string(const Point& p) {
    std::string s = "(";
    for (std::size_t d = 0; d < p.size(); ++d) {
        if (d) s += ",";
        s += p[d].to_decimal_string();
    }
    return s + ")";
}

}  // namespace nvemb
