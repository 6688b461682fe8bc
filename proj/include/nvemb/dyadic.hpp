#pragma once

// Exact arithmetic for dyadic rationals, dyadic intervals and n-dimensional
// dyadic rectangles in [0,1)^n.  Everything here is integer arithmetic on
// arbitrary-precision numerators; no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nvemb {

using BigInt = boost::multiprecision::cpp_int;

// Nonnegative dyadic rational num / 2^exp.
// Canonical form: num odd, or exp == 0 (zero is stored as 0/2^0).
struct Dyadic {
    BigInt num = 0;
    int exp = 0;

    Dyadic() = default;
    Dyadic(BigInt n, int e);

    bool is_zero() const { return num == 0; }

    // Exact decimal expansion (dyadic rationals always have one).
    std::string to_decimal_string() const;
    // "num/2^exp" form, "0" / plain integer when exp == 0.
    std::string to_fraction_string() const;
};

int compare(const Dyadic& a, const Dyadic& b);
bool operator==(const Dyadic& a, const Dyadic& b);
bool operator!=(const Dyadic& a, const Dyadic& b);
bool operator<(const Dyadic& a, const Dyadic& b);
bool operator<=(const Dyadic& a, const Dyadic& b);

Dyadic add(const Dyadic& a, const Dyadic& b);
// Requires a >= b.
Dyadic sub(const Dyadic& a, const Dyadic& b);
// Multiply by 2^k (k may be negative).
Dyadic mul_pow2(const Dyadic& a, int k);

std::size_t hash_value(const Dyadic& a);

// Half-open interval [num * 2^-depth, (num+1) * 2^-depth), 0 <= num < 2^depth.
// The depth-bit big-endian expansion of num is the interval's address: the
// sequence of lower/upper halving choices that reaches it from [0,1).
struct DyadicInterval {
    BigInt num = 0;
    int depth = 0;

    DyadicInterval() = default;
    DyadicInterval(BigInt n, int d);

    Dyadic lo() const { return Dyadic(num, depth); }
    Dyadic hi() const { return Dyadic(num + 1, depth); }
    Dyadic measure() const { return Dyadic(1, depth); }
    bool is_unit() const { return depth == 0; }

    DyadicInterval child(int bit) const;
    DyadicInterval parent() const;
    // True when this is the lower child of its parent.
    bool is_lower_child() const;

    bool contains(const Dyadic& x) const;  // lo <= x < hi

    std::string address() const;
    static DyadicInterval from_address(const std::string& bits);

    std::string to_string() const;  // "[0.25,0.5)"
};

bool operator==(const DyadicInterval& a, const DyadicInterval& b);
bool operator!=(const DyadicInterval& a, const DyadicInterval& b);

enum class IntervalRelation { Disjoint, Equal, AContainsB, BContainsA };

// Two dyadic intervals are never partially overlapping; exactly one case holds.
IntervalRelation interval_relation(const DyadicInterval& a, const DyadicInterval& b);

std::optional<DyadicInterval> interval_intersection(const DyadicInterval& a,
                                                    const DyadicInterval& b);

std::size_t hash_value(const DyadicInterval& iv);

// Product of n dyadic intervals, one per axis.
struct Rectangle {
    std::vector<DyadicInterval> axes;

    Rectangle() = default;
    explicit Rectangle(std::vector<DyadicInterval> a) : axes(std::move(a)) {}

    int dim() const { return static_cast<int>(axes.size()); }
    static Rectangle unit_cube(int n);
    bool is_unit_cube() const;

    std::string to_string() const;  // "[0,0.5)x[0.5,1)"
};

bool operator==(const Rectangle& a, const Rectangle& b);
bool operator!=(const Rectangle& a, const Rectangle& b);

std::size_t hash_value(const Rectangle& r);

// Dyadic point; coordinate count must match the ambient dimension.
using Point = std::vector<Dyadic>;

// Per-axis halving choices ('0' lower / '1' upper) locating a sub-rectangle
// inside a parent.
using RelAddress = std::vector<std::string>;

// Empty iff some axis pair is disjoint; otherwise the per-axis deeper interval.
std::optional<Rectangle> rect_intersection(const Rectangle& r1, const Rectangle& r2);

// True iff inner is contained in outer on every axis.
bool rect_contains(const Rectangle& outer, const Rectangle& inner);

// Per-axis address of child inside parent; throws std::invalid_argument when
// child is not contained in parent.
RelAddress relative_address(const Rectangle& child, const Rectangle& parent);

Rectangle apply_relative_address(const Rectangle& parent, const RelAddress& rel);

// The orientation-preserving affine bijection src -> dst, applied to p in src.
// Per axis: x -> (x - src.lo) * (dst.len / src.len) + dst.lo; all scale
// factors are powers of two, so dyadic points map to dyadic points.
Point affine_map_point(const Rectangle& src, const Rectangle& dst, const Point& p);

using Measure = Dyadic;

Measure measure(const Rectangle& r);  // 2^-(sum of axis depths)

std::pair<Rectangle, Rectangle> subdivide(const Rectangle& r, int axis);

bool contains_point(const Rectangle& r, const Point& p);

Point lower_corner(const Rectangle& r);

bool point_in_unit_cube(const Point& p);

std::string point_to_string(const Point& p);

}  // namespace nvemb
