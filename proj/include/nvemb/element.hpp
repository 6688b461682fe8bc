#pragma once

// Patterns and the group calculus of nV elements: maps of [0,1)^n given by a
// pair of equally-sized numbered patterns, matched by list position.

#include "nvemb/dyadic.hpp"

#include <string>
#include <vector>

namespace nvemb {

// Finite list of same-dimension rectangles; a valid pattern is pairwise
// disjoint with measures summing to 1 (a tiling of [0,1)^n).
using Pattern = std::vector<Rectangle>;

// A pattern whose list order is the numbering 0..r-1.
using NumberedPattern = Pattern;

struct PatternReport {
    bool ok = true;
    std::string message;
};

PatternReport validate_pattern(const Pattern& p);

struct Piece {
    Rectangle domain;
    Rectangle range;
};

bool operator==(const Piece& a, const Piece& b);

// An element of nV: the map sending piece i's domain rectangle onto its range
// rectangle affinely, preserving orientation.  Domain rectangles form one
// pattern, range rectangles another, matched by list position.
struct Element {
    int dim = 0;
    std::vector<Piece> pieces;

    int piece_count() const { return static_cast<int>(pieces.size()); }
};

bool operator==(const Element& a, const Element& b);  // piecewise representation equality

Pattern domain_pattern(const Element& f);
Pattern range_pattern(const Element& f);

struct ElementReport {
    bool ok = true;
    std::string message;
};

ElementReport validate_element(const Element& f);

Element identity(int n);

// Image of the dyadic point p under f (p must lie in [0,1)^n).
Point apply(const Element& f, const Point& p);

// v(P,Q)^-1 = v(Q,P).
Element inverse(const Element& f);

// "f then g": the result maps p -> g(f(p)).
Element compose(const Element& f, const Element& g);

// True iff f is the identity map; for a valid element this holds exactly when
// every piece's domain rectangle equals its range rectangle (an affine
// orientation-preserving bijection of a rectangle onto itself is the identity).
bool is_identity(const Element& f);

// True iff f and g agree as maps of [0,1)^n.  Decided by refining f against
// g^-1 through compose and checking the result piecewise.
bool equals(const Element& f, const Element& g);

// Split piece `piece` by halving its domain rectangle on `axis` and
// transporting the split through the piece's affine map; the represented map
// is unchanged.
Element refine_piece(const Element& f, int piece, int axis);

// Greedily merge piece pairs whose domain rectangles are the two halves of a
// common parent on some axis and whose range rectangles are the two halves of
// a common parent on the same axis with matching orientation, until no merge
// applies.  A size heuristic only: the result represents the same map but is
// not asserted to be of minimal piece count.
Element reduce(const Element& f);

// Transport of a sub-rectangle x of `from` through the affine map from -> to.
// Same result as apply_relative_address(to, relative_address(x, from)).
Rectangle transport_rect(const Rectangle& x, const Rectangle& from, const Rectangle& to);

}  // namespace nvemb
