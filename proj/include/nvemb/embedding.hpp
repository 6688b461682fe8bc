#pragma once

// Slice constructions, the slice-shift elements h, embeddings of right-angled
// Artin groups into nV, and exact verification of the ping-pong hypotheses
// that certify injectivity.

#include "nvemb/dyadic.hpp"
#include "nvemb/element.hpp"
#include "nvemb/raag.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nvemb {

// A D-slice S of [0,1)^n together with a chosen division S = S+ ⊔ S-,
// all three proper exactly on the axes in D.
struct SliceSpec {
    std::vector<int> D;  // sorted, nonempty, 0-based axes
    Rectangle S;
    Rectangle s_plus;
    Rectangle s_minus;
};

struct SliceReport {
    bool ok = true;
    std::string message;
};

// Strict slice predicate: axis d is a proper subinterval of [0,1) iff d in D.
bool is_d_slice(const Rectangle& r, const std::vector<int>& D);

SliceReport validate_slice_spec(const SliceSpec& spec);

// A pattern of D-slices containing S as one rectangle: per axis d in D,
// [0,1) is partitioned into the path siblings of S's axis-d address plus
// S's own interval; the pattern is the product of these partitions, full
// [0,1) on axes outside D, ordered lexicographically by lower corner.
// |P| = prod over d in D of (depth_d + 1).  Requires every axis outside D
// to be all of [0,1); axes in D may have any depth.
NumberedPattern build_slice_pattern(const Rectangle& S, const std::vector<int>& D);

// Halve S along axis min(D); first component (the lower half) is S+.
std::pair<Rectangle, Rectangle> split_slice(const Rectangle& S, const std::vector<int>& D);

// The element h with h(I^n - S-) = S+ and h^-1(I^n - S+) = S-, leaving every
// coordinate outside D unchanged.  S+ and S- are subdivided into |P| slices
// by successive halving along min(D); the corner piece of each subdivision
// plays the role of S++ / S--.  Piece groups, in order: the |P|-1 slices of
// I^n - S onto the slices of S+ - S++ (both lexicographic by lower corner),
// S+ onto S++, the slices of S- - S-- onto the slices of I^n - S, and
// S-- onto S-.
Element lemma_h(const SliceSpec& spec);

// Disjoint dyadic rectangles tiling [0,1)^n - R (empty when R is the cube),
// ordered lexicographically by lower corner.
std::vector<Rectangle> complement_tiling(const Rectangle& R);

struct SliceFamily {
    std::vector<SliceSpec> slices;
    int part_depth = 0;  // depth K of the division [0,1) = ⊔ J_k
    Point base_point;    // every coordinate at the lower corner of the reserved part
};

// For m nonempty subsets D_i of the axes: K is least with 2^K >= m+2,
// J_k = [k 2^-K, (k+1) 2^-K), and S_i uses J_{i-1} on the axes in D_i and
// [0,1) elsewhere.  Then each S_i is a D_i-slice, S_i and S_j are disjoint
// iff D_i and D_j intersect, and the union leaves the reserved part J_m free.
SliceFamily build_slices(const std::vector<std::vector<int>>& d_list, int n);

// Generators of the embedded group, one element per vertex.  Slice data is
// present when built directly from a D-assignment and absent for assembled
// (direct-product) embeddings, whose certificates are unavailable.
struct GeneratorMap {
    Graph graph;
    int dim = 0;
    std::vector<Element> generators;
    std::optional<DAssignment> assignment;
    std::optional<std::vector<SliceSpec>> slices;
    std::optional<Point> base_point;

    bool has_slice_data() const { return assignment && slices && base_point; }
};

GeneratorMap build_embedding_from_assignment(const Graph& g, const DAssignment& a);

// Verifies commute(h_i, h_j) iff edge {v_i, v_j}, for all pairs; returns the
// first violating pair or ok.
AssignmentReport verify_commutation(const GeneratorMap& gm);

// The element acting as the affine copy of f inside R and as the identity on
// the tiles of [0,1)^n - R.
Element conjugate_into(const Element& f, const Rectangle& R);

// The fixed infinite-order base element of 1V ([0,1/2) -> [0,1/4),
// [1/2,3/4) -> [1/4,1/2), [3/4,1) -> [1/2,1)), extended by the identity on
// axes 2..dim.
Element infinite_order_element(int dim);

struct unsupported_graph_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full construction: split off the universal vertices V0, embed the rest via
// the canonical assignment in dimension n = number of complementary edges,
// and, when V0 is nonempty, assemble the direct product by conjugating the
// two factors into disjoint rectangles (V0 contributes commuting copies of
// the infinite-order base element).  Throws unsupported_graph_error when the
// graph is complete (no complementary edges).
GeneratorMap build_embedding(const Graph& g);

// Z^m for a complete graph: m commuting copies of the infinite-order element
// in disjoint subintervals of [0,1), dimension 1.  Explicit opt-in; not the
// complementary-edge construction.
GeneratorMap build_free_abelian(const Graph& g);

struct piece_limit_error : std::runtime_error {
    std::uint64_t pieces;
    explicit piece_limit_error(std::uint64_t n)
        : std::runtime_error("piece ceiling exceeded: " + std::to_string(n) + " pieces"),
          pieces(n) {}
};

inline constexpr std::uint64_t kDefaultPieceCeiling = 1'000'000;

// Left-to-right evaluation of w (the first letter acts first).  Intermediate
// results are reduced when reduce_steps is set; throws piece_limit_error when
// a composition exceeds the ceiling.
Element evaluate(const GeneratorMap& gm, const Word& w,
                 std::uint64_t piece_ceiling = kDefaultPieceCeiling, bool reduce_steps = true);

// Exact image of R under f as finitely many disjoint dyadic rectangles, in
// piece order: R is refined against f's domain pieces and each fragment is
// mapped through its piece.
std::vector<Rectangle> image_of_rectangle(const Element& f, const Rectangle& r);

std::vector<Rectangle> image_of_rectangles(const Element& f, const std::vector<Rectangle>& rs);

// True iff the fragments are pairwise disjoint, contained in target, and of
// total measure equal to target's.
bool tiles_exactly(const std::vector<Rectangle>& fragments, const Rectangle& target);

struct ConditionResult {
    bool pass = true;
    std::string witness;
};

// Exact verification record of the ping-pong hypotheses for a slice-built
// embedding: (1) h_i contracts S_i+ into itself and h_i^-1 contracts S_i-,
// (2) h_i fixes S_j setwise for every edge, (3) h_i throws S_j into S_i+ and
// h_i^-1 into S_i- for every non-edge, (4) the base point lies outside every
// S_i and is driven into S_i+/S_i- by h_i/h_i^-1.  The remark field re-checks
// the setwise fixing over the pairs with disjoint axis sets.
struct PingPongCertificate {
    ConditionResult cond1, cond2, cond3, cond4, remark;
    Point base_point;

    bool valid() const {
        return cond1.pass && cond2.pass && cond3.pass && cond4.pass && remark.pass;
    }
};

struct certificate_unavailable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throws certificate_unavailable_error when gm lacks slice data (assembled
// embeddings); use the bounded word check instead for those.
PingPongCertificate verify_pingpong(const GeneratorMap& gm);

}  // namespace nvemb
