#include "nvemb/embedding.hpp"

#include <algorithm>
#include <cassert>

namespace nvemb {

namespace {

bool in_set(const std::vector<int>& sorted, int x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

bool axes_valid(const std::vector<int>& D, int n) {
    if (D.empty()) return false;
    if (!std::is_sorted(D.begin(), D.end())) return false;
    if (std::adjacent_find(D.begin(), D.end()) != D.end()) return false;
    return D.front() >= 0 && D.back() < n;
}

// The path siblings of iv's address: for each proper prefix p.b of the
// address, the interval addressed p.(1-b).  Together with iv itself they
// tile [0,1).
std::vector<DyadicInterval> path_siblings(const DyadicInterval& iv) {
    std::vector<DyadicInterval> out;
    out.reserve(static_cast<std::size_t>(iv.depth));
    for (int j = 1; j <= iv.depth; ++j)
        out.emplace_back((iv.num >> (iv.depth - j)) ^ 1, j);
    return out;
}

int compare_lower_corner(const Rectangle& a, const Rectangle& b) {
    for (std::size_t d = 0; d < a.axes.size(); ++d) {
        int c = compare(a.axes[d].lo(), b.axes[d].lo());
        if (c != 0) return c;
    }
    return 0;
}

void sort_by_lower_corner(std::vector<Rectangle>& rects) {
    std::sort(rects.begin(), rects.end(),
              [](const Rectangle& a, const Rectangle& b) { return compare_lower_corner(a, b) < 0; });
}

// Splits R along `axis` into `count` pieces: lower halves of successive upper
// remainders, then the final remainder.  Piece 0 contains R's lower corner.
std::vector<Rectangle> successive_halving(const Rectangle& R, int axis, int count) {
    std::vector<Rectangle> parts;
    parts.reserve(static_cast<std::size_t>(count));
    Rectangle cur = R;
    for (int i = 1; i < count; ++i) {
        auto [lo, hi] = subdivide(cur, axis);
        parts.push_back(lo);
        cur = hi;
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

bool is_d_slice(const Rectangle& r, const std::vector<int>& D) {
    for (int d = 0; d < r.dim(); ++d) {
        bool proper = r.axes[static_cast<std::size_t>(d)].depth > 0;
        if (proper != in_set(D, d)) return false;
    }
    return true;
}

SliceReport validate_slice_spec(const SliceSpec& spec) {
    int n = spec.S.dim();
    if (!axes_valid(spec.D, n))
        return {false, "axis set must be a nonempty sorted subset of the axes"};
    if (spec.s_plus.dim() != n || spec.s_minus.dim() != n)
        return {false, "dimension mismatch between S, S+ and S-"};
    if (!is_d_slice(spec.S, spec.D)) return {false, "S is not a D-slice"};
    if (!is_d_slice(spec.s_plus, spec.D)) return {false, "S+ is not a D-slice"};
    if (!is_d_slice(spec.s_minus, spec.D)) return {false, "S- is not a D-slice"};
    if (!rect_contains(spec.S, spec.s_plus)) return {false, "S+ not contained in S"};
    if (!rect_contains(spec.S, spec.s_minus)) return {false, "S- not contained in S"};
    if (rect_intersection(spec.s_plus, spec.s_minus)) return {false, "S+ and S- overlap"};
    if (add(measure(spec.s_plus), measure(spec.s_minus)) != measure(spec.S))
        return {false, "S+ and S- do not divide S"};
    return {};
}

NumberedPattern build_slice_pattern(const Rectangle& S, const std::vector<int>& D) {
    int n = S.dim();
    if (!axes_valid(D, n))
        throw std::invalid_argument("build_slice_pattern: bad axis set");
    for (int d = 0; d < n; ++d)
        if (!in_set(D, d) && S.axes[static_cast<std::size_t>(d)].depth != 0)
            throw std::invalid_argument("build_slice_pattern: S not a D-slice (axis " +
                                        std::to_string(d + 1) + " proper but outside D)");
    // Per-axis choices on the D axes: path siblings plus S's own interval.
    std::vector<std::vector<DyadicInterval>> choices;
    choices.reserve(D.size());
    for (int d : D) {
        auto parts = path_siblings(S.axes[static_cast<std::size_t>(d)]);
        parts.push_back(S.axes[static_cast<std::size_t>(d)]);
        choices.push_back(std::move(parts));
    }
    NumberedPattern pattern;
    std::vector<std::size_t> idx(D.size(), 0);
    for (;;) {
        Rectangle r = Rectangle::unit_cube(n);
        for (std::size_t k = 0; k < D.size(); ++k)
            r.axes[static_cast<std::size_t>(D[k])] = choices[k][idx[k]];
        pattern.push_back(std::move(r));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    sort_by_lower_corner(pattern);
    return pattern;
}

std::pair<Rectangle, Rectangle> split_slice(const Rectangle& S, const std::vector<int>& D) {
    if (!axes_valid(D, S.dim()))
        throw std::invalid_argument("split_slice: bad axis set");
    return subdivide(S, D.front());
}

Element lemma_h(const SliceSpec& spec) {
    SliceReport report = validate_slice_spec(spec);
    if (!report.ok)
        throw std::invalid_argument("lemma_h: invalid slice spec: " + report.message);
    const int axis = spec.D.front();
    NumberedPattern pattern = build_slice_pattern(spec.S, spec.D);
    const int p = static_cast<int>(pattern.size());

    std::vector<Rectangle> complement;  // the |P|-1 slices of I^n - S, in order
    complement.reserve(pattern.size() - 1);
    for (const auto& r : pattern)
        if (r != spec.S) complement.push_back(r);

    std::vector<Rectangle> plus_parts = successive_halving(spec.s_plus, axis, p);
    std::vector<Rectangle> minus_parts = successive_halving(spec.s_minus, axis, p);
    const Rectangle& plus_corner = plus_parts[0];    // S++
    const Rectangle& minus_corner = minus_parts[0];  // S--

    Element h;
    h.dim = spec.S.dim();
    h.pieces.reserve(static_cast<std::size_t>(2 * p));
    for (int k = 0; k + 1 < p; ++k)
        h.pieces.push_back({complement[static_cast<std::size_t>(k)],
                            plus_parts[static_cast<std::size_t>(k + 1)]});
    h.pieces.push_back({spec.s_plus, plus_corner});
    for (int k = 0; k + 1 < p; ++k)
        h.pieces.push_back({minus_parts[static_cast<std::size_t>(k + 1)],
                            complement[static_cast<std::size_t>(k)]});
    h.pieces.push_back({minus_corner, spec.s_minus});
    return h;
}

std::vector<Rectangle> complement_tiling(const Rectangle& R) {
    // First-escape-axis decomposition: a point outside R has a first axis d
    // where it leaves R's interval; it then lies in R's intervals on the
    // earlier axes and in a path sibling on axis d.
    const int n = R.dim();
    std::vector<Rectangle> tiles;
    for (int d = 0; d < n; ++d) {
        for (const auto& sib : path_siblings(R.axes[static_cast<std::size_t>(d)])) {
            Rectangle tile = Rectangle::unit_cube(n);
            for (int e = 0; e < d; ++e)
                tile.axes[static_cast<std::size_t>(e)] = R.axes[static_cast<std::size_t>(e)];
            tile.axes[static_cast<std::size_t>(d)] = sib;
            tiles.push_back(std::move(tile));
        }
    }
    sort_by_lower_corner(tiles);
    return tiles;
}

SliceFamily build_slices(const std::vector<std::vector<int>>& d_list, int n) {
    if (n < 1)
        throw std::invalid_argument("build_slices: dimension must be >= 1");
    if (d_list.empty())
        throw std::invalid_argument("build_slices: no subsets given");
    for (const auto& D : d_list)
        if (!axes_valid(D, n))
            throw std::invalid_argument("build_slices: each D_i must be a nonempty sorted "
                                        "subset of the axes");
    const int m = static_cast<int>(d_list.size());
    int K = 1;
    while ((BigInt(1) << K) < m + 2) ++K;

    SliceFamily family;
    family.part_depth = K;
    family.slices.reserve(d_list.size());
    for (int i = 0; i < m; ++i) {
        DyadicInterval part(i, K);
        Rectangle S = Rectangle::unit_cube(n);
        for (int d : d_list[static_cast<std::size_t>(i)])
            S.axes[static_cast<std::size_t>(d)] = part;
        auto [plus, minus] = split_slice(S, d_list[static_cast<std::size_t>(i)]);
        family.slices.push_back({d_list[static_cast<std::size_t>(i)], S, plus, minus});
    }
    family.base_point.assign(static_cast<std::size_t>(n), Dyadic(m, K));
    return family;
}

GeneratorMap build_embedding_from_assignment(const Graph& g, const DAssignment& a) {
    AssignmentReport report = validate_d_assignment(g, a);
    if (!report.ok)
        throw std::invalid_argument("build_embedding_from_assignment: " + report.message);
    SliceFamily family = build_slices(a.sets, a.n);
    GeneratorMap gm;
    gm.graph = g;
    gm.dim = a.n;
    gm.generators.reserve(family.slices.size());
    for (const auto& spec : family.slices) gm.generators.push_back(lemma_h(spec));
    gm.assignment = a;
    gm.slices = std::move(family.slices);
    gm.base_point = std::move(family.base_point);
    return gm;
}

AssignmentReport verify_commutation(const GeneratorMap& gm) {
    const int m = static_cast<int>(gm.generators.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Element& hi = gm.generators[static_cast<std::size_t>(i)];
            const Element& hj = gm.generators[static_cast<std::size_t>(j)];
            bool commute = equals(compose(hi, hj), compose(hj, hi));
            if (commute != gm.graph.has_edge(i, j))
                return {false,
                        "pair {" + gm.graph.vertices[static_cast<std::size_t>(i)] + "," +
                            gm.graph.vertices[static_cast<std::size_t>(j)] + "} " +
                            (commute ? "commutes without an edge" : "has an edge but fails to commute")};
        }
    }
    return {};
}

Element conjugate_into(const Element& f, const Rectangle& R) {
    if (f.dim != R.dim())
        throw std::invalid_argument("conjugate_into: dimension mismatch");
    const Rectangle cube = Rectangle::unit_cube(f.dim);
    Element out;
    out.dim = f.dim;
    for (const auto& piece : f.pieces)
        out.pieces.push_back({transport_rect(piece.domain, cube, R),
                              transport_rect(piece.range, cube, R)});
    for (const auto& tile : complement_tiling(R)) out.pieces.push_back({tile, tile});
    return out;
}

Element infinite_order_element(int dim) {
    if (dim < 1)
        throw std::invalid_argument("infinite_order_element: dimension must be >= 1");
    Element t;
    t.dim = dim;
    auto piece = [dim](DyadicInterval dom, DyadicInterval rng) {
        Rectangle d = Rectangle::unit_cube(dim), r = Rectangle::unit_cube(dim);
        d.axes[0] = dom;
        r.axes[0] = rng;
        return Piece{d, r};
    };
    t.pieces.push_back(piece(DyadicInterval(0, 1), DyadicInterval(0, 2)));
    t.pieces.push_back(piece(DyadicInterval(2, 2), DyadicInterval(1, 2)));
    t.pieces.push_back(piece(DyadicInterval(3, 2), DyadicInterval(1, 1)));
    return t;
}

namespace {

// Disjoint axis-1 cells indexed 0..count-1 inside `base` (which spans a
// dyadic interval on axis 1 and is full elsewhere).
Rectangle axis0_cell(const DyadicInterval& base, int count, int j, int dim) {
    int extra = 0;
    while ((1 << extra) < count) ++extra;
    Rectangle cell = Rectangle::unit_cube(dim);
    cell.axes[0] = DyadicInterval((base.num << extra) + j, base.depth + extra);
    return cell;
}

}  // namespace

GeneratorMap build_embedding(const Graph& g) {
    auto comp = complementary_edges(g);
    if (comp.empty())
        throw unsupported_graph_error(
            "graph is complete (no complementary edges); the construction needs dimension >= 1");
    std::vector<int> v0 = v0_vertices(g);
    std::vector<int> keep;
    for (int i = 0; i < g.vertex_count(); ++i)
        if (!std::binary_search(v0.begin(), v0.end(), i)) keep.push_back(i);
    Graph reduced = induced_subgraph(g, keep);
    GeneratorMap inner = build_embedding_from_assignment(reduced, canonical_d_assignment(reduced));
    assert(inner.dim == static_cast<int>(comp.size()));
    if (v0.empty()) {
        inner.graph = g;
        return inner;
    }

    const int n = inner.dim;
    Rectangle left = Rectangle::unit_cube(n);   // carries the reduced factor
    left.axes[0] = DyadicInterval(0, 1);
    DyadicInterval right(1, 1);  // axis-1 home of the free-abelian factor
    Element t = infinite_order_element(n);

    GeneratorMap gm;
    gm.graph = g;
    gm.dim = n;
    gm.generators.resize(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t k = 0; k < keep.size(); ++k)
        gm.generators[static_cast<std::size_t>(keep[k])] =
            conjugate_into(inner.generators[k], left);
    for (std::size_t j = 0; j < v0.size(); ++j)
        gm.generators[static_cast<std::size_t>(v0[j])] =
            conjugate_into(t, axis0_cell(right, static_cast<int>(v0.size()),
                                         static_cast<int>(j), n));
    return gm;
}

GeneratorMap build_free_abelian(const Graph& g) {
    if (!complementary_edges(g).empty())
        throw std::invalid_argument("build_free_abelian: graph must be complete");
    if (g.vertex_count() < 1)
        throw std::invalid_argument("build_free_abelian: empty graph");
    const int m = g.vertex_count();
    Element t = infinite_order_element(1);
    GeneratorMap gm;
    gm.graph = g;
    gm.dim = 1;
    for (int j = 0; j < m; ++j)
        gm.generators.push_back(conjugate_into(t, axis0_cell(DyadicInterval(0, 0), m, j, 1)));
    return gm;
}

Element evaluate(const GeneratorMap& gm, const Word& w, std::uint64_t piece_ceiling,
                 bool reduce_steps) {
    Element acc = identity(gm.dim);
    for (const auto& letter : w) {
        if (letter.gen < 0 || letter.gen >= static_cast<int>(gm.generators.size()))
            throw std::invalid_argument("evaluate: unknown generator index " +
                                        std::to_string(letter.gen + 1));
        const Element& gen = gm.generators[static_cast<std::size_t>(letter.gen)];
        acc = letter.sign > 0 ? compose(acc, gen) : compose(acc, inverse(gen));
        if (acc.pieces.size() > piece_ceiling)
            throw piece_limit_error(acc.pieces.size());
        if (reduce_steps) acc = reduce(acc);
    }
    return acc;
}

std::vector<Rectangle> image_of_rectangle(const Element& f, const Rectangle& r) {
    if (f.dim != r.dim())
        throw std::invalid_argument("image_of_rectangle: dimension mismatch");
    std::vector<Rectangle> fragments;
    for (const auto& piece : f.pieces)
        if (auto cell = rect_intersection(r, piece.domain))
            fragments.push_back(transport_rect(*cell, piece.domain, piece.range));
    return fragments;
}

std::vector<Rectangle> image_of_rectangles(const Element& f, const std::vector<Rectangle>& rs) {
    std::vector<Rectangle> fragments;
    for (const auto& r : rs)
        for (auto& frag : image_of_rectangle(f, r)) fragments.push_back(std::move(frag));
    return fragments;
}

bool tiles_exactly(const std::vector<Rectangle>& fragments, const Rectangle& target) {
    Measure total(0, 0);
    for (const auto& frag : fragments) {
        if (!rect_contains(target, frag)) return false;
        total = add(total, measure(frag));
    }
    for (std::size_t i = 0; i < fragments.size(); ++i)
        for (std::size_t j = i + 1; j < fragments.size(); ++j)
            if (rect_intersection(fragments[i], fragments[j])) return false;
    return total == measure(target);
}

namespace {

std::string pair_witness(const GeneratorMap& gm, int i, int j, const std::string& detail) {
    return "generators " + gm.graph.vertices[static_cast<std::size_t>(i)] + "," +
           gm.graph.vertices[static_cast<std::size_t>(j)] + ": " + detail;
}

}  // namespace

PingPongCertificate verify_pingpong(const GeneratorMap& gm) {
    if (!gm.has_slice_data())
        throw certificate_unavailable_error(
            "embedding carries no slice data (assembled direct product); "
            "use the bounded word check instead");
    const auto& slices = *gm.slices;
    const auto& assignment = *gm.assignment;
    const int m = static_cast<int>(gm.generators.size());

    PingPongCertificate cert;
    cert.base_point = *gm.base_point;

    // (1) h_i(S_i+) ⊂ S_i+ and h_i^-1(S_i-) ⊂ S_i-.
    for (int i = 0; i < m && cert.cond1.pass; ++i) {
        const Element& h = gm.generators[static_cast<std::size_t>(i)];
        const SliceSpec& s = slices[static_cast<std::size_t>(i)];
        for (const auto& frag : image_of_rectangle(h, s.s_plus))
            if (!rect_contains(s.s_plus, frag)) {
                cert.cond1 = {false, "generator " + gm.graph.vertices[static_cast<std::size_t>(i)] +
                                         " maps part of S+ to " + frag.to_string() +
                                         " outside S+ = " + s.s_plus.to_string()};
                break;
            }
        if (!cert.cond1.pass) break;
        for (const auto& frag : image_of_rectangle(inverse(h), s.s_minus))
            if (!rect_contains(s.s_minus, frag)) {
                cert.cond1 = {false, "generator " + gm.graph.vertices[static_cast<std::size_t>(i)] +
                                         " pulls part of S- to " + frag.to_string() +
                                         " outside S- = " + s.s_minus.to_string()};
                break;
            }
    }

    // (2) h_i(S_j) = S_j for every edge {v_i, v_j}.
    for (int i = 0; i < m && cert.cond2.pass; ++i)
        for (int j = 0; j < m && cert.cond2.pass; ++j) {
            if (i == j || !gm.graph.has_edge(i, j)) continue;
            const auto frags = image_of_rectangle(gm.generators[static_cast<std::size_t>(i)],
                                                  slices[static_cast<std::size_t>(j)].S);
            if (!tiles_exactly(frags, slices[static_cast<std::size_t>(j)].S))
                cert.cond2 = {false, pair_witness(gm, i, j, "image of S_j does not tile S_j")};
        }

    // (3) h_i(S_j) ⊂ S_i+ and h_i^-1(S_j) ⊂ S_i- for every non-edge.
    for (int i = 0; i < m && cert.cond3.pass; ++i)
        for (int j = 0; j < m && cert.cond3.pass; ++j) {
            if (i == j || gm.graph.has_edge(i, j)) continue;
            const Element& h = gm.generators[static_cast<std::size_t>(i)];
            const SliceSpec& si = slices[static_cast<std::size_t>(i)];
            const SliceSpec& sj = slices[static_cast<std::size_t>(j)];
            for (const auto& frag : image_of_rectangle(h, sj.S))
                if (!rect_contains(si.s_plus, frag)) {
                    cert.cond3 = {false, pair_witness(gm, i, j,
                                                      "fragment " + frag.to_string() +
                                                          " of h_i(S_j) escapes S_i+")};
                    break;
                }
            if (!cert.cond3.pass) break;
            for (const auto& frag : image_of_rectangle(inverse(h), sj.S))
                if (!rect_contains(si.s_minus, frag)) {
                    cert.cond3 = {false, pair_witness(gm, i, j,
                                                      "fragment " + frag.to_string() +
                                                          " of h_i^-1(S_j) escapes S_i-")};
                    break;
                }
        }

    // (4) The base point avoids every S_i and is driven into S_i+ / S_i-.
    for (int i = 0; i < m && cert.cond4.pass; ++i) {
        const Element& h = gm.generators[static_cast<std::size_t>(i)];
        const SliceSpec& s = slices[static_cast<std::size_t>(i)];
        const std::string& name = gm.graph.vertices[static_cast<std::size_t>(i)];
        if (contains_point(s.S, cert.base_point)) {
            cert.cond4 = {false, "base point lies inside S_" + name};
        } else if (!contains_point(s.s_plus, apply(h, cert.base_point))) {
            cert.cond4 = {false, "h(base point) misses S+ for generator " + name};
        } else if (!contains_point(s.s_minus, apply(inverse(h), cert.base_point))) {
            cert.cond4 = {false, "h^-1(base point) misses S- for generator " + name};
        }
    }

    // Setwise fixing restated over the pairs with disjoint axis sets.
    for (int i = 0; i < m && cert.remark.pass; ++i)
        for (int j = 0; j < m && cert.remark.pass; ++j) {
            if (i == j) continue;
            const auto& di = assignment.sets[static_cast<std::size_t>(i)];
            const auto& dj = assignment.sets[static_cast<std::size_t>(j)];
            bool disjoint = true;
            for (int k : di)
                if (in_set(dj, k)) { disjoint = false; break; }
            if (!disjoint) continue;
            const auto frags = image_of_rectangle(gm.generators[static_cast<std::size_t>(i)],
                                                  slices[static_cast<std::size_t>(j)].S);
            if (!tiles_exactly(frags, slices[static_cast<std::size_t>(j)].S))
                cert.remark = {false, pair_witness(gm, i, j,
                                                   "disjoint axis sets but the image of S_j "
                                                   "does not tile S_j")};
        }

    return cert;
}

}  // namespace nvemb
