#pragma once

// Defining graphs, complementary edges, words in the generators, and a
// word-problem oracle for right-angled Artin groups.  The oracle is naive
// rewriting (free cancellation plus breadth-first search over adjacent
// commuting transpositions) and shares no code with the nV calculus it is
// used to cross-validate.

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nvemb {

// Finite simple graph; vertices are named and ordered, edges are unordered
// pairs of vertex indices stored with first < second.
struct Graph {
    std::vector<std::string> vertices;
    std::set<std::pair<int, int>> edges;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    bool has_edge(int i, int j) const;
    // -1 when the name is not a vertex.
    int index_of(const std::string& name) const;
};

// Graph text format: lines "v <name>" declare vertices in order, lines
// "e <name> <name>" declare edges, '#' starts a comment.  Unknown names,
// loops and duplicate vertices are errors.
Graph parse_graph(const std::string& text);
std::string write_graph(const Graph& g);

// Non-adjacent distinct vertex pairs, ordered lexicographically by indices.
std::vector<std::pair<int, int>> complementary_edges(const Graph& g);

// Vertices adjacent to every other vertex.
std::vector<int> v0_vertices(const Graph& g);

// Subgraph induced by `keep` (indices into g, strictly increasing).
Graph induced_subgraph(const Graph& g, const std::vector<int>& keep);

// Map vertex -> nonempty subset of axes {0..n-1}, with disjointness of the
// subsets holding exactly for edges of the graph.
struct DAssignment {
    int n = 0;
    std::vector<std::vector<int>> sets;  // per vertex, sorted axis indices
};

// The assignment D_i = { k : complementary edge k is incident to v_i },
// n = number of complementary edges.  Throws std::invalid_argument naming the
// offending vertex when some vertex lies on no complementary edge.
DAssignment canonical_d_assignment(const Graph& g);

struct AssignmentReport {
    bool ok = true;
    std::string message;
};

AssignmentReport validate_d_assignment(const Graph& g, const DAssignment& a);

struct Letter {
    int gen = 0;
    int sign = 1;  // +1 or -1
};

bool operator==(const Letter& a, const Letter& b);

using Word = std::vector<Letter>;

Word inverse_word(const Word& w);

// Word text format: whitespace-separated tokens "<name>" or "<name>^-1".
Word parse_word(const std::string& text, const Graph& g);
std::string word_to_string(const Word& w, const Graph& g);

// Fully reduce w: repeatedly delete adjacent inverse pairs, allowing
// transposition of adjacent commuting letters, and return the least fully
// reduced word in length-then-letter order.  Empty iff w = 1 in the group;
// deterministic for a fixed graph and vertex order.
Word normal_form(const Word& w, const Graph& g);

bool is_trivial(const Word& w, const Graph& g);

// All words of exactly `len` letters over m generators and their inverses, in
// letter order g1 < g1^-1 < g2 < ..., lexicographically.  With
// `freely_reduced` only words without adjacent inverse pairs are produced.
std::vector<Word> words_of_length(int m, int len, bool freely_reduced);

// Streams words of length 0..max_len in length-then-lex order.
void for_each_word(int m, int max_len, bool freely_reduced,
                   const std::function<void(const Word&)>& fn);

std::uint64_t count_words(int m, int max_len, bool freely_reduced);

}  // namespace nvemb
