#include "nvemb/raag.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace nvemb {

bool Graph::has_edge(int i, int j) const {
    if (i == j) return false;
    if (i > j) std::swap(i, j);
    return edges.count({i, j}) != 0;
}

int Graph::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw std::invalid_argument("graph parse error, line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph parse_graph(const std::string& text) {
    Graph g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "v") {
            std::string name;
            if (!(ls >> name) || !valid_name(name))
                parse_fail(lineno, "expected 'v <name>' with name over [A-Za-z0-9_]");
            if (g.index_of(name) >= 0)
                parse_fail(lineno, "duplicate vertex '" + name + "'");
            std::string extra;
            if (ls >> extra) parse_fail(lineno, "trailing tokens after vertex declaration");
            g.vertices.push_back(name);
        } else if (kind == "e") {
            std::string a, b;
            if (!(ls >> a >> b))
                parse_fail(lineno, "expected 'e <name> <name>'");
            std::string extra;
            if (ls >> extra) parse_fail(lineno, "trailing tokens after edge declaration");
            int i = g.index_of(a);
            int j = g.index_of(b);
            if (i < 0) parse_fail(lineno, "unknown vertex '" + a + "'");
            if (j < 0) parse_fail(lineno, "unknown vertex '" + b + "'");
            if (i == j) parse_fail(lineno, "loop at vertex '" + a + "'");
            if (i > j) std::swap(i, j);
            g.edges.insert({i, j});
        } else {
            parse_fail(lineno, "unknown directive '" + kind + "'");
        }
    }
    return g;
}

std::string write_graph(const Graph& g) {
    std::string out;
    for (const auto& v : g.vertices) out += "v " + v + "\n";
    for (const auto& [i, j] : g.edges)
        out += "e " + g.vertices[static_cast<std::size_t>(i)] + " " +
               g.vertices[static_cast<std::size_t>(j)] + "\n";
    return out;
}

std::vector<std::pair<int, int>> complementary_edges(const Graph& g) {
    std::vector<std::pair<int, int>> out;
    int m = g.vertex_count();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (!g.has_edge(i, j)) out.push_back({i, j});
    return out;
}

std::vector<int> v0_vertices(const Graph& g) {
    std::vector<int> out;
    int m = g.vertex_count();
    for (int i = 0; i < m; ++i) {
        bool universal = true;
        for (int j = 0; j < m && universal; ++j)
            if (j != i && !g.has_edge(i, j)) universal = false;
        if (universal) out.push_back(i);
    }
    return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
    Graph out;
    std::vector<int> remap(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int idx : keep) {
        remap[static_cast<std::size_t>(idx)] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(g.vertices[static_cast<std::size_t>(idx)]);
    }
    for (const auto& [i, j] : g.edges) {
        int a = remap[static_cast<std::size_t>(i)];
        int b = remap[static_cast<std::size_t>(j)];
        if (a >= 0 && b >= 0) out.edges.insert({std::min(a, b), std::max(a, b)});
    }
    return out;
}

DAssignment canonical_d_assignment(const Graph& g) {
    auto comp = complementary_edges(g);
    DAssignment a;
    a.n = static_cast<int>(comp.size());
    a.sets.resize(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t k = 0; k < comp.size(); ++k) {
        a.sets[static_cast<std::size_t>(comp[k].first)].push_back(static_cast<int>(k));
        a.sets[static_cast<std::size_t>(comp[k].second)].push_back(static_cast<int>(k));
    }
    for (std::size_t i = 0; i < a.sets.size(); ++i)
        if (a.sets[i].empty())
            throw std::invalid_argument("canonical_d_assignment: vertex '" + g.vertices[i] +
                                        "' lies on no complementary edge");
    return a;
}

AssignmentReport validate_d_assignment(const Graph& g, const DAssignment& a) {
    int m = g.vertex_count();
    if (static_cast<int>(a.sets.size()) != m)
        return {false, "assignment has wrong vertex count"};
    if (a.n < 1)
        return {false, "assignment dimension must be >= 1"};
    for (int i = 0; i < m; ++i) {
        const auto& s = a.sets[static_cast<std::size_t>(i)];
        if (s.empty())
            return {false, "empty set at vertex '" + g.vertices[static_cast<std::size_t>(i)] + "'"};
        for (int k : s)
            if (k < 0 || k >= a.n)
                return {false, "axis out of range at vertex '" +
                                   g.vertices[static_cast<std::size_t>(i)] + "'"};
        if (std::adjacent_find(s.begin(), s.end()) != s.end() || !std::is_sorted(s.begin(), s.end()))
            return {false, "set not sorted/unique at vertex '" +
                               g.vertices[static_cast<std::size_t>(i)] + "'"};
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const auto& si = a.sets[static_cast<std::size_t>(i)];
            const auto& sj = a.sets[static_cast<std::size_t>(j)];
            bool disjoint = true;
            for (int k : si)
                if (std::binary_search(sj.begin(), sj.end(), k)) { disjoint = false; break; }
            if (disjoint != g.has_edge(i, j))
                return {false, "disjointness-iff-edge violated for pair {" +
                                   g.vertices[static_cast<std::size_t>(i)] + "," +
                                   g.vertices[static_cast<std::size_t>(j)] + "}"};
        }
    }
    return {};
}

bool operator==(const Letter& a, const Letter& b) { return a.gen == b.gen && a.sign == b.sign; }

Word inverse_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->sign});
    return out;
}

Word parse_word(const std::string& text, const Graph& g) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        int sign = 1;
        std::string name = tok;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            sign = -1;
            name = tok.substr(0, tok.size() - 3);
        }
        int idx = g.index_of(name);
        if (idx < 0)
            throw std::invalid_argument("word parse error: unknown generator '" + tok + "'");
        w.push_back({idx, sign});
    }
    return w;
}

std::string word_to_string(const Word& w, const Graph& g) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        out += g.vertices[static_cast<std::size_t>(w[i].gen)];
        if (w[i].sign < 0) out += "^-1";
    }
    return out;
}

namespace {

// Internal byte encoding: letter -> 2*gen + (sign < 0).  Lexicographic order
// on the encoded string is the deterministic letter order of the oracle.
std::string encode_word(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (const auto& l : w)
        s.push_back(static_cast<char>(static_cast<unsigned char>(2 * l.gen + (l.sign < 0))));
    return s;
}

Word decode_word(const std::string& s) {
    Word w;
    w.reserve(s.size());
    for (char c : s) {
        int r = static_cast<unsigned char>(c);
        w.push_back({r / 2, (r % 2) ? -1 : 1});
    }
    return w;
}

bool cancels(unsigned char a, unsigned char b) {
    return (a / 2 == b / 2) && (a % 2 != b % 2);
}

}  // namespace

Word normal_form(const Word& w, const Graph& g) {
    for (const auto& l : w)
        if (l.gen < 0 || l.gen >= g.vertex_count() || (l.sign != 1 && l.sign != -1))
            throw std::invalid_argument("normal_form: letter out of range");
    std::string cur = encode_word(w);
    for (;;) {
        // Breadth-first closure of cur under adjacent commuting transpositions.
        std::unordered_set<std::string> seen{cur};
        std::deque<std::string> queue{cur};
        std::string best = cur;
        bool cancelled = false;
        while (!queue.empty()) {
            std::string u = queue.front();
            queue.pop_front();
            for (std::size_t p = 0; p + 1 < u.size(); ++p) {
                if (cancels(static_cast<unsigned char>(u[p]),
                            static_cast<unsigned char>(u[p + 1]))) {
                    cur = u.substr(0, p) + u.substr(p + 2);
                    cancelled = true;
                    break;
                }
            }
            if (cancelled) break;
            if (u < best) best = u;
            for (std::size_t p = 0; p + 1 < u.size(); ++p) {
                int ga = static_cast<unsigned char>(u[p]) / 2;
                int gb = static_cast<unsigned char>(u[p + 1]) / 2;
                if (ga == gb || !g.has_edge(ga, gb)) continue;
                std::string v = u;
                std::swap(v[p], v[p + 1]);
                if (seen.insert(v).second) queue.push_back(v);
            }
        }
        if (!cancelled) return decode_word(best);
    }
}

bool is_trivial(const Word& w, const Graph& g) { return normal_form(w, g).empty(); }

namespace {

void enumerate_rec(int m, int len, bool freely_reduced, Word& prefix,
                   const std::function<void(const Word&)>& fn) {
    if (static_cast<int>(prefix.size()) == len) {
        fn(prefix);
        return;
    }
    for (int rank = 0; rank < 2 * m; ++rank) {
        Letter l{rank / 2, (rank % 2) ? -1 : 1};
        if (freely_reduced && !prefix.empty()) {
            const Letter& last = prefix.back();
            if (last.gen == l.gen && last.sign == -l.sign) continue;
        }
        prefix.push_back(l);
        enumerate_rec(m, len, freely_reduced, prefix, fn);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Word> words_of_length(int m, int len, bool freely_reduced) {
    std::vector<Word> out;
    Word prefix;
    enumerate_rec(m, len, freely_reduced, prefix, [&](const Word& w) { out.push_back(w); });
    return out;
}

void for_each_word(int m, int max_len, bool freely_reduced,
                   const std::function<void(const Word&)>& fn) {
    for (int len = 0; len <= max_len; ++len) {
        Word prefix;
        enumerate_rec(m, len, freely_reduced, prefix, fn);
    }
}

std::uint64_t count_words(int m, int max_len, bool freely_reduced) {
    std::uint64_t total = 0;
    for_each_word(m, max_len, freely_reduced, [&](const Word&) { ++total; });
    return total;
}

}  // namespace nvemb
