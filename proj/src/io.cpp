#include "nvemb/io.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace nvemb {

namespace {

void append_rect(std::string& out, const Rectangle& r) {
    for (std::size_t d = 0; d < r.axes.size(); ++d) {
        if (d) out += " ";
        out += r.axes[d].num.str() + " " + std::to_string(r.axes[d].depth);
    }
}

class TokenReader {
  public:
    explicit TokenReader(const std::string& text) : in_(text) {}

    bool peek(std::string& tok) {
        if (!peeked_) {
            std::string t;
            if (!(in_ >> t)) return false;
            peeked_ = std::move(t);
        }
        tok = *peeked_;
        return true;
    }

    std::string next(const std::string& what) {
        std::string tok;
        if (!peek(tok))
            throw parse_error("unexpected end of input, expected " + what);
        peeked_.reset();
        return tok;
    }

    void expect(const std::string& literal) {
        std::string tok = next("'" + literal + "'");
        if (tok != literal)
            throw parse_error("expected '" + literal + "', found '" + tok + "'");
    }

    int next_int(const std::string& what) {
        std::string tok = next(what);
        try {
            std::size_t pos = 0;
            int value = std::stoi(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            return value;
        } catch (const std::exception&) {
            throw parse_error("expected integer for " + what + ", found '" + tok + "'");
        }
    }

    BigInt next_bigint(const std::string& what) {
        std::string tok = next(what);
        try {
            return BigInt(tok);
        } catch (const std::exception&) {
            throw parse_error("expected integer for " + what + ", found '" + tok + "'");
        }
    }

    bool at_end() {
        std::string tok;
        return !peek(tok);
    }

  private:
    std::istringstream in_;
    std::optional<std::string> peeked_;
};

Rectangle parse_rect(TokenReader& in, int dim) {
    Rectangle r;
    r.axes.reserve(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) {
        BigInt num = in.next_bigint("interval numerator");
        int depth = in.next_int("interval depth");
        try {
            r.axes.emplace_back(num, depth);
        } catch (const std::exception& e) {
            throw parse_error(std::string("bad interval: ") + e.what());
        }
    }
    return r;
}

}  // namespace

std::string write_element_text(const Element& f) {
    std::string out = "nv-element\ndim " + std::to_string(f.dim) + "\npieces " +
                      std::to_string(f.piece_count()) + "\n";
    for (const auto& piece : f.pieces) {
        append_rect(out, piece.domain);
        out += " -> ";
        append_rect(out, piece.range);
        out += "\n";
    }
    return out;
}

Element parse_element_text(const std::string& text) {
    TokenReader in(text);
    in.expect("nv-element");
    in.expect("dim");
    int dim = in.next_int("dimension");
    if (dim < 1) throw parse_error("element dimension must be >= 1");
    in.expect("pieces");
    int pieces = in.next_int("piece count");
    if (pieces < 1) throw parse_error("element must have at least one piece");
    Element f;
    f.dim = dim;
    f.pieces.reserve(static_cast<std::size_t>(pieces));
    for (int i = 0; i < pieces; ++i) {
        Rectangle dom = parse_rect(in, dim);
        in.expect("->");
        Rectangle rng = parse_rect(in, dim);
        f.pieces.push_back({std::move(dom), std::move(rng)});
    }
    std::string extra;
    if (in.peek(extra))
        throw parse_error("trailing data after last piece: '" + extra + "'");
    ElementReport report = validate_element(f);
    if (!report.ok) throw parse_error("invalid element: " + report.message);
    return f;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_element_file(const std::string& path, const Element& f) {
    write_text_file(path, write_element_text(f));
}

Element read_element_file(const std::string& path) {
    try {
        return parse_element_text(read_text_file(path));
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

namespace {

std::string gen_file_name(const std::string& vertex) { return "gen_" + vertex + ".elt"; }

std::string write_assignment_text(const Graph& g, const DAssignment& a) {
    std::string out = "n " + std::to_string(a.n) + "\n";
    for (std::size_t i = 0; i < a.sets.size(); ++i) {
        out += "d " + g.vertices[i];
        for (int k : a.sets[i]) out += " " + std::to_string(k + 1);  // axes 1-based on disk
        out += "\n";
    }
    return out;
}

DAssignment parse_assignment_text(const std::string& text, const Graph& g) {
    TokenReader in(text);
    in.expect("n");
    DAssignment a;
    a.n = in.next_int("dimension");
    a.sets.resize(static_cast<std::size_t>(g.vertex_count()));
    for (int i = 0; i < g.vertex_count(); ++i) {
        in.expect("d");
        std::string name = in.next("vertex name");
        if (name != g.vertices[static_cast<std::size_t>(i)])
            throw parse_error("assignment vertex order mismatch at '" + name + "'");
        auto& set = a.sets[static_cast<std::size_t>(i)];
        // Axes until the next 'd' or end of input.
        std::string tok;
        while (in.peek(tok) && tok != "d") {
            in.next("axis");
            try {
                std::size_t pos = 0;
                int axis = std::stoi(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
                set.push_back(axis - 1);
            } catch (const std::exception&) {
                throw parse_error("bad axis token '" + tok + "' in assignment");
            }
        }
        if (set.empty())
            throw parse_error("empty axis set for vertex '" + name + "' in assignment");
    }
    return a;
}

std::string write_slices_text(const Graph& g, const std::vector<SliceSpec>& slices) {
    std::string out;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        out += "S " + g.vertices[i] + " ";
        append_rect(out, slices[i].S);
        out += "\nS+ " + g.vertices[i] + " ";
        append_rect(out, slices[i].s_plus);
        out += "\nS- " + g.vertices[i] + " ";
        append_rect(out, slices[i].s_minus);
        out += "\n";
    }
    return out;
}

std::vector<SliceSpec> parse_slices_text(const std::string& text, const Graph& g,
                                         const DAssignment& a) {
    TokenReader in(text);
    std::vector<SliceSpec> slices;
    for (int i = 0; i < g.vertex_count(); ++i) {
        SliceSpec spec;
        spec.D = a.sets[static_cast<std::size_t>(i)];
        in.expect("S");
        in.expect(g.vertices[static_cast<std::size_t>(i)]);
        spec.S = parse_rect(in, a.n);
        in.expect("S+");
        in.expect(g.vertices[static_cast<std::size_t>(i)]);
        spec.s_plus = parse_rect(in, a.n);
        in.expect("S-");
        in.expect(g.vertices[static_cast<std::size_t>(i)]);
        spec.s_minus = parse_rect(in, a.n);
        SliceReport report = validate_slice_spec(spec);
        if (!report.ok)
            throw parse_error("invalid slice for vertex '" +
                              g.vertices[static_cast<std::size_t>(i)] + "': " + report.message);
        slices.push_back(std::move(spec));
    }
    if (!in.at_end()) throw parse_error("trailing data in slices file");
    return slices;
}

}  // namespace

void write_embedding_dir(const std::string& dir, const GeneratorMap& gm) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const bool direct = gm.has_slice_data();

    std::string manifest = "nv-embedding\n";
    manifest += "graph graph.txt\n";
    manifest += "dim " + std::to_string(gm.dim) + "\n";
    manifest += std::string("mode ") + (direct ? "direct" : "assembled") + "\n";
    manifest += "generators " + std::to_string(gm.generators.size()) + "\n";
    for (std::size_t i = 0; i < gm.generators.size(); ++i)
        manifest += "gen " + gm.graph.vertices[i] + " " + gen_file_name(gm.graph.vertices[i]) + "\n";
    if (direct) {
        manifest += "assignment assignment.txt\n";
        manifest += "slices slices.txt\n";
        manifest += "x0";
        for (const auto& c : *gm.base_point)
            manifest += " " + c.num.str() + " " + std::to_string(c.exp);
        manifest += "\n";
    }

    write_text_file((fs::path(dir) / "manifest.txt").string(), manifest);
    write_text_file((fs::path(dir) / "graph.txt").string(), write_graph(gm.graph));
    for (std::size_t i = 0; i < gm.generators.size(); ++i)
        write_element_file((fs::path(dir) / gen_file_name(gm.graph.vertices[i])).string(),
                           gm.generators[i]);
    if (direct) {
        write_text_file((fs::path(dir) / "assignment.txt").string(),
                        write_assignment_text(gm.graph, *gm.assignment));
        write_text_file((fs::path(dir) / "slices.txt").string(),
                        write_slices_text(gm.graph, *gm.slices));
    }
}

GeneratorMap load_embedding_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    TokenReader in(read_text_file((fs::path(dir) / "manifest.txt").string()));
    in.expect("nv-embedding");
    in.expect("graph");
    std::string graph_file = in.next("graph file");
    in.expect("dim");
    int dim = in.next_int("dimension");
    in.expect("mode");
    std::string mode = in.next("mode");
    if (mode != "direct" && mode != "assembled")
        throw parse_error("manifest mode must be 'direct' or 'assembled'");
    in.expect("generators");
    int count = in.next_int("generator count");

    GeneratorMap gm;
    gm.dim = dim;
    try {
        gm.graph = parse_graph(read_text_file((fs::path(dir) / graph_file).string()));
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
    }
    if (gm.graph.vertex_count() != count)
        throw parse_error("manifest generator count does not match graph");

    std::vector<std::string> gen_files(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        in.expect("gen");
        std::string name = in.next("vertex name");
        int idx = gm.graph.index_of(name);
        if (idx < 0) throw parse_error("manifest names unknown generator '" + name + "'");
        gen_files[static_cast<std::size_t>(idx)] = in.next("element file");
    }
    for (int i = 0; i < count; ++i) {
        Element f = read_element_file((fs::path(dir) / gen_files[static_cast<std::size_t>(i)]).string());
        if (f.dim != dim)
            throw parse_error("generator dimension does not match manifest");
        gm.generators.push_back(std::move(f));
    }

    if (mode == "direct") {
        in.expect("assignment");
        std::string assignment_file = in.next("assignment file");
        in.expect("slices");
        std::string slices_file = in.next("slices file");
        in.expect("x0");
        Point x0;
        for (int d = 0; d < dim; ++d) {
            BigInt num = in.next_bigint("x0 numerator");
            int exp = in.next_int("x0 exponent");
            try {
                x0.emplace_back(num, exp);
            } catch (const std::exception& e) {
                throw parse_error(std::string("bad x0 coordinate: ") + e.what());
            }
        }
        DAssignment a =
            parse_assignment_text(read_text_file((fs::path(dir) / assignment_file).string()),
                                  gm.graph);
        AssignmentReport report = validate_d_assignment(gm.graph, a);
        if (!report.ok) throw parse_error("invalid assignment: " + report.message);
        if (a.n != dim) throw parse_error("assignment dimension does not match manifest");
        gm.slices = parse_slices_text(read_text_file((fs::path(dir) / slices_file).string()),
                                      gm.graph, a);
        gm.assignment = std::move(a);
        gm.base_point = std::move(x0);
    }
    return gm;
}

std::string format_certificate(const PingPongCertificate& cert, const GeneratorMap& gm) {
    std::string out = "pingpong-certificate\n";
    out += "dim " + std::to_string(gm.dim) + "\n";
    out += "generators " + std::to_string(gm.generators.size()) + "\n";
    out += "x0";
    for (const auto& c : cert.base_point) out += " " + c.to_fraction_string();
    out += "\n";
    auto line = [&out](const std::string& name, const ConditionResult& r) {
        out += name + (r.pass ? " pass" : " fail") + "\n";
        if (!r.pass) out += name + ".witness " + r.witness + "\n";
    };
    line("condition.1", cert.cond1);
    line("condition.2", cert.cond2);
    line("condition.3", cert.cond3);
    line("condition.4", cert.cond4);
    line("remark", cert.remark);
    out += std::string("valid ") + (cert.valid() ? "true" : "false") + "\n";
    return out;
}

std::string format_sweep_report(const SweepReport& rep, const Graph& g,
                                const SweepOptions& opts) {
    std::string out = "bounded-check\n";
    out += "max-length " + std::to_string(opts.max_len) + "\n";
    out += std::string("freely-reduced ") + (opts.freely_reduced_only ? "true" : "false") + "\n";
    out += "words " + std::to_string(rep.words) + "\n";
    out += "trivial " + std::to_string(rep.trivial_words) + "\n";
    out += "nontrivial " + std::to_string(rep.nontrivial_words) + "\n";
    out += "max-pieces " + std::to_string(rep.max_pieces) + "\n";
    out += std::string("ceiling-hit ") + (rep.ceiling_hit ? "true" : "false") + "\n";
    out += "counterexamples " + std::to_string(rep.counterexamples.size()) + "\n";
    for (const auto& c : rep.counterexamples)
        out += std::string("counterexample ") +
               (c.element_identity ? "evaluates-to-identity" : "evaluates-nontrivially") + " " +
               word_to_string(c.word, g) + "\n";
    out += std::string("result ") + (rep.ok() ? "pass" : "fail") + "\n";
    return out;
}

}  // namespace nvemb
