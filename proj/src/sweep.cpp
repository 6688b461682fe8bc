#include "nvemb/sweep.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nvemb {

bool operator==(const SweepReport& a, const SweepReport& b) {
    auto key = [](const SweepCounterexample& c) {
        return std::make_tuple(c.word.size(), word_rank_string(c.word), c.oracle_trivial,
                               c.element_identity);
    };
    if (a.words != b.words || a.trivial_words != b.trivial_words ||
        a.nontrivial_words != b.nontrivial_words || a.max_pieces != b.max_pieces ||
        a.ceiling_hit != b.ceiling_hit || a.counterexamples.size() != b.counterexamples.size())
        return false;
    for (std::size_t i = 0; i < a.counterexamples.size(); ++i)
        if (key(a.counterexamples[i]) != key(b.counterexamples[i])) return false;
    return true;
}

namespace {

struct SweepTask {
    Word prefix;
    Element elem;
};

struct SweepState {
    const GeneratorMap* gm = nullptr;
    const SweepOptions* opts = nullptr;
    int letter_count = 0;
};

void visit(const SweepState& st, const Word& w, const Element& elem, SweepReport& rep) {
    ++rep.words;
    bool oracle_trivial = is_trivial(w, st.gm->graph);
    bool elem_identity = is_identity(elem);
    if (oracle_trivial)
        ++rep.trivial_words;
    else
        ++rep.nontrivial_words;
    if (oracle_trivial != elem_identity)
        rep.counterexamples.push_back({w, oracle_trivial, elem_identity});
}

// Expands the children of (prefix, elem); `sink` collects frontier tasks when
// non-null (parallel fork depth), otherwise recursion continues in place.
void expand(const SweepState& st, Word& prefix, const Element& elem, SweepReport& rep,
            std::vector<SweepTask>* sink) {
    if (static_cast<int>(prefix.size()) >= st.opts->max_len) return;
    if (sink && static_cast<int>(prefix.size()) >= st.opts->split_len) {
        sink->push_back({prefix, elem});
        return;
    }
    for (int rank = 0; rank < 2 * st.letter_count; ++rank) {
        Letter letter{rank / 2, (rank % 2) ? -1 : 1};
        if (st.opts->freely_reduced_only && !prefix.empty()) {
            const Letter& last = prefix.back();
            if (last.gen == letter.gen && last.sign == -letter.sign) continue;
        }
        const Element& gen = st.gm->generators[static_cast<std::size_t>(letter.gen)];
        Element next = letter.sign > 0 ? compose(elem, gen) : compose(elem, inverse(gen));
        rep.max_pieces = std::max<std::uint64_t>(rep.max_pieces, next.pieces.size());
        if (next.pieces.size() > st.opts->piece_ceiling) {
            rep.ceiling_hit = true;  // prune: nothing below is evaluable
            continue;
        }
        next = reduce(next);
        prefix.push_back(letter);
        visit(st, prefix, next, rep);
        expand(st, prefix, next, rep, sink);
        prefix.pop_back();
    }
}

void merge(SweepReport& rep, const SweepReport& part) {
    rep.words += part.words;
    rep.trivial_words += part.trivial_words;
    rep.nontrivial_words += part.nontrivial_words;
    rep.max_pieces = std::max(rep.max_pieces, part.max_pieces);
    rep.ceiling_hit = rep.ceiling_hit || part.ceiling_hit;
    rep.counterexamples.insert(rep.counterexamples.end(), part.counterexamples.begin(),
                               part.counterexamples.end());
}

}  // namespace

std::string word_rank_string(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (const auto& l : w)
        s.push_back(static_cast<char>(static_cast<unsigned char>(2 * l.gen + (l.sign < 0))));
    return s;
}

SweepReport bounded_faithfulness_check(const GeneratorMap& gm, const SweepOptions& opts) {
    if (opts.max_len < 0)
        throw std::invalid_argument("bounded_faithfulness_check: negative max length");
    SweepState st{&gm, &opts, static_cast<int>(gm.generators.size())};
    SweepReport rep;
    Word prefix;
    Element id = identity(gm.dim);
    visit(st, prefix, id, rep);

    std::vector<SweepTask> tasks;
    bool parallel = opts.mode == ExecMode::Parallel && opts.split_len < opts.max_len;
    expand(st, prefix, id, rep, parallel ? &tasks : nullptr);

    if (parallel) {
        std::vector<SweepReport> parts(tasks.size());
        std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            try {
                Word local = tasks[i].prefix;
                expand(st, local, tasks[i].elem, parts[i], nullptr);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        for (const auto& part : parts) merge(rep, part);
    }

    std::sort(rep.counterexamples.begin(), rep.counterexamples.end(),
              [](const SweepCounterexample& a, const SweepCounterexample& b) {
                  if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
                  return word_rank_string(a.word) < word_rank_string(b.word);
              });
    return rep;
}

namespace {

Point grid_point(std::uint64_t index, int dim, int depth) {
    Point p(static_cast<std::size_t>(dim));
    for (int d = dim - 1; d >= 0; --d) {
        std::uint64_t coord = index & ((std::uint64_t{1} << depth) - 1);
        index >>= depth;
        p[static_cast<std::size_t>(d)] = Dyadic(BigInt(coord), depth);
    }
    return p;
}

}  // namespace

GridCheckResult check_composition_pointwise(const Element& f, const Element& g,
                                            const Element& fg, int depth, ExecMode mode) {
    if (depth < 0 || depth * f.dim > 62)
        throw std::invalid_argument("check_composition_pointwise: grid too fine");
    const std::uint64_t total = std::uint64_t{1} << (depth * f.dim);
    GridCheckResult result;
    result.points = total;
    std::uint64_t first_bad = total;
    std::uint64_t mismatches = 0;

    auto body = [&](std::uint64_t i, std::uint64_t& local_first, std::uint64_t& local_count) {
        Point p = grid_point(i, f.dim, depth);
        if (apply(fg, p) != apply(g, apply(f, p))) {
            ++local_count;
            local_first = std::min(local_first, i);
        }
    };

    if (mode == ExecMode::Parallel) {
        std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel
#endif
        {
            std::uint64_t local_first = total, local_count = 0;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
                try {
                    body(static_cast<std::uint64_t>(i), local_first, local_count);
                } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                    if (!error) error = std::current_exception();
                }
            }
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                mismatches += local_count;
                first_bad = std::min(first_bad, local_first);
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (std::uint64_t i = 0; i < total; ++i) body(i, first_bad, mismatches);
    }

    result.mismatches = mismatches;
    if (first_bad < total)
        result.first_witness = point_to_string(grid_point(first_bad, f.dim, depth));
    return result;
}

}  // namespace nvemb
