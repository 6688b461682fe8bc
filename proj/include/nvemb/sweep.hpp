#pragma once

// Bulk verification kernels: the bounded-word faithfulness sweep and the
// grid composition check.  Both come in a serial reference flavor and an
// OpenMP flavor over independent work items; the two produce identical
// reports (counterexamples are merged in a canonical order).

#include "nvemb/embedding.hpp"
#include "nvemb/raag.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nvemb {

enum class ExecMode { Serial, Parallel };

struct SweepOptions {
    int max_len = 4;
    bool freely_reduced_only = true;
    std::uint64_t piece_ceiling = kDefaultPieceCeiling;
    ExecMode mode = ExecMode::Serial;
    int split_len = 2;  // prefix depth at which parallel tasks fork
};

struct SweepCounterexample {
    Word word;
    bool oracle_trivial;     // the word is trivial in the group
    bool element_identity;   // its evaluation is the identity element
};

struct SweepReport {
    std::uint64_t words = 0;  // includes the empty word
    std::uint64_t trivial_words = 0;
    std::uint64_t nontrivial_words = 0;
    std::uint64_t max_pieces = 1;  // peak composition size before reduction
    bool ceiling_hit = false;
    std::vector<SweepCounterexample> counterexamples;

    bool ok() const { return counterexamples.empty() && !ceiling_hit; }
};

bool operator==(const SweepReport& a, const SweepReport& b);

// Letter-rank encoding of a word; lexicographic order on these strings is the
// canonical letter order used for sorting and reporting.
std::string word_rank_string(const Word& w);

// Enumerates words over gm's generators up to max_len letters, evaluates each
// incrementally along the prefix tree, and cross-checks element triviality
// against the independent word-problem oracle: the evaluation must be the
// identity exactly when the normal form is empty.  Subtrees past a ceiling
// violation are pruned and reported.
SweepReport bounded_faithfulness_check(const GeneratorMap& gm, const SweepOptions& opts);

struct GridCheckResult {
    std::uint64_t points = 0;
    std::uint64_t mismatches = 0;
    std::string first_witness;

    bool ok() const { return mismatches == 0; }
};

// Checks apply(fg, p) == apply(g, apply(f, p)) for every point of the
// depth-`depth` grid (coordinates j * 2^-depth); fg should be compose(f, g).
GridCheckResult check_composition_pointwise(const Element& f, const Element& g,
                                            const Element& fg, int depth, ExecMode mode);

}  // namespace nvemb
