#pragma once

// File formats: element files, embedding directories (manifest + graph +
// assignment + slices + one element file per generator), and the textual
// certificate / sweep reports.  All writers are deterministic: identical
// inputs give byte-identical outputs.

#include "nvemb/element.hpp"
#include "nvemb/embedding.hpp"
#include "nvemb/raag.hpp"
#include "nvemb/sweep.hpp"

#include <stdexcept>
#include <string>

namespace nvemb {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element format: "nv-element", "dim <n>", "pieces <r>", then r lines of
// n (num depth) pairs for the domain, "->", and n pairs for the range.
// Integers are exact decimals.
std::string write_element_text(const Element& f);
Element parse_element_text(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

void write_element_file(const std::string& path, const Element& f);
Element read_element_file(const std::string& path);

// Writes manifest.txt, graph.txt, gen_<vertex>.elt and, for slice-built
// embeddings, assignment.txt and slices.txt into dir (created if needed).
void write_embedding_dir(const std::string& dir, const GeneratorMap& gm);

// Loads and validates an embedding directory written by write_embedding_dir.
GeneratorMap load_embedding_dir(const std::string& dir);

std::string format_certificate(const PingPongCertificate& cert, const GeneratorMap& gm);

std::string format_sweep_report(const SweepReport& rep, const Graph& g,
                                const SweepOptions& opts);

}  // namespace nvemb
