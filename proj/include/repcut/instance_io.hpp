#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "repcut/reductions.hpp"
#include "repcut/variants.hpp"

namespace repcut {

// Line-oriented text formats. Every document starts with a versioned header
// line; blank lines and lines starting with '#' are ignored; tokens are
// separated by whitespace, so node names may not contain any. Sets, set
// indices and edge numbers are 1-based in files.
//
//   repcut-instance v1          repcut-solution v1
//   variant fixed-to-single     variant fixed-to-single
//   nodes s a b c               weight 1
//   edge s a 1                  cut 2
//   edge s b 1                  rep 1 b          (t_1)
//   set a b                     rep 2 b
//   set b c                     pair 1 2 a       (t_1^2, pair variants)
//   fixed-node s
//   meta name hitting-star      (free-form, order kept)
//
//   repcut-hitting-set v1       repcut-steiner v1
//   ground a b c                nodes a b c
//   set a b                     edge a b 1
//                               group a b c

enum class DocumentKind { Instance, Solution, HittingSet, Steiner };

/// Kind named by the first non-comment line; ParseError if unrecognized.
DocumentKind detect_document(std::string_view text);

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct InstanceDocument {
  VariantInstance instance;
  Metadata metadata;
};

/// ParseError (with the line number) on malformed text or unknown keys;
/// structural problems of the instance itself are reported the same way.
InstanceDocument parse_instance(std::string_view text);
std::string emit_instance(const VariantInstance& inst, const Metadata& metadata = {});

/// The solution is completed (weight, components, certificate) but not
/// judged; a stated weight that disagrees with the cut is kept as written so
/// validation can reject it.
CutSolution parse_solution(std::string_view text, const VariantInstance& inst);
std::string emit_solution(const VariantInstance& inst, const CutSolution& sol);

HittingSetInstance parse_hitting_set(std::string_view text);
std::string emit_hitting_set(const HittingSetInstance& h);

SteinerMulticutInstance parse_steiner(std::string_view text);
std::string emit_steiner(const SteinerMulticutInstance& sm);

/// Structural equality: variant, node names, edges in order, sets, fixed node.
bool same_instance(const VariantInstance& a, const VariantInstance& b);

/// Shortest text that parses back to exactly w.
std::string format_weight(double w);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace repcut
