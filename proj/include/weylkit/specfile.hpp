#ifndef WEYLKIT_SPECFILE_HPP
#define WEYLKIT_SPECFILE_HPP

#include <variant>

#include "weylkit/constructs.hpp"

namespace weylkit {

// Parse error with position; what() is "path:line:col: message".
struct SpecParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using LoadedSpec = std::variant<MetricSpec, EmbeddingSpec>;

// Sectioned plain-text format:
//   [meta]      name = ..., dim = N, signature = n_plus n_minus
//   [coords]    whitespace-separated identifiers
//   [params]    key = value
//   [metric]    g i j = <expression>   (omitted entries are 0; symmetric closure)
//   [embedding] X mu = <expression>    (flat diagonal ambient, minus signs first)
//   [ranges]    i = lo hi              (optional per-coordinate sample ranges)
// A file contains either a [metric] or an [embedding] section.
LoadedSpec load_spec(const std::string& path);
LoadedSpec parse_spec_text(const std::string& text, const std::string& path_label);

}  // namespace weylkit

#endif
