#pragma once

// Text formats.
//
// Endomorphism:
//   rank 2
//   a -> ab
//   b -> ba
//
// TreePoint (label "-" is the empty word; `base` defaults to 0):
//   rank 2
//   vertices 1
//   edge e1 0 0 a 1.0
//   edge e2 0 0 b 2.0
//   marking a -> e1
//   marking b -> e2
//
// '#' starts a comment.  Malformed input throws Errc::Parse with the line
// number in the message.

#include <string>
#include <string_view>

#include "freedyn/dynamics.hpp"
#include "freedyn/word.hpp"

namespace freedyn {

Endomorphism parse_endomorphism(std::string_view text);
std::string format_endomorphism(const Endomorphism& phi);

TreePoint parse_tree_point(std::string_view text);
// Writes the underlying marked graph and lengths; twists are not recorded.
std::string format_tree_point(const TreePoint& t);

// Whole file contents; throws Errc::Parse when it cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace freedyn
