#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace copg {

// Splits a UTF-8 string into individual code points.
std::vector<std::string> utf8_codepoints(const std::string& s);

// Number of code points, used for column alignment of table output.
std::size_t display_width(const std::string& s);

// Input-word tokenizer: whitespace-separated tokens when the string contains
// whitespace, one token per code point otherwise. Multi-character terminals
// therefore require the whitespace form.
std::vector<std::string> tokenize_word(const std::string& s);

std::string join(const std::vector<std::string>& tokens, const std::string& sep);

// Joins tokens without separators when every token is a single code point,
// with spaces otherwise.
std::string join_compact(const std::vector<std::string>& tokens);

}  // namespace copg
