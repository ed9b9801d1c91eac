#include "copg/text_util.hpp"

#include <cctype>
#include <sstream>

namespace copg {

std::vector<std::string> utf8_codepoints(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if ((c & 0x80u) == 0x00u) len = 1;
    else if ((c & 0xE0u) == 0xC0u) len = 2;
    else if ((c & 0xF0u) == 0xE0u) len = 3;
    else if ((c & 0xF8u) == 0xF0u) len = 4;
    if (i + len > s.size()) len = 1;
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

std::size_t display_width(const std::string& s) { return utf8_codepoints(s).size(); }

std::vector<std::string> tokenize_word(const std::string& s) {
  bool has_ws = false;
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c))) { has_ws = true; break; }
  if (!has_ws) {
    auto cps = utf8_codepoints(s);
    return cps;
  }
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string join(const std::vector<std::string>& tokens, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

std::string join_compact(const std::vector<std::string>& tokens) {
  for (const auto& t : tokens)
    if (display_width(t) != 1) return join(tokens, " ");
  return join(tokens, "");
}

}  // namespace copg
