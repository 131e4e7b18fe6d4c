#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "../var.hpp"

namespace orbital::detail {

// Minimal scanner shared by the small text formats (transforms, tuples, tables).
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    return text_.substr(pos_, w.size()) == w;
  }

  bool consume(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  bool consume_word(std::string_view w) {
    if (!peek_word(w)) return false;
    pos_ += w.size();
    return true;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  void expect_word(std::string_view w) {
    if (!consume_word(w)) fail("expected '" + std::string(w) + "'");
  }

  // Atom or variable token: letters, digits, '_', '-', '.', '\'' (no separators).
  std::string token() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.') {
        ++pos_;
      } else if (c == '-' && (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '>')) {
        ++pos_;
      } else {
        break;
      }
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  Var var() {
    std::size_t at = (skip_ws(), pos_);
    std::string t = token();
    try {
      return parse_var(t);
    } catch (const Error&) {
      pos_ = at;
      fail("expected a variable x<digits>");
    }
  }

  void finish() {
    if (!at_end()) fail("unexpected trailing input");
  }

  std::size_t position() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace orbital::detail
