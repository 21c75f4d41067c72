/**
 * sexpr.hpp — a minimal s-expression reader and printer: atoms and lists,
 * UTF-8 transparent, `;` line comments.  All file formats are defined on
 * top of this surface so print∘parse is the identity on documents.
 */
#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsk::sx {

/// Raised for malformed input (unbalanced parentheses, stray tokens);
/// distinct from semantic CheckError so callers can map it to a different
/// exit code.
struct ParseError : std::runtime_error {
  ParseError(std::size_t line, std::size_t col, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line(line), col(col) {}
  std::size_t line, col;
};

struct Node {
  bool is_atom = true;
  std::string atom;
  std::vector<Node> kids;
  std::size_t line = 0, col = 0;
};

inline Node a(std::string s) { return Node{true, std::move(s), {}, 0, 0}; }
inline Node l(std::vector<Node> kids) { return Node{false, {}, std::move(kids), 0, 0}; }

inline bool eq(const Node& x, const Node& y) {
  if (x.is_atom != y.is_atom) return false;
  if (x.is_atom) return x.atom == y.atom;
  if (x.kids.size() != y.kids.size()) return false;
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (!eq(x.kids[i], y.kids[i])) return false;
  return true;
}

namespace detail {

struct Reader {
  const std::string& text;
  std::size_t pos = 0, line = 1, col = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char next() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_ws() {
    while (!done()) {
      char c = peek();
      if (c == ';') {
        while (!done() && peek() != '\n') next();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        next();
      } else {
        break;
      }
    }
  }
  Node read() {
    skip_ws();
    if (done()) throw ParseError(line, col, "unexpected end of input");
    std::size_t ln = line, cl = col;
    char c = peek();
    if (c == '(') {
      next();
      Node out = l({});
      out.line = ln;
      out.col = cl;
      for (;;) {
        skip_ws();
        if (done()) throw ParseError(ln, cl, "unterminated list");
        if (peek() == ')') {
          next();
          return out;
        }
        out.kids.push_back(read());
      }
    }
    if (c == ')') throw ParseError(line, col, "unexpected ')'");
    std::string tok;
    while (!done()) {
      char d = peek();
      if (d == '(' || d == ')' || d == ';' || d == ' ' || d == '\t' || d == '\n' || d == '\r')
        break;
      tok.push_back(next());
    }
    Node out = a(std::move(tok));
    out.line = ln;
    out.col = cl;
    return out;
  }
};

} // namespace detail

inline std::vector<Node> parse(const std::string& text) {
  detail::Reader r{text};
  std::vector<Node> out;
  for (;;) {
    r.skip_ws();
    if (r.done()) return out;
    out.push_back(r.read());
  }
}

inline void print_into(const Node& n, std::ostringstream& os) {
  if (n.is_atom) {
    os << n.atom;
    return;
  }
  os << '(';
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    if (i) os << ' ';
    print_into(n.kids[i], os);
  }
  os << ')';
}

inline std::string print(const Node& n) {
  std::ostringstream os;
  print_into(n, os);
  return os.str();
}

/// One top-level form per line.
inline std::string print_all(const std::vector<Node>& forms) {
  std::ostringstream os;
  for (const auto& n : forms) {
    print_into(n, os);
    os << '\n';
  }
  return os.str();
}

} // namespace dsk::sx
