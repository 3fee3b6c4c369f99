// JSON and DSL front ends for attack trees.
#include "atag/tree_io.hpp"

#include <cstddef>
#include <utility>

#include <json.hpp>

#include "atag/errors.hpp"

namespace atag {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kMaxNestingDepth = 10'000;

std::pair<int, int> position_of_offset(const std::string& text,
                                       std::size_t offset) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// nlohmann does not expose element positions, so schema errors anchor at 1:1
// and carry a JSON-pointer locus in the message instead.
[[noreturn]] void fail_schema(const std::string& where,
                              const std::string& what) {
  throw ParseError(1, 1,
                   (where.empty() ? "at document root" : "at " + where) + ": " +
                       what);
}

AttackTree tree_from_json(const ordered_json& value, const std::string& where,
                          int depth) {
  if (depth > kMaxNestingDepth) fail_schema(where, "nesting too deep");
  if (!value.is_object()) fail_schema(where, "expected an object");
  for (auto it = value.begin(); it != value.end(); ++it) {
    if (it.key() != "action" && it.key() != "operator" &&
        it.key() != "children") {
      fail_schema(where, "unexpected key \"" + it.key() + "\"");
    }
  }
  if (!value.contains("action")) fail_schema(where, "missing \"action\"");
  if (!value["action"].is_string()) {
    fail_schema(where + "/action", "expected a string");
  }
  ActionLabel action = value["action"].get<std::string>();

  const bool has_operator = value.contains("operator");
  const bool has_children = value.contains("children");
  if (!has_operator && !has_children) return leaf(std::move(action));
  if (!has_operator) fail_schema(where, "missing \"operator\"");
  if (!has_children) fail_schema(where, "missing \"children\"");

  if (!value["operator"].is_string()) {
    fail_schema(where + "/operator", "expected a string");
  }
  const std::string op_text = value["operator"].get<std::string>();
  std::optional<Operator> op = operator_from_string(op_text);
  if (!op.has_value()) {
    fail_schema(where + "/operator", "unknown operator \"" + op_text + "\"");
  }
  if (!value["children"].is_array()) {
    fail_schema(where + "/children", "expected an array");
  }
  std::vector<AttackTree> children;
  children.reserve(value["children"].size());
  std::size_t index = 0;
  for (const ordered_json& child : value["children"]) {
    children.push_back(tree_from_json(
        child, where + "/children/" + std::to_string(index), depth + 1));
    ++index;
  }
  return node(std::move(action), *op, std::move(children));
}

void require_valid(const AttackTree& tree) {
  ValidationReport report = validate_tree(tree);
  if (!report.ok) throw ValidationError(std::move(report));
}

struct Token {
  enum class Kind { Ident, Str, Arrow, LParen, RParen, Comma, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

bool is_ident_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_';
}

class DslLexer {
 public:
  explicit DslLexer(const std::string& text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\r' || text_[pos_] == '\n')) {
      advance();
    }
    const int line = line_;
    const int column = column_;
    if (pos_ >= text_.size()) return {Token::Kind::End, "", line, column};
    const char c = text_[pos_];
    if (c == '(') {
      advance();
      return {Token::Kind::LParen, "(", line, column};
    }
    if (c == ')') {
      advance();
      return {Token::Kind::RParen, ")", line, column};
    }
    if (c == ',') {
      advance();
      return {Token::Kind::Comma, ",", line, column};
    }
    if (c == '<') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        advance();
        advance();
        return {Token::Kind::Arrow, "<-", line, column};
      }
      throw ParseError(line, column, "expected \"<-\"");
    }
    if (c == '"') return lex_string(line, column);
    if (is_ident_char(c)) {
      std::string text;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
        text += text_[pos_];
        advance();
      }
      return {Token::Kind::Ident, std::move(text), line, column};
    }
    throw ParseError(line, column,
                     std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  Token lex_string(int line, int column) {
    advance();  // opening quote
    std::string text;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw ParseError(line, column, "unterminated string literal");
      }
      const char c = text_[pos_];
      if (c == '"') {
        advance();
        return {Token::Kind::Str, std::move(text), line, column};
      }
      if (c == '\\') {
        const int esc_line = line_;
        const int esc_column = column_;
        advance();
        if (pos_ >= text_.size() ||
            (text_[pos_] != '"' && text_[pos_] != '\\')) {
          throw ParseError(esc_line, esc_column, "invalid escape sequence");
        }
      }
      text += text_[pos_];
      advance();
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class DslParser {
 public:
  explicit DslParser(const std::string& text) : lexer_(text) { bump(); }

  AttackTree parse() {
    AttackTree tree = parse_tree(0);
    if (current_.kind != Token::Kind::End) {
      throw ParseError(current_.line, current_.column,
                       "unexpected trailing input");
    }
    return tree;
  }

 private:
  void bump() { current_ = lexer_.next(); }

  AttackTree parse_tree(int depth) {
    if (depth > kMaxNestingDepth) {
      throw ParseError(current_.line, current_.column, "nesting too deep");
    }
    if (current_.kind != Token::Kind::Ident &&
        current_.kind != Token::Kind::Str) {
      throw ParseError(current_.line, current_.column,
                       "expected action label");
    }
    ActionLabel label = current_.text;
    bump();
    if (current_.kind != Token::Kind::Arrow) return leaf(std::move(label));
    bump();
    if (current_.kind != Token::Kind::Ident) {
      throw ParseError(current_.line, current_.column, "expected operator");
    }
    std::optional<Operator> op = operator_from_string(current_.text);
    if (!op.has_value()) {
      throw ParseError(current_.line, current_.column,
                       "unknown operator \"" + current_.text + "\"");
    }
    bump();
    if (current_.kind != Token::Kind::LParen) {
      throw ParseError(current_.line, current_.column, "expected '('");
    }
    bump();
    std::vector<AttackTree> children;
    children.push_back(parse_tree(depth + 1));
    while (current_.kind == Token::Kind::Comma) {
      bump();
      children.push_back(parse_tree(depth + 1));
    }
    if (current_.kind != Token::Kind::RParen) {
      throw ParseError(current_.line, current_.column, "expected ')'");
    }
    bump();
    return node(std::move(label), *op, std::move(children));
  }

  DslLexer lexer_;
  Token current_;
};

ordered_json tree_to_json(const AttackTree& tree) {
  ordered_json value;
  value["action"] = tree.action;
  if (!tree.is_leaf()) {
    value["operator"] = to_string(*tree.op);
    ordered_json children = ordered_json::array();
    for (const AttackTree& child : tree.children) {
      children.push_back(tree_to_json(child));
    }
    value["children"] = std::move(children);
  }
  return value;
}

std::string dsl_quote(const ActionLabel& label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void write_dsl(const AttackTree& tree, std::string& out) {
  out += dsl_quote(tree.action);
  if (tree.is_leaf()) return;
  out += " <- ";
  out += to_string(*tree.op);
  out += "(";
  const char* sep = "";
  for (const AttackTree& child : tree.children) {
    out += sep;
    write_dsl(child, out);
    sep = ", ";
  }
  out += ")";
}

}  // namespace

TreeDocument parse_tree_json(const std::string& text) {
  ordered_json document;
  try {
    document = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& error) {
    auto [line, column] = position_of_offset(
        text, error.byte > 0 ? static_cast<std::size_t>(error.byte) - 1 : 0);
    throw ParseError(line, column, "malformed JSON");
  }
  AttackTree tree = tree_from_json(document, "", 0);
  require_valid(tree);
  return {std::move(tree), TreeFormat::Json};
}

TreeDocument parse_tree_dsl(const std::string& text) {
  AttackTree tree = DslParser(text).parse();
  require_valid(tree);
  return {std::move(tree), TreeFormat::Dsl};
}

std::string serialize_tree(const AttackTree& tree, TreeFormat format) {
  if (format == TreeFormat::Json) return tree_to_json(tree).dump();
  std::string out;
  write_dsl(tree, out);
  return out;
}

}  // namespace atag
