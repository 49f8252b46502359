#include "probcf/lexer.hpp"

#include <cctype>
#include <unordered_map>

#include "probcf/errors.hpp"

namespace probcf {

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::IntLit: return "integer literal";
    case TokenKind::FloatLit: return "float literal";
    case TokenKind::KwBool: return "'bool'";
    case TokenKind::KwInt: return "'int'";
    case TokenKind::KwDouble: return "'double'";
    case TokenKind::KwIf: return "'if'";
    case TokenKind::KwElse: return "'else'";
    case TokenKind::KwIfp: return "'ifp'";
    case TokenKind::KwThen: return "'then'";
    case TokenKind::KwWhile: return "'while'";
    case TokenKind::KwSkip: return "'skip'";
    case TokenKind::KwObserve: return "'observe'";
    case TokenKind::KwWeight: return "'weight'";
    case TokenKind::KwReturn: return "'return'";
    case TokenKind::KwTrue: return "'true'";
    case TokenKind::KwFalse: return "'false'";
    case TokenKind::KwInd: return "'ind'";
    case TokenKind::Assign: return "':='";
    case TokenKind::Equal: return "'='";
    case TokenKind::NotEqual: return "'!='";
    case TokenKind::Less: return "'<'";
    case TokenKind::LessEq: return "'<='";
    case TokenKind::Greater: return "'>'";
    case TokenKind::GreaterEq: return "'>='";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Bang: return "'!'";
    case TokenKind::AndAnd: return "'&&'";
    case TokenKind::OrOr: return "'||'";
    case TokenKind::Tilde: return "'~'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semi: return "';'";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

namespace {

const std::unordered_map<std::string_view, TokenKind>& keywords() {
  static const std::unordered_map<std::string_view, TokenKind> table = {
      {"bool", TokenKind::KwBool},       {"int", TokenKind::KwInt},
      {"double", TokenKind::KwDouble},   {"if", TokenKind::KwIf},
      {"else", TokenKind::KwElse},       {"ifp", TokenKind::KwIfp},
      {"then", TokenKind::KwThen},       {"while", TokenKind::KwWhile},
      {"skip", TokenKind::KwSkip},       {"observe", TokenKind::KwObserve},
      {"obs", TokenKind::KwObserve},     {"weight", TokenKind::KwWeight},
      {"return", TokenKind::KwReturn},   {"true", TokenKind::KwTrue},
      {"false", TokenKind::KwFalse},     {"ind", TokenKind::KwInd},
  };
  return table;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      SourcePos pos{line_, col_};
      if (at_end()) {
        out.push_back(Token{TokenKind::End, "", pos});
        return out;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back(identifier(pos));
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        out.push_back(number(pos));
      } else {
        out.push_back(symbol(pos));
      }
    }
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }

  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      char c = peek();
      if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  Token identifier(SourcePos pos) {
    std::string text;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) text += advance();
    auto it = keywords().find(text);
    return Token{it == keywords().end() ? TokenKind::Ident : it->second, std::move(text), pos};
  }

  Token number(SourcePos pos) {
    std::string text;
    bool is_float = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
    if (peek() == '.') {
      is_float = true;
      text += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = i_;
      int save_line = line_, save_col = col_;
      std::string exp;
      exp += advance();
      if (peek() == '+' || peek() == '-') exp += advance();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        while (std::isdigit(static_cast<unsigned char>(peek()))) exp += advance();
        text += exp;
        is_float = true;
      } else {
        i_ = save;
        line_ = save_line;
        col_ = save_col;
      }
    }
    return Token{is_float ? TokenKind::FloatLit : TokenKind::IntLit, std::move(text), pos};
  }

  Token symbol(SourcePos pos) {
    char c = advance();
    auto two = [&](char next, TokenKind k2, TokenKind k1, std::string t2, std::string t1) {
      if (peek() == next) {
        advance();
        return Token{k2, std::move(t2), pos};
      }
      return Token{k1, std::move(t1), pos};
    };
    switch (c) {
      case ':':
        if (peek() == '=') {
          advance();
          return Token{TokenKind::Assign, ":=", pos};
        }
        break;
      case '=':
        return two('=', TokenKind::Equal, TokenKind::Equal, "==", "=");
      case '!':
        return two('=', TokenKind::NotEqual, TokenKind::Bang, "!=", "!");
      case '<':
        return two('=', TokenKind::LessEq, TokenKind::Less, "<=", "<");
      case '>':
        return two('=', TokenKind::GreaterEq, TokenKind::Greater, ">=", ">");
      case '&':
        if (peek() == '&') {
          advance();
          return Token{TokenKind::AndAnd, "&&", pos};
        }
        break;
      case '|':
        if (peek() == '|') {
          advance();
          return Token{TokenKind::OrOr, "||", pos};
        }
        break;
      case '+': return Token{TokenKind::Plus, "+", pos};
      case '-': return Token{TokenKind::Minus, "-", pos};
      case '*': return Token{TokenKind::Star, "*", pos};
      case '/': return Token{TokenKind::Slash, "/", pos};
      case '~': return Token{TokenKind::Tilde, "~", pos};
      case '(': return Token{TokenKind::LParen, "(", pos};
      case ')': return Token{TokenKind::RParen, ")", pos};
      case '{': return Token{TokenKind::LBrace, "{", pos};
      case '}': return Token{TokenKind::RBrace, "}", pos};
      case ',': return Token{TokenKind::Comma, ",", pos};
      case ';': return Token{TokenKind::Semi, ";", pos};
      default:
        break;
    }
    throw LexError(std::string("illegal character '") + c + "'", pos);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace probcf
