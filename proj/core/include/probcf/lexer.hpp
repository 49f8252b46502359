#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "probcf/ast.hpp"

namespace probcf {

enum class TokenKind {
  Ident,
  IntLit,
  FloatLit,
  // keywords
  KwBool,
  KwInt,
  KwDouble,
  KwIf,
  KwElse,
  KwIfp,
  KwThen,
  KwWhile,
  KwSkip,
  KwObserve,
  KwWeight,
  KwReturn,
  KwTrue,
  KwFalse,
  KwInd,
  // punctuation and operators
  Assign,  // :=
  Equal,   // = or ==
  NotEqual,
  Less,
  LessEq,
  Greater,
  GreaterEq,
  Plus,
  Minus,
  Star,
  Slash,
  Bang,
  AndAnd,
  OrOr,
  Tilde,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Semi,
  End,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  SourcePos pos;
};

/// Splits Prob source into tokens. The final token is always End.
/// Throws LexError on an illegal character.
std::vector<Token> tokenize(std::string_view source);

}  // namespace probcf
