#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ross/error.hpp"

namespace ross {

struct SourcePos {
    int line = 1;
    int column = 1;
};

struct Diagnostic {
    SourcePos pos;
    std::string message;

    /// "file:line:col: message"
    std::string format(const std::string& file) const;
};

struct Token {
    enum class Kind {
        Identifier,
        String,
        Integer,
        Float,
        Punct,      // single-character punctuation
        RangeDots,  // ".."
        End,
    };

    Kind kind = Kind::End;
    std::string lexeme;
    std::int64_t int_value = 0;
    SourcePos pos;

    bool is_punct(char c) const { return kind == Kind::Punct && lexeme.size() == 1 && lexeme[0] == c; }
    bool is_ident(const std::string& s) const { return kind == Kind::Identifier && lexeme == s; }
};

/// Lexes Star source. Comments ("//" to end of line) produce no tokens.
/// Appends a Kind::End sentinel. Lex errors are reported via diagnostics;
/// lexing continues past bad characters.
std::vector<Token> lex(const std::string& source, std::vector<Diagnostic>& diagnostics);

} // namespace ross
