#include "ross/lexer.hpp"

#include <cctype>
#include <limits>

namespace ross {

std::string Diagnostic::format(const std::string& file) const {
    return file + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
           message;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '-';
}

bool is_punct_char(char c) {
    switch (c) {
        case '(': case ')': case '{': case '}': case '<': case '>':
        case '/': case ';': case ',': case ':': case '=': case '*':
        case '+': case '-': case '.':
            return true;
        default:
            return false;
    }
}

} // namespace

std::vector<Token> lex(const std::string& source, std::vector<Diagnostic>& diagnostics) {
    std::vector<Token> tokens;
    SourcePos pos;
    std::size_t i = 0;

    auto advance = [&](char c) {
        if (c == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    };

    while (i < source.size()) {
        char c = source[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(c);
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < source.size() && source[i + 1] == '/') {
            while (i < source.size() && source[i] != '\n') {
                advance(source[i]);
                ++i;
            }
            continue;
        }

        Token tok;
        tok.pos = pos;

        if (ident_start(c)) {
            std::size_t start = i;
            while (i < source.size() && ident_cont(source[i])) {
                // '-' only continues an identifier when followed by another
                // identifier character ("CatObjectFrameClass-Instance1").
                if (source[i] == '-' &&
                    (i + 1 >= source.size() || !ident_cont(source[i + 1]) || source[i + 1] == '-'))
                    break;
                advance(source[i]);
                ++i;
            }
            tok.kind = Token::Kind::Identifier;
            tok.lexeme = source.substr(start, i - start);
            tokens.push_back(std::move(tok));
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            bool is_float = false;
            bool overflow = false;
            std::int64_t value = 0;
            while (i < source.size()) {
                char d = source[i];
                if (std::isdigit(static_cast<unsigned char>(d))) {
                    if (!is_float) {
                        if (value > (std::numeric_limits<std::int64_t>::max() - (d - '0')) / 10)
                            overflow = true;
                        else
                            value = value * 10 + (d - '0');
                    }
                    advance(d);
                    ++i;
                } else if (d == '.' && i + 1 < source.size() &&
                           std::isdigit(static_cast<unsigned char>(source[i + 1]))) {
                    is_float = true;
                    advance(d);
                    ++i;
                } else {
                    break;
                }
            }
            if (overflow) {
                diagnostics.push_back({tok.pos, "integer literal overflows 64 bits"});
                continue;
            }
            tok.kind = is_float ? Token::Kind::Float : Token::Kind::Integer;
            tok.lexeme = source.substr(start, i - start);
            tok.int_value = value;
            tokens.push_back(std::move(tok));
            continue;
        }

        if (c == '"') {
            advance(c);
            ++i;
            std::string text;
            bool closed = false;
            while (i < source.size()) {
                char d = source[i];
                if (d == '"') {
                    advance(d);
                    ++i;
                    closed = true;
                    break;
                }
                if (d == '\n') break;  // strings do not span lines
                text.push_back(d);
                advance(d);
                ++i;
            }
            if (!closed) {
                diagnostics.push_back({tok.pos, "unterminated string literal"});
                continue;
            }
            tok.kind = Token::Kind::String;
            tok.lexeme = std::move(text);
            tokens.push_back(std::move(tok));
            continue;
        }

        if (c == '.' && i + 1 < source.size() && source[i + 1] == '.') {
            tok.kind = Token::Kind::RangeDots;
            tok.lexeme = "..";
            advance('.');
            advance('.');
            i += 2;
            tokens.push_back(std::move(tok));
            continue;
        }

        if (is_punct_char(c)) {
            tok.kind = Token::Kind::Punct;
            tok.lexeme = std::string(1, c);
            advance(c);
            ++i;
            tokens.push_back(std::move(tok));
            continue;
        }

        diagnostics.push_back({pos, std::string("unexpected character '") + c + "'"});
        advance(c);
        ++i;
    }

    Token end;
    end.kind = Token::Kind::End;
    end.pos = pos;
    tokens.push_back(std::move(end));
    return tokens;
}

} // namespace ross
