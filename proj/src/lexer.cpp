#include "hplp/lexer.hpp"

#include <cctype>

#include "hplp/error.hpp"

namespace hplp {

const char* to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Atom: return "ATOM";
        case TokenKind::Var: return "VAR";
        case TokenKind::Integer: return "INT";
        case TokenKind::Real: return "REAL";
        case TokenKind::Rational: return "RAT";
        case TokenKind::LParen: return "LPAREN";
        case TokenKind::RParen: return "RPAREN";
        case TokenKind::LBracket: return "LBRACKET";
        case TokenKind::RBracket: return "RBRACKET";
        case TokenKind::Comma: return "COMMA";
        case TokenKind::Dot: return "DOT";
        case TokenKind::DoubleColon: return "OPDOUBLECOLON";
        case TokenKind::Colon: return "COLON";
        case TokenKind::Neck: return "NECK";
        case TokenKind::Naf: return "NAF";
        case TokenKind::Less: return "LT";
        case TokenKind::Greater: return "GT";
        case TokenKind::LessEq: return "LE";
        case TokenKind::GreaterEq: return "GE";
        case TokenKind::ArithEq: return "ARITHEQ";
        case TokenKind::Plus: return "PLUS";
        case TokenKind::Minus: return "MINUS";
        case TokenKind::Star: return "STAR";
        case TokenKind::Slash: return "SLASH";
        case TokenKind::Cut: return "CUT";
        case TokenKind::UnsupportedOp: return "UNSUPPORTED_OP";
    }
    return "?";
}

namespace {

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_blanks();
            if (pos_ >= text_.size()) break;
            out.push_back(next());
        }
        return out;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(ErrorKind::Lexical, message, line_, col_);
    }

    void skip_blanks() {
        while (pos_ < text_.size()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '%') {
                while (pos_ < text_.size() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                int line = line_, col = col_;
                advance();
                advance();
                while (pos_ < text_.size() && !(peek() == '*' && peek(1) == '/')) advance();
                if (pos_ >= text_.size()) throw ParseError(ErrorKind::Lexical, "unterminated block comment", line, col);
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
    static bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

    Token make(TokenKind kind, std::size_t begin, int line, int col) const {
        Token t{kind, std::string(text_.substr(begin, pos_ - begin)), Span{begin, pos_, line, col}};
        return t;
    }

    Token next() {
        std::size_t begin = pos_;
        int line = line_, col = col_;
        char c = peek();

        if (std::islower(static_cast<unsigned char>(c))) {
            while (ident_char(peek())) advance();
            return make(TokenKind::Atom, begin, line, col);
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            while (ident_char(peek())) advance();
            return make(TokenKind::Var, begin, line, col);
        }
        if (digit(c)) return number(begin, line, col);
        if (c == '\'') return quoted(begin, line, col);

        auto op = [&](TokenKind kind, std::size_t len) {
            for (std::size_t i = 0; i < len; ++i) advance();
            return make(kind, begin, line, col);
        };
        auto starts = [&](std::string_view s) { return text_.substr(pos_, s.size()) == s; };

        if (starts(":-")) return op(TokenKind::Neck, 2);
        if (starts("::")) return op(TokenKind::DoubleColon, 2);
        if (starts("=:=")) return op(TokenKind::ArithEq, 3);
        if (starts("=\\=")) return op(TokenKind::UnsupportedOp, 3);
        if (starts("\\==")) return op(TokenKind::UnsupportedOp, 3);
        if (starts("\\+")) return op(TokenKind::Naf, 2);
        if (starts("\\=")) return op(TokenKind::UnsupportedOp, 2);
        if (starts("==")) return op(TokenKind::UnsupportedOp, 2);
        if (starts("=<")) return op(TokenKind::LessEq, 2);
        if (starts(">=")) return op(TokenKind::GreaterEq, 2);
        if (starts("<=")) return op(TokenKind::UnsupportedOp, 2);
        if (starts("@<") || starts("@>")) return op(TokenKind::UnsupportedOp, 2);
        switch (c) {
            case '(': return op(TokenKind::LParen, 1);
            case ')': return op(TokenKind::RParen, 1);
            case '[': return op(TokenKind::LBracket, 1);
            case ']': return op(TokenKind::RBracket, 1);
            case ',': return op(TokenKind::Comma, 1);
            case '.': return op(TokenKind::Dot, 1);
            case ':': return op(TokenKind::Colon, 1);
            case '<': return op(TokenKind::Less, 1);
            case '>': return op(TokenKind::Greater, 1);
            case '=': return op(TokenKind::UnsupportedOp, 1);
            case '+': return op(TokenKind::Plus, 1);
            case '-': return op(TokenKind::Minus, 1);
            case '*': return op(TokenKind::Star, 1);
            case '/': return op(TokenKind::Slash, 1);
            case '!': return op(TokenKind::Cut, 1);
            default: break;
        }
        if (static_cast<unsigned char>(c) >= 0x80) fail("illegal non-ASCII character outside a comment");
        fail(std::string("illegal character '") + c + "'");
    }

    Token number(std::size_t begin, int line, int col) {
        while (digit(peek())) advance();
        bool real = false;
        if (peek() == '.' && digit(peek(1))) {
            real = true;
            advance();
            while (digit(peek())) advance();
        } else if (peek() == '/' && digit(peek(1))) {
            advance();
            while (digit(peek())) advance();
            return make(TokenKind::Rational, begin, line, col);
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (digit(peek(1)) || ((peek(1) == '-' || peek(1) == '+') && digit(peek(2))))) {
            real = true;
            advance();
            if (peek() == '-' || peek() == '+') advance();
            while (digit(peek())) advance();
        }
        return make(real ? TokenKind::Real : TokenKind::Integer, begin, line, col);
    }

    Token quoted(std::size_t begin, int line, int col) {
        advance();
        std::string value;
        while (true) {
            if (pos_ >= text_.size() || peek() == '\n')
                throw ParseError(ErrorKind::Lexical, "unterminated quoted atom", line, col);
            if (peek() == '\'') {
                if (peek(1) == '\'') {
                    value += '\'';
                    advance();
                    advance();
                    continue;
                }
                advance();
                break;
            }
            value += peek();
            advance();
        }
        Token t = make(TokenKind::Atom, begin, line, col);
        t.text = value;
        return t;
    }
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace hplp
