#include "ascurves/parse.hpp"

#include <cctype>
#include <sstream>

namespace ascurves {

namespace {

struct Token {
    enum class Kind { Number, X, T, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::int64_t value = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= text_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        char c = text_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
                v = v * 10 + (text_[i_] - '0');
                if (v > (std::int64_t{1} << 56))
                    throw ParseError("integer literal too large at position " + std::to_string(tok_.pos));
                ++i_;
            }
            tok_.kind = Token::Kind::Number;
            tok_.value = v;
            return;
        }
        ++i_;
        switch (c) {
            case 'x': tok_.kind = Token::Kind::X; return;
            case 't': tok_.kind = Token::Kind::T; return;
            case '+': tok_.kind = Token::Kind::Plus; return;
            case '-': tok_.kind = Token::Kind::Minus; return;
            case '*': tok_.kind = Token::Kind::Star; return;
            case '/': tok_.kind = Token::Kind::Slash; return;
            case '^': tok_.kind = Token::Kind::Caret; return;
            case '(': tok_.kind = Token::Kind::LParen; return;
            case ')': tok_.kind = Token::Kind::RParen; return;
            default:
                throw ParseError(std::string("unexpected character '") + c + "' at position " +
                                 std::to_string(tok_.pos));
        }
    }

    const std::string& text_;
    std::size_t i_ = 0;
    Token tok_;
};

class ExprParser {
public:
    ExprParser(const std::string& text, FieldPtr field) : lex_(text), field_(std::move(field)) {}

    RationalFunction parse() {
        RationalFunction r = expr();
        if (lex_.peek().kind != Token::Kind::End)
            throw ParseError("trailing input at position " + std::to_string(lex_.peek().pos));
        return r;
    }

private:
    RationalFunction expr() {
        bool neg = false;
        while (lex_.peek().kind == Token::Kind::Plus || lex_.peek().kind == Token::Kind::Minus) {
            if (lex_.take().kind == Token::Kind::Minus) neg = !neg;
        }
        RationalFunction acc = term();
        if (neg) acc = -acc;
        while (lex_.peek().kind == Token::Kind::Plus || lex_.peek().kind == Token::Kind::Minus) {
            bool minus = lex_.take().kind == Token::Kind::Minus;
            RationalFunction rhs = term();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    RationalFunction term() {
        RationalFunction acc = factor();
        while (lex_.peek().kind == Token::Kind::Star || lex_.peek().kind == Token::Kind::Slash) {
            bool div = lex_.take().kind == Token::Kind::Slash;
            RationalFunction rhs = factor();
            if (div && rhs.is_zero()) throw DivisionByZeroError("division by zero in expression");
            acc = div ? acc / rhs : acc * rhs;
        }
        return acc;
    }

    RationalFunction factor() {
        bool neg = false;
        while (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            neg = !neg;
        }
        RationalFunction base = atom();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            Token e = lex_.take();
            bool eneg = false;
            if (e.kind == Token::Kind::Minus) {
                eneg = true;
                e = lex_.take();
            }
            if (e.kind != Token::Kind::Number)
                throw ParseError("exponent expected at position " + std::to_string(e.pos));
            if (e.value > 64) throw ParseError("exponent too large");
            if (eneg && base.is_zero()) throw DivisionByZeroError("zero to a negative power");
            base = base.pow(static_cast<int>(eneg ? -e.value : e.value));
        }
        return neg ? -base : base;
    }

    RationalFunction atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::Number:
                return RationalFunction::constant(FieldElement::from_int(field_, t.value));
            case Token::Kind::X:
                return RationalFunction(Polynomial::x(field_));
            case Token::Kind::T:
                if (field_->is_prime_field())
                    throw UndeclaredGeneratorError("generator t used without a field declaration");
                return RationalFunction::constant(FieldElement::generator(field_));
            case Token::Kind::LParen: {
                RationalFunction inner = expr();
                Token close = lex_.take();
                if (close.kind != Token::Kind::RParen)
                    throw ParseError("missing ')' at position " + std::to_string(close.pos));
                return inner;
            }
            default:
                throw ParseError("unexpected token at position " + std::to_string(t.pos));
        }
    }

    Lexer lex_;
    FieldPtr field_;
};

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

RationalFunction parse_rational(const std::string& text, const FieldPtr& field) {
    return ExprParser(text, field).parse();
}

CurveSpec parse_curve(const std::string& text) {
    CurveSpec spec;
    std::vector<std::string> items;
    {
        std::string cur;
        for (char c : text) {
            if (c == '\n' || c == ';') {
                items.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        items.push_back(cur);
    }
    int lineno = 0;
    for (auto& raw : items) {
        ++lineno;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected key=value");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key == "p") {
            try {
                spec.p = std::stoll(value);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": invalid characteristic");
            }
        } else if (key == "field") {
            if (!value.empty()) spec.field_text = value;
        } else if (key == "f") {
            spec.f_text = value;
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (spec.p == 0) throw ParseError("missing p=<prime>");
    if (spec.f_text.empty()) throw ParseError("missing f=<rational function>");

    FieldPtr prime = Field::make(spec.p, 1);  // validates p
    if (spec.field_text) {
        // the modulus is a polynomial in t over F_p; reuse the expression
        // grammar with t in the variable slot
        std::string mt = *spec.field_text;
        for (auto& c : mt) {
            if (c == 't') c = 'x';
            else if (c == 'x') throw ParseError("field modulus must use the generator t only");
        }
        RationalFunction m = parse_rational(mt, prime);
        if (!m.is_polynomial()) throw ParseError("field modulus must be a polynomial in t");
        Polynomial mp = m.num();
        if (mp.degree() < 2) throw ParseError("field modulus must have degree at least 2");
        std::vector<std::int64_t> coeffs;
        for (int i = 0; i <= mp.degree(); ++i) coeffs.push_back(mp.coeff(i).coeffs()[0]);
        spec.field = Field::make(spec.p, mp.degree(), coeffs);
    } else {
        spec.field = prime;
    }
    spec.f = parse_rational(spec.f_text, spec.field);
    if (spec.f.is_zero()) throw ParseError("f must be nonzero");
    return spec;
}

std::string CurveSpec::to_string() const {
    std::ostringstream os;
    os << "p=" << p << "; field=";
    if (!field->is_prime_field())
        os << Polynomial::from_ints(Field::canonical(p, 1), field->modulus())
                  .to_string(field->generator_name());
    os << "; f=" << f.to_string();
    return os.str();
}

}  // namespace ascurves
