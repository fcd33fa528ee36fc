#ifndef NEWTASYM_PARSE_HPP
#define NEWTASYM_PARSE_HPP

#include <cctype>
#include <stdexcept>
#include <string>

#include "newtasym/polynomial.hpp"

namespace newtasym {

/// Syntax error with a 0-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

namespace detail {

/// Recursive-descent reader for the term grammar
///   poly  := ['+'|'-'] term (('+'|'-') term)*
///   term  := factor ('*'? factor)*
///   factor:= number ['/' number] | 'i' | var ['^' number]
/// with variables x1..xn or x, y, z, w for up to four variables.
class PolyReader {
public:
    PolyReader(const std::string& text, std::size_t declared_nvars)
        : s_(text), declared_(declared_nvars) {}

    SparsePolynomial run() {
        skip_ws();
        if (eof()) throw ParseError("empty polynomial", pos_);
        // first pass fixes the variable count
        scan_variables();
        std::size_t n = declared_ ? declared_ : max_index_;
        if (declared_ && max_index_ > declared_)
            throw ParseError("variable index exceeds the declared count", pos_);
        if (n == 0) n = 1;  // constant polynomial in one variable
        SparsePolynomial p(n);
        pos_ = 0;
        skip_ws();
        while (!eof()) {
            int sign = 1;
            while (peek() == '+' || peek() == '-') {
                if (get() == '-') sign = -sign;
                skip_ws();
            }
            if (eof()) throw ParseError("dangling sign", pos_);
            auto [coeff, exps] = read_term(n);
            if (sign < 0) coeff = -coeff;
            p.add_term(Exponent(exps), coeff);
            skip_ws();
            if (!eof() && peek() != '+' && peek() != '-')
                throw ParseError("expected '+' or '-' between terms", pos_);
        }
        return p;
    }

private:
    const std::string& s_;
    std::size_t declared_;
    std::size_t pos_ = 0;
    std::size_t max_index_ = 0;
    bool numbered_ = false, lettered_ = false;

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return eof() ? '\0' : s_[pos_]; }
    char get() { return s_[pos_++]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    void scan_variables() {
        for (pos_ = 0; pos_ < s_.size();) {
            char c = s_[pos_];
            if (c == 'x' && pos_ + 1 < s_.size() &&
                std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                std::size_t start = ++pos_;
                while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
                long idx = std::stol(s_.substr(start, pos_ - start));
                if (idx < 1) throw ParseError("variable indices start at 1", start);
                numbered_ = true;
                max_index_ = std::max<std::size_t>(max_index_, idx);
            } else if (c == 'x' || c == 'y' || c == 'z' || c == 'w') {
                lettered_ = true;
                max_index_ = std::max<std::size_t>(max_index_, letter_index(c));
                ++pos_;
            } else {
                ++pos_;
            }
        }
        if (numbered_ && lettered_)
            throw ParseError("cannot mix x1..xn with x,y,z,w variable names", 0);
    }

    static std::size_t letter_index(char c) {
        switch (c) {
            case 'x': return 1;
            case 'y': return 2;
            case 'z': return 3;
            default: return 4;
        }
    }

    BigInt read_integer() {
        skip_ws();
        std::size_t start = pos_;
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected a number", pos_);
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return BigInt(s_.substr(start, pos_ - start));
    }

    /// one factor; multiplies coeff or bumps an exponent
    void read_factor(GaussianRational& coeff, std::vector<long>& exps) {
        skip_ws();
        if (eof()) throw ParseError("expected a factor", pos_);
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt p = read_integer();
            Rational q(p);
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                std::size_t dpos = pos_;
                BigInt d = read_integer();
                if (d == 0) throw ParseError("zero denominator", dpos);
                q = Rational(p, d);
            }
            coeff = coeff * GaussianRational(q);
            return;
        }
        if (c == 'i') {
            ++pos_;
            coeff = coeff * GaussianRational(Rational(0), Rational(1));
            return;
        }
        if (c == 'x' || c == 'y' || c == 'z' || c == 'w') {
            std::size_t var_pos = pos_;
            ++pos_;
            std::size_t idx;
            if (numbered_) {
                if (c != 'x') throw ParseError("expected a numbered variable", var_pos);
                std::size_t start = pos_;
                while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
                if (start == pos_) throw ParseError("expected a variable index", pos_);
                idx = std::stoul(s_.substr(start, pos_ - start));
            } else {
                idx = letter_index(c);
            }
            long e = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                if (peek() == '-') throw ParseError("negative exponents rejected", pos_);
                BigInt be = read_integer();
                e = static_cast<long>(be);
            }
            exps[idx - 1] += e;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::pair<GaussianRational, std::vector<long>> read_term(std::size_t n) {
        GaussianRational coeff(Rational(1));
        std::vector<long> exps(n, 0);
        read_factor(coeff, exps);
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                read_factor(coeff, exps);
                continue;
            }
            char c = peek();
            // implicit product: 2x, i*y written as iy, x y
            if (std::isdigit(static_cast<unsigned char>(c)) || c == 'i' || c == 'x' ||
                c == 'y' || c == 'z' || c == 'w') {
                read_factor(coeff, exps);
                continue;
            }
            break;
        }
        return {coeff, exps};
    }
};

} // namespace detail

/// Parse the term grammar into an exact polynomial. Pass nvars = 0 to infer
/// the variable count from the highest index used.
inline SparsePolynomial parse_polynomial(const std::string& text, std::size_t nvars = 0) {
    detail::PolyReader reader(text, nvars);
    return reader.run();
}

} // namespace newtasym

#endif
