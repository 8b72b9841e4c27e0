#include "troph/rat.hpp"

#include <cctype>
#include <ostream>

#include "troph/errors.hpp"

namespace troph {

Rat::Rat(long n, long d) {
    if (d == 0) throw Error(ErrorCode::ParseError, "rational with zero denominator");
    q_ = mpq_class(n, d);
    canonicalize();
}

Rat::Rat(mpz_class n, mpz_class d) {
    if (sgn(d) == 0) throw Error(ErrorCode::ParseError, "rational with zero denominator");
    q_ = mpq_class(std::move(n), std::move(d));
    canonicalize();
}

namespace {

bool is_integer_token(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    auto slash = text.find('/');
    std::string_view num_part = text.substr(0, slash);
    if (!is_integer_token(num_part))
        throw Error(ErrorCode::ParseError, "invalid rational literal: '" + std::string(text) + "'");
    if (slash == std::string_view::npos)
        return Rat(mpz_class(std::string(num_part)), mpz_class(1));
    std::string_view den_part = text.substr(slash + 1);
    if (!is_integer_token(den_part) || den_part[0] == '-' || den_part[0] == '+')
        throw Error(ErrorCode::ParseError, "invalid rational literal: '" + std::string(text) + "'");
    mpz_class den{std::string(den_part)};
    if (sgn(den) == 0)
        throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rat(mpz_class(std::string(num_part)), std::move(den));
}

Rat Rat::operator/(const Rat& o) const {
    if (o.is_zero()) throw Error(ErrorCode::SingularSystem, "division by zero");
    return Rat(mpq_class(q_ / o.q_));
}

Rat Rat::reciprocal() const {
    if (is_zero()) throw Error(ErrorCode::SingularSystem, "reciprocal of zero");
    return Rat(mpq_class(1) / q_);
}

mpz_class Rat::floor() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return f;
}

Rat Rat::frac() const {
    return *this - Rat(floor(), mpz_class(1));
}

std::string Rat::str() const {
    return num().get_str() + "/" + den().get_str();
}

std::string Rat::decimal(int digits) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // round(|p|*10^digits / q) half away from zero
    mpz_class p = num() < 0 ? mpz_class(-num()) : num();
    mpz_class scaled = p * scale;
    mpz_class quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den().get_mpz_t());
    if (rem * 2 >= den()) quot += 1;
    mpz_class whole = quot / scale;
    mpz_class fracpart = quot % scale;
    std::string out;
    if (sign() < 0 && (whole != 0 || fracpart != 0)) out += "-";
    out += whole.get_str();
    if (digits > 0) {
        std::string frac_str = fracpart.get_str();
        frac_str.insert(0, static_cast<std::size_t>(digits) - frac_str.size(), '0');
        out += "." + frac_str;
    }
    return out;
}

Rat pow_int(const Rat& base, long exp) {
    unsigned long mag = static_cast<unsigned long>(exp < 0 ? -exp : exp);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), mag);
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), mag);
    Rat r(std::move(n), std::move(d));
    return exp < 0 ? r.reciprocal() : r;
}

Rat pow4(long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 4, static_cast<unsigned long>(k < 0 ? -k : k));
    return k >= 0 ? Rat(std::move(p), mpz_class(1)) : Rat(mpz_class(1), std::move(p));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

}  // namespace troph
