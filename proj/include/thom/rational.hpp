#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "thom/error.hpp"

namespace thom {

using Rational = mpq_class;

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(std::string_view text) {
    auto fail = [&](const char* why) {
        return Error(errc::parse, std::string(why) + ": '" + std::string(text) + "'");
    };
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    auto digits = [](std::string_view part, bool allow_sign) {
        if (allow_sign && !part.empty() && part.front() == '-') part.remove_prefix(1);
        return !part.empty() && part.find_first_not_of("0123456789") == std::string_view::npos;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) throw fail("not a rational literal");
    if (mpz_class(den) == 0) throw fail("zero denominator");
    Rational q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
}

}  // namespace thom
