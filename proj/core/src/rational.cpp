#include "geodesic/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace geodesic {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string original(text);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw std::invalid_argument("not a rational: \"" + original + "\"");
        }
        BigInt d(std::string(den), 10);
        if (d == 0) {
            throw std::invalid_argument("zero denominator: \"" + original + "\"");
        }
        result = Rational(BigInt(std::string(num), 10), d);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto whole = text.substr(0, dot);
        const auto frac = text.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            throw std::invalid_argument("not a decimal: \"" + original + "\"");
        }
        BigInt num(whole.empty() ? std::string("0") : std::string(whole), 10);
        BigInt scale = 1;
        for (char c : frac) {
            num = num * 10 + (c - '0');
            scale *= 10;
        }
        result = Rational(num, scale);
    } else {
        if (!all_digits(text)) {
            throw std::invalid_argument("not a number: \"" + original + "\"");
        }
        result = Rational(BigInt(std::string(text), 10));
    }
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1) {
        return c.get_num().get_str();
    }
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double to_double(const Rational& r) {
    return r.get_d();
}

}  // namespace geodesic
