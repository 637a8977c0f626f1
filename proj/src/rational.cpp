#include "rootdens/rational.hpp"

#include "rootdens/errors.hpp"

#include <cctype>
#include <climits>

namespace rootdens {

Rat make_rational(const Int& num, const Int& den) {
    if (den == 0)
        throw invalid_input_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string rational_string(const Rat& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat parse_rational(const std::string& s) {
    // manual validation: [+-]?digits(/[+-]?digits)?
    auto bad = [&]() -> invalid_input_error {
        return invalid_input_error("malformed rational '" + s + "'");
    };
    std::size_t i = 0;
    auto scan_integer = [&]() {
        if (i < s.size() && (s[i] == '+' || s[i] == '-'))
            ++i;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        return i > start;
    };
    if (!scan_integer())
        throw bad();
    std::string num = s.substr(0, i);
    std::string den = "1";
    if (i < s.size()) {
        if (s[i] != '/')
            throw bad();
        std::size_t den_start = ++i;
        if (!scan_integer() || i != s.size())
            throw bad();
        den = s.substr(den_start);
    }
    // mpz_set_str rejects an explicit plus sign.
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    Int n(num), d(den);
    if (d == 0)
        throw invalid_input_error("zero denominator in '" + s + "'");
    return make_rational(n, d);
}

std::string int_string(const Int& n) {
    return n.get_str();
}

long to_long_checked(const Int& n, const char* what) {
    if (!n.fits_slong_p())
        throw budget_error(std::string(what) + " out of machine range: " + n.get_str());
    return n.get_si();
}

Int int_pow(const Int& x, unsigned long k) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), k);
    return r;
}

Int mod_floor(const Int& x, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

} // namespace rootdens
