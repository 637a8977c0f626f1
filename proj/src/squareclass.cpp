#include "rootdens/squareclass.hpp"

#include "rootdens/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace rootdens {

Int SquareClass::rep() const {
    Int r = sgn;
    for (const Int& p : primes)
        r *= p;
    return r;
}

bool SquareClass::is_even() const {
    return !primes.empty() && primes.front() == 2;
}

Int SquareClass::discriminant() const {
    Int r = rep();
    return mod_floor(r, 4) == 1 ? r : Int(4 * r);
}

bool SquareClass::has_odd_discriminant() const {
    return mod_floor(rep(), 4) == 1;
}

std::vector<Int> SquareClass::odd_primes() const {
    std::vector<Int> out;
    for (const Int& p : primes)
        if (p != 2)
            out.push_back(p);
    return out;
}

SquareClass operator*(const SquareClass& x, const SquareClass& y) {
    SquareClass r;
    r.sgn = x.sgn * y.sgn;
    // symmetric difference of the two sorted prime lists
    std::size_t i = 0, j = 0;
    while (i < x.primes.size() && j < y.primes.size()) {
        int c = cmp(x.primes[i], y.primes[j]);
        if (c < 0)
            r.primes.push_back(x.primes[i++]);
        else if (c > 0)
            r.primes.push_back(y.primes[j++]);
        else {
            ++i;
            ++j;
        }
    }
    r.primes.insert(r.primes.end(), x.primes.begin() + i, x.primes.end());
    r.primes.insert(r.primes.end(), y.primes.begin() + j, y.primes.end());
    return r;
}

bool operator==(const SquareClass& x, const SquareClass& y) {
    return x.sgn == y.sgn && x.primes == y.primes;
}

SquareClass square_class_of(const Factorization& f) {
    SquareClass c;
    c.sgn = f.sign;
    for (const auto& [p, e] : f.exponents)
        if (e % 2 != 0)
            c.primes.push_back(p);
    return c;
}

SquareClass square_class_of(const Rat& x, long bound) {
    return square_class_of(factor_rational(x, bound));
}

SquareClass odd_discriminant_representative(const SquareClass& c) {
    if (c.is_even())
        throw std::logic_error("even square classes have no odd-discriminant member");
    if (c.has_odd_discriminant())
        return c;
    SquareClass flipped = c;
    flipped.sgn = -c.sgn;
    return flipped;
}

int chi4(const Int& u) {
    Int r = mod_floor(u, 4);
    if (r == 1)
        return 1;
    if (r == 3)
        return -1;
    throw std::logic_error("chi4 requires an odd argument");
}

int chi8(const Int& u) {
    Int r = mod_floor(u, 8);
    if (r == 1 || r == 7)
        return 1;
    if (r == 3 || r == 5)
        return -1;
    throw std::logic_error("chi8 requires an odd argument");
}

} // namespace rootdens
