#include "budgetdiv/rational.hpp"

#include <cctype>

namespace budgetdiv {

Rat parse_rational(const std::string& text) {
    auto digits = [](const std::string& s, size_t from, size_t to) {
        if (from >= to) return false;
        for (size_t i = from; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    size_t slash = text.find('/');
    std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    size_t num_start = (!num.empty() && num[0] == '-') ? 1 : 0;
    if (!digits(num, num_start, num.size()) || !digits(den, 0, den.size()))
        throw ValidationError("not a rational: '" + text + "'");
    Rat r(num + "/" + den);
    if (r.get_den() == 0) throw ValidationError("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw ValidationError("integer out of range: " + z.get_str());
    return z.get_si();
}

}  // namespace budgetdiv
