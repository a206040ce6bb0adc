#pragma once

// Virtual C_p-representations: integer combinations of the trivial character,
// the rotation planes lambda(i), and (for p = 2) the sign character sigma.

#include <cpslice/box.hpp>

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cpslice {

struct VirtualRep {
    int p = 2;
    int trivial = 0;
    // multiplicity per rotation class, keys normalized into [1, (p-1)/2]
    std::map<int, int> lambda;
    int sigma = 0;  // p = 2 only

    bool operator==(const VirtualRep&) const = default;
};

// dim V = m, dim (sum of rotation parts) = n2 with n = n2/2, and the product
// of the rotation speeds taken mod p and mod negation, as a class in
// [1, (p-1)/2] (always 1 when p = 2).
struct ReducedRep {
    int p = 2;
    int m = 0;
    int n2 = 0;
    long a = 1;
};

inline int rep_dim(const VirtualRep& v) {
    int d = v.trivial + v.sigma;
    for (auto& [i, n] : v.lambda) {
        (void)i;
        d += 2 * n;
    }
    return d;
}

namespace detail {

inline void rep_add_lambda(VirtualRep& v, int index, int mult) {
    int p = v.p;
    int i = ((index % p) + p) % p;
    if (i == 0) throw std::invalid_argument("rotation index divisible by p");
    if (p == 2) {
        v.sigma += 2 * mult;
        return;
    }
    if (i > (p - 1) / 2) i = p - i;
    v.lambda[i] += mult;
    if (v.lambda[i] == 0) v.lambda.erase(i);
}

}  // namespace detail

// Grammar: terms joined by + or -, each term an integer, "λ(i)" or
// "lambda(i)", or (p = 2) "σ" or "sigma", optionally followed by ^exponent.
inline VirtualRep parse_rep(int p, std::string_view s) {
    VirtualRep v;
    v.p = p;
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    auto fail = [&](const std::string& what) -> std::invalid_argument {
        return std::invalid_argument("bad representation literal \"" + std::string(s) + "\": " +
                                     what + " at position " + std::to_string(pos));
    };
    auto read_int = [&]() -> int {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw fail("expected an integer");
        long x = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            x = 10 * x + (s[pos++] - '0');
            if (x > 1000000) throw fail("integer out of range");
        }
        return static_cast<int>(neg ? -x : x);
    };
    auto eat = [&](std::string_view word) -> bool {
        if (s.substr(pos, word.size()) == word) {
            pos += word.size();
            return true;
        }
        return false;
    };

    bool first = true;
    while (true) {
        skip_ws();
        if (pos == s.size()) {
            if (first) throw fail("empty");
            break;
        }
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            if (first && s[pos] == '+') throw fail("leading +");
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
            skip_ws();
        } else if (!first) {
            throw fail("expected + or - between terms");
        }
        first = false;

        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            long x = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                x = 10 * x + (s[pos++] - '0');
                if (x > 1000000) throw fail("integer out of range");
            }
            v.trivial += sign * static_cast<int>(x);
            skip_ws();
            if (pos < s.size() && s[pos] == '^') throw fail("exponent on an integer term");
            continue;
        }

        bool is_lambda = eat("λ(") || eat("lambda(");
        bool is_sigma = !is_lambda && (eat("σ") || eat("sigma"));
        if (!is_lambda && !is_sigma) throw fail("unrecognized term");

        int index = 0;
        if (is_lambda) {
            index = read_int();
            skip_ws();
            if (pos >= s.size() || s[pos] != ')') throw fail("missing )");
            ++pos;
        } else if (p != 2) {
            throw fail("sign character needs p = 2");
        }

        int mult = 1;
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            mult = read_int();
        }
        mult *= sign;

        if (is_lambda)
            detail::rep_add_lambda(v, index, mult);
        else
            v.sigma += mult;
    }
    return v;
}

inline std::string rep_to_string(const VirtualRep& v) {
    std::string out;
    auto term = [&](const std::string& body, int mult) {
        if (mult == 0) return;
        if (mult < 0)
            out += '-';
        else if (!out.empty())
            out += '+';
        out += body;
        int k = mult < 0 ? -mult : mult;
        if (k != 1) out += "^" + std::to_string(k);
    };
    if (v.trivial != 0) out += std::to_string(v.trivial);
    for (auto& [i, n] : v.lambda) term("λ(" + std::to_string(i) + ")", n);
    term("σ", v.sigma);
    if (out.empty()) out = "0";
    return out;
}

inline ReducedRep reduce_rep(const VirtualRep& v) {
    ReducedRep r;
    r.p = v.p;
    r.m = v.trivial;
    r.n2 = v.sigma;
    Int prod = 1;
    for (auto& [i, n] : v.lambda) {
        r.n2 += 2 * n;
        Int base = n < 0 ? unit_inverse_mod(v.p, i) : i;
        Int pw;
        mpz_powm_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n),
                    Int(v.p).get_mpz_t());
        prod = prod * pw % v.p;
    }
    long a = prod.get_si();
    if (a > (v.p - 1) / 2) a = v.p - a;
    if (a == 0) a = 1;  // p = 2 only, where the unit group is trivial
    r.a = a;
    return r;
}

}  // namespace cpslice
