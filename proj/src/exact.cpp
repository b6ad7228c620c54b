#include "gkz/exact.hpp"

#include "gkz/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <utility>

namespace gkz {

IntVector to_int_vector(const std::vector<std::int64_t>& v) {
    IntVector out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(x);
    return out;
}

std::int64_t to_int64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw InvalidConfiguration("integer " + v.str() + " exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(v);
}

std::vector<std::int64_t> to_int64_vector(const IntVector& v) {
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_int64(x));
    return out;
}

BigInt dot(const IntVector& a, const IntVector& b) {
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVector subtract(const IntVector& a, const IntVector& b) {
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

BigInt gcd_of(const IntVector& v) {
    BigInt g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    return boost::multiprecision::abs(g);
}

IntVector primitive(const IntVector& v) {
    BigInt g = gcd_of(v);
    if (g == 0 || g == 1) return v;
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

bool is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

BigInt determinant(std::vector<IntVector> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

// g = s*a + t*b with g = gcd(a, b) >= 0.
void extended_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
    BigInt old_r = a, r = b;
    BigInt old_s = 1, cur_s = 0;
    BigInt old_t = 0, cur_t = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = tmp;
        tmp = old_t - q * cur_t;
        old_t = cur_t;
        cur_t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    s = old_s;
    t = old_t;
}

}  // namespace

ColumnReduction column_reduce(const std::vector<IntVector>& rows, std::size_t n) {
    ColumnReduction red;
    red.h = rows;
    red.u.assign(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) red.u[i][i] = 1;

    auto combine = [&](std::size_t k, std::size_t j, const BigInt& a11, const BigInt& a21,
                       const BigInt& a12, const BigInt& a22) {
        // new col_k = a11*col_k + a21*col_j ; new col_j = a12*col_k + a22*col_j
        for (auto* mat : {&red.h, &red.u}) {
            for (auto& row : *mat) {
                BigInt ck = row[k], cj = row[j];
                row[k] = a11 * ck + a21 * cj;
                row[j] = a12 * ck + a22 * cj;
            }
        }
    };

    std::size_t k = 0;
    for (std::size_t i = 0; i < red.h.size() && k < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
            if (red.h[i][j] == 0) continue;
            BigInt a = red.h[i][k], b = red.h[i][j];
            BigInt g, s, t;
            extended_gcd(a, b, g, s, t);
            combine(k, j, s, t, -b / g, a / g);
        }
        if (red.h[i][k] != 0) {
            if (red.h[i][k] < 0) {
                for (auto* mat : {&red.h, &red.u})
                    for (auto& row : *mat) row[k] = -row[k];
            }
            ++k;
        }
    }
    red.rank = k;
    return red;
}

std::size_t rank_of(const std::vector<IntVector>& rows, std::size_t n) {
    return column_reduce(rows, n).rank;
}

std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t n) {
    if (rows.empty()) {
        std::vector<IntVector> basis(n, IntVector(n, 0));
        for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
        return basis;
    }
    ColumnReduction red = column_reduce(rows, n);
    std::vector<IntVector> basis;
    for (std::size_t col = red.rank; col < n; ++col) {
        IntVector v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = red.u[r][col];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<IntVector> saturated_basis(const std::vector<IntVector>& vectors, std::size_t n) {
    std::vector<IntVector> nonzero;
    for (const auto& v : vectors)
        if (!is_zero(v)) nonzero.push_back(v);
    if (nonzero.empty()) return {};
    return integer_kernel(integer_kernel(nonzero, n), n);
}

std::optional<IntVector> lattice_coordinates(const std::vector<IntVector>& basis,
                                             const IntVector& v) {
    const std::size_t k = basis.size();
    const std::size_t n = v.size();
    if (k == 0) {
        if (is_zero(v)) return IntVector{};
        return std::nullopt;
    }
    // Augmented system: n equations, k unknowns.
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < k; ++c) a[r][c] = Rational(basis[c][r]);
        a[r][k] = Rational(v[r]);
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < k && row < n; ++c) {
        std::size_t p = row;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(a[p], a[row]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[row][c];
            for (std::size_t cc = c; cc <= k; ++cc) a[r][cc] -= f * a[row][cc];
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (std::size_t r = row; r < n; ++r)
        if (a[r][k] != 0) return std::nullopt;
    IntVector y(k, 0);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) {
        Rational val = a[r][k] / a[r][pivot_col[r]];
        if (!is_integer(val)) return std::nullopt;
        y[pivot_col[r]] = boost::multiprecision::numerator(val);
    }
    return y;
}

std::vector<BigInt> smith_diagonal(const std::vector<IntVector>& rows, std::size_t n) {
    std::vector<IntVector> m = rows;
    const std::size_t r = m.size();
    std::vector<BigInt> diag;
    std::size_t t = 0;
    while (t < r && t < n) {
        // Move a nonzero entry of minimal modulus to (t, t).
        bool found = false;
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (m[i][j] != 0 &&
                    (!found || boost::multiprecision::abs(m[i][j]) <
                                   boost::multiprecision::abs(m[bi][bj]))) {
                    found = true;
                    bi = i;
                    bj = j;
                }
        if (!found) break;
        std::swap(m[t], m[bi]);
        for (auto& row : m) std::swap(row[t], row[bj]);

        bool clean = true;
        for (std::size_t i = t + 1; i < r; ++i) {
            BigInt q = m[i][t] / m[t][t];
            for (std::size_t j = t; j < n; ++j) m[i][j] -= q * m[t][j];
            if (m[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            BigInt q = m[t][j] / m[t][t];
            for (std::size_t i = t; i < r; ++i) m[i][j] -= q * m[i][t];
            if (m[t][j] != 0) clean = false;
        }
        if (!clean) continue;
        // Divisibility condition of the normal form.
        bool divides = true;
        for (std::size_t i = t + 1; i < r && divides; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (std::size_t jj = t; jj < n; ++jj) m[t][jj] += m[i][jj];
                    divides = false;
                    break;
                }
        if (!divides) continue;
        diag.push_back(boost::multiprecision::abs(m[t][t]));
        ++t;
    }
    return diag;
}

std::string to_string(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

std::optional<Rational> parse_rational(const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
    if (text.empty()) return std::nullopt;

    auto parse_int = [](const std::string& s) -> std::optional<BigInt> {
        if (s.empty()) return std::nullopt;
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) return std::nullopt;
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
        std::string body = s.substr(start);
        body.erase(0, std::min(body.find_first_not_of('0'), body.size() - 1));
        BigInt v(body);
        return s[0] == '-' ? BigInt(-v) : v;
    };

    if (auto slash = text.find('/'); slash != std::string::npos) {
        auto num = parse_int(text.substr(0, slash));
        auto den = parse_int(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        return Rational(*num, *den);
    }

    // Decimal with optional exponent, parsed exactly.
    std::string mantissa = text;
    long long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        mantissa = text.substr(0, e);
        auto ex = parse_int(text.substr(e + 1));
        if (!ex) return std::nullopt;
        if (boost::multiprecision::abs(*ex) > 4000) return std::nullopt;
        exponent = static_cast<long long>(*ex);
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
        negative = mantissa[0] == '-';
        mantissa = mantissa.substr(1);
    }
    std::string digits;
    long long frac_digits = 0;
    bool seen_dot = false;
    for (char ch : mantissa) {
        if (ch == '.') {
            if (seen_dot) return std::nullopt;
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
            if (seen_dot) ++frac_digits;
        } else {
            return std::nullopt;
        }
    }
    if (digits.empty()) return std::nullopt;
    // A leading zero would make the string constructor read octal.
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    BigInt num(digits);
    if (negative) num = -num;
    long long scale = exponent - frac_digits;
    BigInt ten_power = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
    if (scale >= 0) return Rational(num * ten_power);
    return Rational(num, ten_power);
}

}  // namespace gkz
