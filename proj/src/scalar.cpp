#include "cone_hull/scalar.hpp"

#include "cone_hull/errors.hpp"

#include <cctype>

namespace cone_hull {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw SchemaError("not a rational number: '" + std::string(whole) + "'");
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);  // leading 0 would mean octal
    BigInt value{std::string(s)};
    return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw SchemaError("empty rational");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash), text);
        std::string_view den_text = text.substr(slash + 1);
        if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
        BigInt den = parse_integer(den_text, text);
        if (den == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }

    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        BigInt exp_value = parse_integer(text.substr(e + 1), text);
        if (abs(exp_value) > 4096) throw SchemaError("exponent out of range in '" + std::string(text) + "'");
        exponent = exp_value.convert_to<long>();
    }
    std::string digits;
    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    auto dot = mantissa.find('.');
    std::string_view int_part = mantissa.substr(0, dot);
    std::string_view frac_part =
        dot == std::string_view::npos ? std::string_view{} : mantissa.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw SchemaError("not a rational number: '" + std::string(text) + "'");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
        throw SchemaError("not a rational number: '" + std::string(text) + "'");
    digits.append(int_part);
    digits.append(frac_part);
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    BigInt num(digits);
    exponent -= static_cast<long>(frac_part.size());
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(exponent)));
    Rational value = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.str(); }

VectorXd to_double(const VectorQ& v) {
    VectorXd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = to_double(v(i));
    return out;
}

MatrixXd to_double(const MatrixQ& m) {
    MatrixXd out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
}

Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw SchemaError("non-finite number");
    int exponent = 0;
    double mantissa = std::frexp(x, &exponent);
    // 53 bits of mantissa make the scaled value an exact integer.
    long long integral = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Rational value(integral);
    BigInt power = boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(std::abs(exponent)));
    return exponent >= 0 ? Rational(value * power) : Rational(value / power);
}

VectorQ exact_rational(const VectorXd& v) {
    VectorQ out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = exact_rational(v(i));
    return out;
}

BigInt common_denominator(const VectorQ& v) {
    BigInt l = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) l = boost::multiprecision::lcm(l, BigInt(denominator(v(i))));
    return l;
}

VectorZ primitive_direction(const VectorQ& v) {
    BigInt l = common_denominator(v);
    VectorZ out(v.size());
    BigInt g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Rational scaled = v(i) * Rational(l);
        out(i) = numerator(scaled);
        g = boost::multiprecision::gcd(g, BigInt(abs(out(i))));
    }
    if (g > 1)
        for (Eigen::Index i = 0; i < v.size(); ++i) out(i) /= g;
    return out;
}

LatticeVector to_lattice(const VectorZ& v) {
    LatticeVector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).convert_to<long long>();
    return out;
}

VectorQ to_rational(const LatticeVector& v) {
    VectorQ out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
    return out;
}

VectorQ to_rational(const VectorZ& v) {
    VectorQ out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
    return out;
}

}  // namespace cone_hull
