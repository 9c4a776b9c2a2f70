#include "vidsched/core.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace vidsched {

Quality quality_from_string(const std::string& text) {
    if (text.empty()) throw ValidationError("empty quality value");
    std::size_t pos = 0;
    bool neg = text[pos] == '-';
    if (neg || text[pos] == '+') ++pos;
    if (pos >= text.size()) throw ValidationError("malformed quality value: " + text);

    Quality whole = 0;
    bool any_digit = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        whole = whole * 10 + (text[pos] - '0');
        any_digit = true;
        ++pos;
    }
    Quality frac = 0;
    int frac_digits = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (frac_digits < 3) {
                frac = frac * 10 + (text[pos] - '0');
                ++frac_digits;
            } else if (text[pos] != '0') {
                throw ValidationError("quality has more than 3 decimal digits: " + text);
            }
            any_digit = true;
            ++pos;
        }
    }
    if (!any_digit || pos != text.size())
        throw ValidationError("malformed quality value: " + text);
    while (frac_digits < 3) {
        frac *= 10;
        ++frac_digits;
    }
    Quality q = whole * kQualityScale + frac;
    if (neg) q = -q;
    return q;
}

Quality quality_from_double(double value) {
    double scaled = value * static_cast<double>(kQualityScale);
    double rounded = std::llround(scaled);
    if (std::fabs(scaled - rounded) > 1e-6)
        throw ValidationError("quality value exceeds 3-decimal precision");
    return static_cast<Quality>(rounded);
}

double quality_to_double(Quality q) {
    return static_cast<double>(q) / static_cast<double>(kQualityScale);
}

std::string quality_to_string(Quality q) {
    std::string sign = q < 0 ? "-" : "";
    Quality a = q < 0 ? -q : q;
    Quality whole = a / kQualityScale;
    Quality frac = a % kQualityScale;
    if (frac == 0) return sign + std::to_string(whole);
    std::string f = std::to_string(frac);
    f.insert(f.begin(), 3 - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    return sign + std::to_string(whole) + "." + f;
}

}  // namespace vidsched
