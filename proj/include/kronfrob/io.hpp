#pragma once

#include <cctype>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mat2.hpp"
#include "root_lattice.hpp"

namespace kronfrob {

// ---------------------------------------------------------------------------
// Deterministic JSON emitter.  Keys keep insertion order, doubles are
// rendered with %.15g, and complex numbers as {"re": ..., "im": ...}, so
// identical invocations produce byte-identical output.

class Json {
public:
    static Json object() { Json j; j.value_ = Object{}; return j; }
    static Json array() { Json j; j.value_ = Array{}; return j; }
    static Json boolean(bool b) { Json j; j.value_ = b; return j; }
    static Json str(std::string s) { Json j; j.value_ = Str{std::move(s)}; return j; }
    static Json num(double d) { Json j; j.value_ = Raw{format_double(d)}; return j; }
    static Json integer(long long v) { Json j; j.value_ = Raw{std::to_string(v)}; return j; }
    static Json uinteger(unsigned long long v) { Json j; j.value_ = Raw{std::to_string(v)}; return j; }
    static Json big(const BigInt& v) { Json j; j.value_ = Raw{v.str()}; return j; }
    static Json complex_number(Complex z) {
        Json j = object();
        j.set("re", num(z.real()));
        j.set("im", num(z.imag()));
        return j;
    }
    static Json matrix(const Mat2& m) {
        Json rows = array();
        for (int i = 0; i < 2; ++i) {
            Json row = array();
            for (int k = 0; k < 2; ++k) row.push(complex_number(m.m[i][k]));
            rows.push(std::move(row));
        }
        return rows;
    }
    /// 2x2 matrix whose entries are known to be real.
    static Json real_matrix(const Mat2& m) {
        Json rows = array();
        for (int i = 0; i < 2; ++i) {
            Json row = array();
            for (int k = 0; k < 2; ++k) row.push(num(m.m[i][k].real()));
            rows.push(std::move(row));
        }
        return rows;
    }

    Json& set(std::string key, Json v) {
        std::get<Object>(value_).emplace_back(std::move(key), std::move(v));
        return *this;
    }
    Json& push(Json v) {
        std::get<Array>(value_).push_back(std::move(v));
        return *this;
    }

    std::string dump() const {
        std::string out;
        write(out);
        return out;
    }

    static std::string format_double(double d) {
        if (d == 0.0) d = 0.0;  // normalize -0
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.15g", d);
        return buf;
    }

private:
    struct Str { std::string s; };
    struct Raw { std::string s; };
    using Array = std::vector<Json>;
    using Object = std::vector<std::pair<std::string, Json>>;
    std::variant<bool, Str, Raw, Array, Object> value_ = Raw{"null"};

    static void escape(std::string& out, const std::string& s) {
        out += '"';
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out += c;
                    }
            }
        }
        out += '"';
    }

    void write(std::string& out) const {
        if (auto b = std::get_if<bool>(&value_)) {
            out += *b ? "true" : "false";
        } else if (auto s = std::get_if<Str>(&value_)) {
            escape(out, s->s);
        } else if (auto r = std::get_if<Raw>(&value_)) {
            out += r->s;
        } else if (auto a = std::get_if<Array>(&value_)) {
            out += '[';
            for (size_t i = 0; i < a->size(); ++i) {
                if (i) out += ',';
                (*a)[i].write(out);
            }
            out += ']';
        } else {
            const auto& o = std::get<Object>(value_);
            out += '{';
            for (size_t i = 0; i < o.size(); ++i) {
                if (i) out += ',';
                escape(out, o[i].first);
                out += ':';
                o[i].second.write(out);
            }
            out += '}';
        }
    }
};

// ---------------------------------------------------------------------------
// Complex literal parsing for the CLI: accepts "a+bi" / "a-bi" / "bi" / "a"
// and the pair form "a,b".

namespace detail {

inline double parse_real(const std::string& s) {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument("trailing characters in number: " + s);
    return v;
}

}  // namespace detail

/// Parse one complex literal in "a+bi" form (also "bi", "i", "-i", "a").
inline Complex parse_complex(std::string s) {
    // strip spaces
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty complex literal");

    if (t.find(',') != std::string::npos) {
        const size_t comma = t.find(',');
        return {detail::parse_real(t.substr(0, comma)), detail::parse_real(t.substr(comma + 1))};
    }
    if (t.back() == 'i' || t.back() == 'I') {
        t.pop_back();
        // split into real part and imaginary coefficient at the last +/- that
        // is not an exponent sign
        size_t split = std::string::npos;
        for (size_t k = t.size(); k-- > 1;) {
            if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        std::string re = "0", im = t;
        if (split != std::string::npos) {
            re = t.substr(0, split);
            im = t.substr(split);
        }
        if (im.empty() || im == "+") im = "1";
        else if (im == "-") im = "-1";
        return {detail::parse_real(re), detail::parse_real(im)};
    }
    return {detail::parse_real(t), 0.0};
}

/// Parse a chart point "c1,c2" where each part is an "a+bi" literal, or the
/// four-part form "re1,im1,re2,im2".
inline std::pair<Complex, Complex> parse_point(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() == 2) return {parse_complex(parts[0]), parse_complex(parts[1])};
    if (parts.size() == 4)
        return {Complex(detail::parse_real(parts[0]), detail::parse_real(parts[1])),
                Complex(detail::parse_real(parts[2]), detail::parse_real(parts[3]))};
    throw std::invalid_argument("point must be \"c1,c2\" or \"re1,im1,re2,im2\": " + s);
}

}  // namespace kronfrob
