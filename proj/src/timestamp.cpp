// SPDX-License-Identifier: Apache-2.0

#include "provstamp/timestamp.hpp"

#include "provstamp/error.hpp"

#include <charconv>
#include <cstdio>

namespace provstamp {

namespace {

using namespace std::chrono;

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    bool digits(std::size_t count, int& out)
    {
        if (pos_ + count > s_.size())
            return false;
        int value = 0;
        for (std::size_t i = 0; i < count; ++i) {
            char c = s_[pos_ + i];
            if (c < '0' || c > '9')
                return false;
            value = value * 10 + (c - '0');
        }
        pos_ += count;
        out = value;
        return true;
    }

    bool literal(char c)
    {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::optional<char> peek() const
    {
        if (pos_ < s_.size())
            return s_[pos_];
        return std::nullopt;
    }

    bool done() const { return pos_ == s_.size(); }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

std::optional<Timestamp> parse_impl(std::string_view text)
{
    Cursor in(text);
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    if (!in.digits(4, y) || !in.literal('-') || !in.digits(2, mo) || !in.literal('-')
        || !in.digits(2, d) || !in.literal('T') || !in.digits(2, h) || !in.literal(':')
        || !in.digits(2, mi) || !in.literal(':') || !in.digits(2, sec))
        return std::nullopt;

    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || sec > 59)
        return std::nullopt;

    nanoseconds frac{0};
    if (in.literal('.')) {
        long long scale = 100'000'000;
        int ndigits = 0;
        long long ns = 0;
        int digit = 0;
        while (in.peek() && *in.peek() >= '0' && *in.peek() <= '9') {
            in.digits(1, digit);
            if (++ndigits > 9)
                return std::nullopt;
            ns += digit * scale;
            scale /= 10;
        }
        if (ndigits == 0)
            return std::nullopt;
        frac = nanoseconds{ns};
    }

    minutes offset{0};
    if (in.literal('Z')) {
    } else if (auto sign = in.peek(); sign && (*sign == '+' || *sign == '-')) {
        in.literal(*sign);
        int oh = 0, om = 0;
        if (!in.digits(2, oh))
            return std::nullopt;
        in.literal(':');
        if (!in.digits(2, om) || oh > 23 || om > 59)
            return std::nullopt;
        offset = hours{oh} + minutes{om};
        if (*sign == '-')
            offset = -offset;
    } else {
        return std::nullopt;
    }
    if (!in.done())
        return std::nullopt;

    // Keep within the nanosecond clock's representable range.
    if (y < 1678 || y > 2261)
        return std::nullopt;

    auto tp = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec} + frac - offset;
    return Timestamp{time_point_cast<nanoseconds>(tp)};
}

}  // namespace

Timestamp Timestamp::parse(std::string_view text)
{
    if (auto ts = parse_impl(text))
        return *ts;
    throw Error(ErrorCode::InvalidTimestamp,
                "not an ISO 8601 UTC timestamp: \"" + std::string(text) + "\"", std::string(text));
}

std::optional<Timestamp> Timestamp::try_parse(std::string_view text) noexcept
{
    try {
        return parse_impl(text);
    } catch (...) {
        return std::nullopt;
    }
}

Timestamp Timestamp::now()
{
    return Timestamp{time_point_cast<nanoseconds>(Clock::now())};
}

std::string Timestamp::to_string() const
{
    auto day_point = floor<days>(tp_);
    year_month_day ymd{day_point};
    hh_mm_ss tod{tp_ - day_point};

    char buf[64];
    int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", int(ymd.year()),
                          unsigned(ymd.month()), unsigned(ymd.day()), int(tod.hours().count()),
                          int(tod.minutes().count()), int(tod.seconds().count()));
    std::string out(buf, static_cast<std::size_t>(n));

    auto ns = tod.subseconds().count();
    if (ns != 0) {
        char fbuf[16];
        std::snprintf(fbuf, sizeof fbuf, ".%09lld", static_cast<long long>(ns));
        std::string frac(fbuf);
        while (frac.back() == '0')
            frac.pop_back();
        out += frac;
    }
    out += 'Z';
    return out;
}

}  // namespace provstamp
