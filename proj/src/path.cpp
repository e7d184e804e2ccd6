#include "lpplab/path.hpp"

#include <charconv>

namespace lpp {

namespace {

std::int64_t parse_int(const std::string& text, std::size_t& pos, const char* what) {
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin)
        throw std::invalid_argument(std::string("parse_path: expected ") + what + " in '" + text +
                                    "'");
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
}

}  // namespace

DownRightPath parse_path(const std::string& text) {
    std::size_t pos = 0;
    const std::int64_t i = parse_int(text, pos, "start column");
    if (pos >= text.size() || text[pos] != ',')
        throw std::invalid_argument("parse_path: expected ',' in '" + text + "'");
    ++pos;
    const std::int64_t j = parse_int(text, pos, "start row");
    if (pos >= text.size() || text[pos] != ':')
        throw std::invalid_argument("parse_path: expected ':' in '" + text + "'");
    ++pos;
    std::vector<Step> steps;
    while (pos < text.size() && text[pos] != '@') {
        const char c = text[pos];
        if (c == 'R' || c == 'r')
            steps.push_back(Step::Right);
        else if (c == 'D' || c == 'd')
            steps.push_back(Step::Down);
        else
            throw std::invalid_argument("parse_path: bad step character '" + std::string(1, c) +
                                        "'");
        ++pos;
    }
    std::int64_t base = 1;
    if (pos < text.size() && text[pos] == '@') {
        ++pos;
        base = parse_int(text, pos, "base index");
    }
    if (pos != text.size()) throw std::invalid_argument("parse_path: trailing junk in '" + text + "'");
    return DownRightPath({i, j}, std::move(steps), base);
}

std::string format_path(const DownRightPath& nu) {
    std::string out = std::to_string(nu.vertices().front().i) + "," +
                      std::to_string(nu.vertices().front().j) + ":";
    for (Step s : nu.steps()) out += (s == Step::Right ? 'R' : 'D');
    if (nu.base_index() != 1) out += "@" + std::to_string(nu.base_index());
    return out;
}

}  // namespace lpp
