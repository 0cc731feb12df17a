// SPDX-License-Identifier: Apache-2.0

#include "brute.hpp"

#include "provstamp/bytes.hpp"
#include "provstamp/codec.hpp"
#include "provstamp/container.hpp"

#include <algorithm>
#include <regex>

namespace fs = std::filesystem;

namespace brute {

Result scan(const fs::path& root, const provstamp::query::Node& where)
{
    static const std::regex image(R"(.*\.(png|jpe?g))", std::regex::icase);
    std::vector<std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file() && std::regex_match(e.path().filename().string(), image))
            files.push_back(e.path().generic_string());
    std::sort(files.begin(), files.end());

    Result out;
    for (const auto& f : files) {
        try {
            auto found = provstamp::extract(provstamp::read_file(f));
            if (!found.payload) {
                ++out.missing;
                continue;
            }
            auto doc = provstamp::normalize_document(
                provstamp::parse_json(*found.payload, provstamp::Mode::lenient).document,
                provstamp::Mode::lenient);
            if (provstamp::query::eval_query(where, doc))
                out.matches.push_back({f, std::move(doc)});
        } catch (const std::exception&) {
            ++out.failed;
        }
    }
    return out;
}

}  // namespace brute
