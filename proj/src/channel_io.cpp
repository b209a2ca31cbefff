// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "eewf/channel.hpp"
#include "eewf/error.hpp"

namespace eewf {

namespace {

using nlohmann::json;

bool is_pair(const json& j) {
    return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

ChannelMatrix matrix_from_record(const json& record) {
    if (!record.is_array() || record.empty()) {
        throw invalid_input("matrix record must be a nonempty JSON array of [re, im] pairs");
    }
    const std::size_t count = record.size();
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
    if (n * n != count) {
        throw invalid_input("matrix record length " + std::to_string(count) +
                            " is not a perfect square");
    }
    ChannelMatrix h;
    h.entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < count; ++k) {
        const json& e = record[k];
        if (!is_pair(e)) {
            throw invalid_input("matrix entry " + std::to_string(k) +
                                " is not a [re, im] pair");
        }
        // row-major
        h.entries(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = {
            e[0].get<double>(), e[1].get<double>()};
    }
    if (!h.entries.allFinite()) {
        throw numeric_error("matrix record has non-finite entries");
    }
    return h;
}

} // namespace

std::vector<ChannelMatrix> read_matrix_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw invalid_input("cannot open matrix file: " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw invalid_input("matrix file " + path + ": " + e.what());
    }
    if (!doc.is_array() || doc.empty()) {
        throw invalid_input("matrix file " + path + ": expected a JSON array");
    }

    std::vector<ChannelMatrix> out;
    if (is_pair(doc[0])) {
        out.push_back(matrix_from_record(doc)); // single record
    } else {
        for (const json& rec : doc) {
            out.push_back(matrix_from_record(rec));
        }
    }
    return out;
}

} // namespace eewf
