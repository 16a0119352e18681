#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mono {

// An OEIS b-file: lines "index value", '#' comments ignored, indices
// contiguous from the first index.
struct BFile {
    std::string id;  // e.g. "A365339"
    std::vector<std::pair<int64_t, int64_t>> terms;

    int64_t first_index() const { return terms.empty() ? 0 : terms.front().first; }
    int64_t last_index() const { return terms.empty() ? -1 : terms.back().first; }
    bool contains(int64_t index) const {
        return !terms.empty() && index >= first_index() && index <= last_index();
    }
    int64_t value_at(int64_t index) const;  // contract_error when absent
};

// parse_error (with line number) on malformed or non-contiguous input.
BFile parse_bfile(std::istream& in, std::string id);
BFile load_bfile(const std::string& path, std::string id);

struct OeisMismatch {
    int64_t index = 0;
    int64_t expected = 0;  // b-file value
    int64_t got = 0;       // computed value
};

// Compares computed (index, value) pairs against the b-file; the
// computed indices must all be present in the b-file.
std::vector<OeisMismatch> oeis_check(const BFile& seq,
                                     const std::vector<std::pair<int64_t, int64_t>>& computed);

}  // namespace mono
