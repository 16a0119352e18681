#include "mono/bfile.hpp"

#include <fstream>
#include <sstream>

#include "mono/errors.hpp"

namespace mono {

int64_t BFile::value_at(int64_t index) const {
    if (!contains(index)) throw contract_error("b-file " + id + ": index out of range");
    return terms[static_cast<size_t>(index - first_index())].second;
}

BFile parse_bfile(std::istream& in, std::string id) {
    BFile bf;
    bf.id = std::move(id);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;  // blank
        if (line[start] == '#') continue;          // comment
        std::istringstream ls(line.substr(start));
        int64_t index, value;
        if (!(ls >> index >> value)) throw parse_error("malformed b-file line", lineno);
        std::string trailing;
        if (ls >> trailing) throw parse_error("trailing content on b-file line", lineno);
        if (!bf.terms.empty() && index != bf.terms.back().first + 1)
            throw parse_error("non-contiguous index " + std::to_string(index), lineno);
        bf.terms.emplace_back(index, value);
    }
    return bf;
}

BFile load_bfile(const std::string& path, std::string id) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open b-file '" + path + "'", 0);
    return parse_bfile(in, std::move(id));
}

std::vector<OeisMismatch> oeis_check(const BFile& seq,
                                     const std::vector<std::pair<int64_t, int64_t>>& computed) {
    std::vector<OeisMismatch> mismatches;
    for (auto [index, got] : computed) {
        if (!seq.contains(index))
            throw contract_error("computed index " + std::to_string(index) +
                                 " is not covered by b-file " + seq.id);
        int64_t expected = seq.value_at(index);
        if (expected != got) mismatches.push_back({index, expected, got});
    }
    return mismatches;
}

}  // namespace mono
