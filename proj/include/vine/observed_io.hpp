#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vine/rds.hpp"

namespace vine {

// Provenance lines written as `# key: value` comments at the top of every
// artifact and skipped by the readers.
using Provenance = std::vector<std::pair<std::string, std::string>>;

// Observed-data file:
//
//   vine-observed 1
//   n <n>
//   seeds <|M|>          followed by |M| subject indices
//   degrees              followed by n integers
//   times                followed by n decimals (shortest round-trip form)
//   recruitment <|E_R|>  followed by `recruiter recruitee` pairs
//   coupons              followed by n rows of n 0/1 characters
void write_observed(std::ostream &out, const ObservedData &obs, const Provenance &meta = {});
ObservedData read_observed(std::istream &in);

// Truth file: sample node labels, the induced subgraph and the event log.
//
//   vine-truth 1
//   n <n>
//   sample-nodes         followed by n graph node labels
//   edges <m>            followed by `i j` subject pairs, i < j
//   events <n>           followed by `recruiter|- recruitee time`
void write_truth(std::ostream &out, const SimulationTruth &truth, const Graph &g, const Provenance &meta = {});

struct TruthRecord {
    std::vector<std::string> sample_labels;
    AdjacencyMatrix adjacency;
    std::vector<RecruitmentEvent> events;
};
TruthRecord read_truth(std::istream &in);

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);
double parse_double(const std::string &token);

void write_provenance(std::ostream &out, const Provenance &meta);

// Whitespace tokenizer that skips `#` comment lines.
class TokenReader {
public:
    explicit TokenReader(std::istream &in) : in_(in) {}
    bool next(std::string &token);
    std::string expect(const char *what);
    void expect_literal(const std::string &literal);
    long long expect_integer(const char *what);
    double expect_double(const char *what);
    std::size_t line() const { return line_; }

private:
    bool fill();
    std::istream &in_;
    std::vector<std::string> pending_;
    std::size_t cursor_ = 0;
    std::size_t line_ = 0;
};

} // namespace vine
