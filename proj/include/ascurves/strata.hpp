#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ascurves/errors.hpp"

namespace ascurves {

/// Irreducible component of the p-rank stratum of the moduli space for a
/// fixed genus: the partition E of D+2 (parts descending), with
/// s = (|E|-1)(p-1) and dimension D - 1 - sum floor((e_j-1)/p).
struct StratumDescriptor {
    int g = 0;
    std::int64_t p = 0;
    int s = 0;
    std::vector<int> partition;  // descending
    int dimension = 0;

    bool operator==(const StratumDescriptor& o) const {
        return g == o.g && p == o.p && s == o.s && partition == o.partition;
    }
    std::string partition_string() const;  // "{3,2}"
    std::string to_string() const;
};

// Validates the partition (parts >= 2, none = 1 mod p) and fills in g, s and
// the dimension.
StratumDescriptor make_stratum(std::int64_t p, std::vector<int> partition);

int stratum_dimension(const std::vector<int>& partition, std::int64_t p);

// All components for the given genus and characteristic, ordered as in the
// reference table: pole count ascending (p-rank ascending), then partition
// lexicographically descending. Empty when 2g/(p-1) is not a positive
// integer.
std::vector<StratumDescriptor> enumerate_strata(int g, std::int64_t p);

// The eight strata of genus 3 and 4 that carry named coefficients and
// invariants.
bool is_reference_stratum(const StratumDescriptor& st);

}  // namespace ascurves
