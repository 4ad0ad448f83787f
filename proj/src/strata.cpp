#include "ascurves/strata.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ascurves {

std::string StratumDescriptor::partition_string() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < partition.size(); ++i) {
        if (i) os << ",";
        os << partition[i];
    }
    os << "}";
    return os.str();
}

std::string StratumDescriptor::to_string() const {
    std::ostringstream os;
    os << "g=" << g << " p=" << p << " s=" << s << " E=" << partition_string() << " dim=" << dimension;
    return os.str();
}

int stratum_dimension(const std::vector<int>& partition, std::int64_t p) {
    if (partition.empty()) throw InvalidPartitionError("empty partition");
    int D = -2;
    int correction = 0;
    for (int e : partition) {
        if (e < 2) throw InvalidPartitionError("partition parts must be >= 2");
        if (e % p == 1) throw InvalidPartitionError("partition part = 1 mod p");
        D += e;
        correction += (e - 1) / static_cast<int>(p);
    }
    return D - 1 - correction;
}

StratumDescriptor make_stratum(std::int64_t p, std::vector<int> partition) {
    std::sort(partition.begin(), partition.end(), std::greater<int>());
    StratumDescriptor st;
    st.p = p;
    st.dimension = stratum_dimension(partition, p);  // validates
    int D = std::accumulate(partition.begin(), partition.end(), -2);
    if ((D * (p - 1)) % 2 != 0) throw InvalidPartitionError("non-integral genus");
    st.g = static_cast<int>(D * (p - 1) / 2);
    st.s = static_cast<int>((static_cast<std::int64_t>(partition.size()) - 1) * (p - 1));
    st.partition = std::move(partition);
    return st;
}

namespace {

void partitions_into(int total, int max_part, std::int64_t p, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
    if (total == 0) {
        out.push_back(cur);
        return;
    }
    for (int e = std::min(total, max_part); e >= 2; --e) {
        if (e % p == 1) continue;
        cur.push_back(e);
        partitions_into(total - e, e, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<StratumDescriptor> enumerate_strata(int g, std::int64_t p) {
    std::vector<StratumDescriptor> out;
    if (g < 1 || (2 * g) % (p - 1) != 0) return out;
    int D = static_cast<int>(2 * g / (p - 1));
    if (D < 1) return out;
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions_into(D + 2, D + 2, p, cur, parts);
    for (auto& e : parts) out.push_back(make_stratum(p, e));
    std::sort(out.begin(), out.end(), [](const StratumDescriptor& a, const StratumDescriptor& b) {
        if (a.s != b.s) return a.s < b.s;
        return a.partition > b.partition;
    });
    return out;
}

bool is_reference_stratum(const StratumDescriptor& st) {
    static const std::vector<StratumDescriptor> table = {
        make_stratum(3, {5}), make_stratum(3, {3, 2}),    make_stratum(7, {3}),    make_stratum(3, {6}),
        make_stratum(3, {3, 3}), make_stratum(3, {2, 2, 2}), make_stratum(5, {4}), make_stratum(5, {2, 2}),
    };
    return std::any_of(table.begin(), table.end(), [&](const StratumDescriptor& t) { return t == st; });
}

}  // namespace ascurves
