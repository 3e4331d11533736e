#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace blockpar {

// All counting results are exact; no floating point is used anywhere in the
// counting paths.
using BigCount = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Division that must leave no remainder; a remainder means a combinatorial
// identity was violated somewhere upstream.
inline BigCount exact_div(const BigCount& num, const BigCount& den, const char* context) {
    BigCount q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) {
        throw std::logic_error(std::string("non-exact division in ") + context);
    }
    return q;
}

// Factorials 0..limit, computed once per table.
class FactorialTable {
public:
    explicit FactorialTable(int limit) {
        if (limit < 0) throw std::invalid_argument("factorial table limit must be >= 0");
        table_.reserve(static_cast<std::size_t>(limit) + 1);
        table_.emplace_back(1);
        for (int k = 1; k <= limit; ++k) {
            table_.push_back(table_.back() * k);
        }
    }

    const BigCount& operator()(int k) const { return table_.at(static_cast<std::size_t>(k)); }

    // Requires n <= limit.
    BigCount binomial(int n, int k) const {
        if (k < 0 || k > n) return 0;
        return exact_div((*this)(n), (*this)(k) * (*this)(n - k), "binomial");
    }

private:
    std::vector<BigCount> table_;
};

}  // namespace blockpar
