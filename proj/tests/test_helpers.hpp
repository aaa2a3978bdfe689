#ifndef PSM1D_TEST_HELPERS_HPP
#define PSM1D_TEST_HELPERS_HPP

#include <ostream>
#include <sstream>
#include <vector>

#include "psm1d/interface_vector.hpp"
#include "psm1d/numerics.hpp"

namespace psm1d {

// Diagnostics-only printers so doctest failures show values.
template <class R>
std::ostream& operator<<(std::ostream& os, const block_values<R>& blk) {
    return os << '(' << scalar_traits<R>::to_string(blk.left) << ", "
              << scalar_traits<R>::to_string(blk.right) << ')';
}

template <class R>
std::ostream& operator<<(std::ostream& os, const interface_vector<R>& v) {
    os << '[';
    for (int j = 0; j < v.block_count(); ++j) {
        if (j) os << ' ';
        os << v[j];
    }
    return os << ']';
}

inline rational rat(const char* text) {
    return scalar_traits<rational>::from_string(text);
}

template <class R>
interface_vector<R> vec_from(std::initializer_list<const char*> flat_text) {
    std::vector<R> flat;
    for (const char* t : flat_text) {
        if constexpr (scalar_traits<R>::backend == backend_kind::exact)
            flat.push_back(scalar_traits<rational>::from_string(t));
        else
            flat.push_back(scalar_traits<rational>::to_double(scalar_traits<rational>::from_string(t)));
    }
    return interface_vector<R>::from_flat(flat);
}

} // namespace psm1d

#endif
