#include "surprise/electorate.hpp"

#include <stdexcept>

namespace surprise {

Electorate Electorate::with_counts(std::int64_t n1, std::int64_t n2) {
    if (n1 < 0 || n2 < 0) throw std::invalid_argument("electorate: negative class count");
    if (n1 + n2 == 0) throw std::invalid_argument("electorate: zero total population");
    return Electorate(n1, n2);
}

}  // namespace surprise
