#include "dyndist/window.hpp"

#include <sstream>
#include <stdexcept>

namespace dyndist {

std::string SlidingWindow::serialize() const {
    std::ostringstream out;
    for (std::int8_t st : statuses_) {
        out << static_cast<int>(st) << ' ';
    }
    out << observed_;
    return out.str();
}

SlidingWindow SlidingWindow::deserialize(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> values;
    int v;
    while (in >> v) {
        values.push_back(v);
    }
    if (values.empty()) {
        throw std::runtime_error("sliding window record is empty");
    }
    SlidingWindow w(static_cast<int>(values.size()) - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (values[i] < -1 || values[i] > 1) {
            throw std::runtime_error("sliding window status out of range");
        }
        w.statuses_[i] = static_cast<std::int8_t>(values[i]);
    }
    w.observed_ = values.back();
    return w;
}

}  // namespace dyndist
