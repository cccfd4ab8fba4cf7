#include "egb/grouping.hpp"

#include <algorithm>
#include <stdexcept>

namespace egb {

const std::string& to_string(Criterion c) {
    static const std::string names[] = {"index", "weight", "number", "duration"};
    return names[static_cast<int>(c)];
}

Criterion criterion_from_string(const std::string& name) {
    for (Criterion c : kAllCriteria)
        if (to_string(c) == name) return c;
    throw std::invalid_argument("unknown criterion '" + name +
                                "' (expected index, weight, number or duration)");
}

Grouping partition(int n, int m) {
    if (n < 4) throw std::invalid_argument("n must be at least 4, got " + std::to_string(n));
    const int m_max = max_group_count(n);
    if (m < 2 || m > m_max)
        throw std::out_of_range("m=" + std::to_string(m) + " out of range [2, " +
                                std::to_string(m_max) + "] for n=" + std::to_string(n));

    const int base = n / m;
    const int larger = n % m;  // this many windows get one extra event
    Grouping g{n, m, {}};
    g.windows.reserve(m);
    int from = 0;
    for (int i = 0; i < m; ++i) {
        const int size = base + (i < larger ? 1 : 0);
        g.windows.push_back({from, from + size - 1});
        from += size;
    }
    return g;
}

std::string signature(const Grouping& g) {
    std::string out;
    int i = 0;
    const int m = static_cast<int>(g.windows.size());
    while (i < m) {
        const int size = g.windows[i].size();
        int count = 0;
        while (i < m && g.windows[i].size() == size) {
            ++count;
            ++i;
        }
        if (!out.empty()) out += "; ";
        out += std::to_string(count) + "x" + std::to_string(size);
    }
    return out;
}

Permutation sort_events(const Instance& inst, Criterion c) {
    Permutation p(inst.n());
    for (int i = 0; i < inst.n(); ++i) p[i] = inst.events[i].index;
    if (c == Criterion::Index) {
        std::sort(p.begin(), p.end());
        return p;
    }
    auto key = [&](int index) -> double {
        const Event& e = inst.event_by_index(index);
        switch (c) {
            case Criterion::Weight: return e.weight;
            case Criterion::Number: return static_cast<double>(e.students.size());
            case Criterion::Duration: return static_cast<double>(e.duration);
            default: return 0.0;
        }
    };
    std::sort(p.begin(), p.end(), [&](int a, int b) {
        const double ka = key(a), kb = key(b);
        if (ka != kb) return ka > kb;  // descending
        return a < b;
    });
    return p;
}

Permutation rotate_window(Permutation p, int from, int to, long k) {
    const int n = static_cast<int>(p.size());
    if (from < 0 || to < from || to >= n)
        throw std::out_of_range("rotate_window: bad window [" + std::to_string(from) + ", " +
                                std::to_string(to) + "] for n=" + std::to_string(n));
    if (k < 0) throw std::out_of_range("rotate_window: negative shift");
    const long len = to - from + 1;
    const long r = k % len;
    std::rotate(p.begin() + from, p.begin() + from + r, p.begin() + to + 1);
    return p;
}

}  // namespace egb
