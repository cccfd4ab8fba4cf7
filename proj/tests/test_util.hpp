#pragma once

#include <string>
#include <vector>

#include "egb/harness.hpp"
#include "egb/model.hpp"

namespace egb::test {

struct EventSpec {
    std::string id;
    int index;
    double weight;
    int duration;
    std::string lecturer;
    std::vector<std::string> students;
};

inline Instance make_instance(TimeGrid grid, std::vector<Room> rooms,
                              std::vector<std::string> lecturers,
                              std::vector<std::string> students,
                              std::vector<EventSpec> events) {
    Instance inst;
    inst.name = "test";
    inst.grid = grid;
    inst.rooms = std::move(rooms);
    inst.lecturers = std::move(lecturers);
    inst.students = std::move(students);
    for (auto& e : events)
        inst.events.push_back(
            {e.id, e.index, e.weight, e.duration, e.lecturer, e.students, -1, {}});
    inst.finalize();
    return inst;
}

// Four one-slot events, two students, one lecturer, one room, a 1x4 grid.
inline Instance tiny_instance() {
    return make_instance({1, 4}, {{"r1", 2}}, {"l1"}, {"s1", "s2"},
                         {{"e1", 0, 1.0, 1, "l1", {"s1"}},
                          {"e2", 1, 1.0, 1, "l1", {"s2"}},
                          {"e3", 2, 1.0, 1, "l1", {"s1", "s2"}},
                          {"e4", 3, 1.0, 1, "l1", {"s2"}}});
}

// Small seeded instances with varied shapes; tight grids so some events can
// end up unplaced.
inline Instance random_instance(int n, std::uint64_t seed) {
    GenShape shape;
    shape.events = n;
    shape.students = std::max(4, n + static_cast<int>(seed % 7));
    shape.lecturers = std::max(1, n / 4);
    shape.rooms = std::max(1, n / 5);
    shape.days = 1 + static_cast<int>(seed % 3);
    shape.slots_per_day = 4 + static_cast<int>(seed % 4);
    shape.seed = seed;
    return generate_instance(shape);
}

}  // namespace egb::test
