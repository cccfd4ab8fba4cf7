#include "egb/evaluation.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace egb {

double combine_total(const EvalParams& p, const HardCounts& hard, const SoftCounts& soft,
                     long unplaced, int student_count) {
    if (student_count < 1) throw std::invalid_argument("instance declares no students");
    const double soft_sum = p.w_gap * static_cast<double>(soft.gap_slots) +
                            p.w_single * static_cast<double>(soft.single_event_days) +
                            p.w_last * soft.last_slot_weighted;
    return soft_sum / static_cast<double>(student_count) +
           p.unplaced_penalty * static_cast<double>(unplaced) +
           p.hard_penalty * static_cast<double>(hard.sum());
}

namespace {

struct Occupancy {
    int days, slots;
    std::vector<int> student;    // [ord * days * slots + day * slots + t]
    std::vector<int> lecturer;
    std::vector<int> room;
    std::vector<int> student_day_events;  // [ord * days + day]

    Occupancy(const Instance& inst)
        : days(inst.grid.days),
          slots(inst.grid.slots_per_day),
          student(inst.students.size() * days * slots, 0),
          lecturer(inst.lecturers.size() * days * slots, 0),
          room(inst.rooms.size() * days * slots, 0),
          student_day_events(inst.students.size() * days, 0) {}

    int cell(int ord, int day, int t) const { return (ord * days + day) * slots + t; }
};

long excess(const std::vector<int>& counts) {
    long total = 0;
    for (int c : counts)
        if (c > 1) total += c - 1;
    return total;
}

}  // namespace

EvalResult evaluate(const Instance& inst, const Timetable& tt, const EvalParams& p) {
    const int days = inst.grid.days;
    const int slots = inst.grid.slots_per_day;

    for (const auto& id : tt.unplaced) {
        if (!inst.event_by_id(id))
            throw std::invalid_argument("timetable lists unknown event '" + id + "' as unplaced");
        if (tt.assignments.count(id))
            throw std::invalid_argument("event '" + id + "' is both placed and unplaced");
    }

    EvalResult result;
    result.unplaced = static_cast<long>(tt.unplaced.size());

    Occupancy occ(inst);

    // Events walked in index order so the weighted last-slot sum is stable.
    for (int index = 0; index < inst.n(); ++index) {
        const Event& e = inst.event_by_index(index);
        auto it = tt.assignments.find(e.id);
        if (it == tt.assignments.end()) continue;
        const Position& pos = it->second;

        const int room = inst.room_ord(pos.room);
        if (room < 0)
            throw std::invalid_argument("timetable references unknown room '" + pos.room + "'");
        if (inst.rooms[room].capacity < static_cast<int>(e.students.size()))
            ++result.hard.capacity;

        const bool day_valid = pos.day >= 0 && pos.day < days;
        const bool in_grid =
            day_valid && pos.start_slot >= 0 && pos.start_slot + e.duration <= slots;
        if (!in_grid) ++result.hard.out_of_grid;
        if (!day_valid) continue;  // no slots to occupy

        const int lo = std::max(0, pos.start_slot);
        const int hi = std::min(slots, pos.start_slot + e.duration);
        for (int t = lo; t < hi; ++t) {
            for (int s : e.student_ords) ++occ.student[occ.cell(s, pos.day, t)];
            ++occ.lecturer[occ.cell(e.lecturer_ord, pos.day, t)];
            ++occ.room[occ.cell(room, pos.day, t)];
        }
        for (int s : e.student_ords) ++occ.student_day_events[s * days + pos.day];
        if (lo < hi && hi == slots) result.soft.last_slot_weighted += e.weight;
    }

    for (const auto& [id, pos] : tt.assignments)
        if (!inst.event_by_id(id))
            throw std::invalid_argument("timetable references unknown event '" + id + "'");

    result.hard.student_clash = excess(occ.student);
    result.hard.lecturer_clash = excess(occ.lecturer);
    result.hard.room_clash = excess(occ.room);

    for (size_t s = 0; s < inst.students.size(); ++s) {
        for (int d = 0; d < days; ++d) {
            int first = -1, last = -1, occupied = 0;
            const int base = (static_cast<int>(s) * days + d) * slots;
            for (int t = 0; t < slots; ++t) {
                if (occ.student[base + t] > 0) {
                    if (first < 0) first = t;
                    last = t;
                    ++occupied;
                }
            }
            if (occupied > 0) result.soft.gap_slots += (last - first + 1) - occupied;
            if (occ.student_day_events[s * days + d] == 1) ++result.soft.single_event_days;
        }
    }

    result.total = combine_total(p, result.hard, result.soft, result.unplaced,
                                 static_cast<int>(inst.students.size()));
    return result;
}

namespace {

bool spans_overlap(int a_start, int a_len, int b_start, int b_len) {
    return a_start < b_start + b_len && b_start < a_start + a_len;
}

bool share_student(const std::vector<int>& a, const std::vector<int>& b) {
    size_t i = 0, j = 0;  // both sorted
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return true;
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return false;
}

}  // namespace

bool is_feasible_position(const Instance& inst, const Timetable& tt, const Event& e,
                          const Position& pos) {
    if (tt.assignments.count(e.id))
        throw std::invalid_argument("event '" + e.id + "' is already placed");
    const int room = inst.room_ord(pos.room);
    if (room < 0) throw std::invalid_argument("unknown room '" + pos.room + "'");

    // H5: inside the grid, within one day
    if (pos.day < 0 || pos.day >= inst.grid.days) return false;
    if (pos.start_slot < 0 || pos.start_slot + e.duration > inst.grid.slots_per_day) return false;
    // H4: capacity
    if (inst.rooms[room].capacity < static_cast<int>(e.students.size())) return false;

    for (const auto& [id, opos] : tt.assignments) {
        const Event* other = inst.event_by_id(id);
        if (!other) throw std::invalid_argument("timetable references unknown event '" + id + "'");
        if (opos.day != pos.day) continue;
        if (!spans_overlap(pos.start_slot, e.duration, opos.start_slot, other->duration)) continue;
        if (opos.room == pos.room) return false;                       // H3
        if (other->lecturer_ord == e.lecturer_ord) return false;       // H2
        if (share_student(other->student_ords, e.student_ords)) return false;  // H1
    }
    return true;
}

void accumulate_day_delta(const StudentDayStats& s, int start, int duration, long& gap_delta,
                          long& single_delta) {
    if (s.occupied > 0) {
        const int new_first = std::min(s.first, start);
        const int new_last = std::max(s.last, start + duration - 1);
        const int old_gaps = (s.last - s.first + 1) - s.occupied;
        const int new_gaps = (new_last - new_first + 1) - (s.occupied + duration);
        gap_delta += new_gaps - old_gaps;
    }
    if (s.events == 0)
        ++single_delta;
    else if (s.events == 1)
        --single_delta;
}

double soft_delta_total(const EvalParams& p, long gap_delta, long single_delta,
                        double last_delta, int student_count) {
    return (p.w_gap * static_cast<double>(gap_delta) +
            p.w_single * static_cast<double>(single_delta) + p.w_last * last_delta) /
           static_cast<double>(student_count);
}

double placement_delta(const Instance& inst, const Timetable& tt, const Event& e,
                       const Position& pos, const EvalParams& p) {
    if (!is_feasible_position(inst, tt, e, pos))
        throw std::invalid_argument("placement_delta requires a feasible position");

    const int slots = inst.grid.slots_per_day;
    long gap_delta = 0, single_delta = 0;

    std::vector<char> occupied(slots);
    for (int s : e.student_ords) {
        std::fill(occupied.begin(), occupied.end(), 0);
        StudentDayStats stats;
        for (const auto& [id, opos] : tt.assignments) {
            if (opos.day != pos.day) continue;
            const Event& other = *inst.event_by_id(id);
            if (!std::binary_search(other.student_ords.begin(), other.student_ords.end(), s))
                continue;
            ++stats.events;
            const int lo = std::max(0, opos.start_slot);
            const int hi = std::min(slots, opos.start_slot + other.duration);
            for (int t = lo; t < hi; ++t) occupied[t] = 1;
        }
        for (int t = 0; t < slots; ++t) {
            if (!occupied[t]) continue;
            if (stats.occupied == 0) stats.first = t;
            stats.last = t;
            ++stats.occupied;
        }
        accumulate_day_delta(stats, pos.start_slot, e.duration, gap_delta, single_delta);
    }

    const double last_delta = pos.start_slot + e.duration == slots ? e.weight : 0.0;
    double delta = soft_delta_total(p, gap_delta, single_delta, last_delta,
                                    static_cast<int>(inst.students.size()));
    if (tt.unplaced.count(e.id)) delta -= p.unplaced_penalty;
    return delta;
}

EvalParams eval_params_from_config(const std::string& text, EvalParams base) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("$: expected a JSON object");
    auto eval = doc.find("eval");
    if (eval == doc.end()) return base;
    if (!eval->is_object()) throw ParseError("eval: expected an object");

    for (auto it = eval->begin(); it != eval->end(); ++it) {
        if (!it.value().is_number())
            throw ParseError("eval." + it.key() + ": expected a number");
        const double v = it.value().get<double>();
        if (it.key() == "w_gap")
            base.w_gap = v;
        else if (it.key() == "w_single")
            base.w_single = v;
        else if (it.key() == "w_last")
            base.w_last = v;
        else if (it.key() == "unplaced_penalty")
            base.unplaced_penalty = v;
        else if (it.key() == "hard_penalty")
            base.hard_penalty = v;
        else
            throw ParseError("eval." + it.key() + ": unknown parameter");
    }
    if (base.w_gap < 0 || base.w_single < 0 || base.w_last < 0)
        throw ParseError("eval: weights must be >= 0");
    if (!(base.unplaced_penalty > 0) || !(base.hard_penalty > 0))
        throw ParseError("eval: unplaced_penalty and hard_penalty must be > 0");
    return base;
}

}  // namespace egb
