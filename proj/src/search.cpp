#include "egb/search.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

namespace egb {

namespace {

// Occupancy bookkeeping for one greedy construction. Placements are feasible
// by construction, so every cell is 0/1 and the per-student-day stats can be
// maintained incrementally.
class BuildState {
  public:
    BuildState(const Instance& inst, const EvalParams& params)
        : inst_(inst),
          params_(params),
          days_(inst.grid.days),
          slots_(inst.grid.slots_per_day),
          n_students_(static_cast<int>(inst.students.size())),
          student_busy_(inst.students.size() * days_ * slots_, 0),
          lecturer_busy_(inst.lecturers.size() * days_ * slots_, 0),
          room_busy_(inst.rooms.size() * days_ * slots_, 0),
          student_day_(inst.students.size() * days_) {
        fit_rooms_.resize(inst.events.size());
        for (const Event& e : inst.events) {
            const int enrollment = static_cast<int>(e.students.size());
            for (int r = 0; r < static_cast<int>(inst.rooms.size()); ++r)
                if (inst.rooms[r].capacity >= enrollment) fit_rooms_[e.index].push_back(r);
        }
    }

    // Greedy step: scan (day, start) pairs in order, keep the strict-minimum
    // soft delta among pairs with a free room, place at the earliest free room.
    bool place(const Event& e, Timetable& tt) {
        const int dur = e.duration;
        bool found = false;
        int best_day = 0, best_start = 0, best_room = 0;
        double best_delta = std::numeric_limits<double>::infinity();

        for (int d = 0; d < days_; ++d) {
            for (int start = 0; start + dur <= slots_; ++start) {
                if (clashes(e, d, start)) continue;

                long gap_delta = 0, single_delta = 0;
                for (int s : e.student_ords)
                    accumulate_day_delta(student_day_[s * days_ + d], start, dur, gap_delta,
                                         single_delta);
                const double last_delta = start + dur == slots_ ? e.weight : 0.0;
                const double delta =
                    soft_delta_total(params_, gap_delta, single_delta, last_delta, n_students_);
                if (found && delta >= best_delta) continue;

                const int room = first_free_room(e.index, d, start, dur);
                if (room < 0) continue;
                found = true;
                best_delta = delta;
                best_day = d;
                best_start = start;
                best_room = room;
            }
        }
        if (!found) {
            tt.unplaced.insert(e.id);
            return false;
        }
        apply(e, best_day, best_start, best_room);
        tt.assignments.emplace(e.id, Position{best_day, best_start, inst_.rooms[best_room].id});
        return true;
    }

  private:
    bool clashes(const Event& e, int day, int start) const {
        const int lec_base = (e.lecturer_ord * days_ + day) * slots_;
        for (int t = start; t < start + e.duration; ++t)
            if (lecturer_busy_[lec_base + t]) return true;
        for (int s : e.student_ords) {
            const int base = (s * days_ + day) * slots_;
            for (int t = start; t < start + e.duration; ++t)
                if (student_busy_[base + t]) return true;
        }
        return false;
    }

    int first_free_room(int event_index, int day, int start, int dur) const {
        for (int r : fit_rooms_[event_index]) {
            const int base = (r * days_ + day) * slots_;
            bool free = true;
            for (int t = start; t < start + dur; ++t)
                if (room_busy_[base + t]) {
                    free = false;
                    break;
                }
            if (free) return r;
        }
        return -1;
    }

    void apply(const Event& e, int day, int start, int room) {
        const int lec_base = (e.lecturer_ord * days_ + day) * slots_;
        const int room_base = (room * days_ + day) * slots_;
        for (int t = start; t < start + e.duration; ++t) {
            lecturer_busy_[lec_base + t] = 1;
            room_busy_[room_base + t] = 1;
        }
        for (int s : e.student_ords) {
            const int base = (s * days_ + day) * slots_;
            for (int t = start; t < start + e.duration; ++t) student_busy_[base + t] = 1;
            StudentDayStats& stats = student_day_[s * days_ + day];
            if (stats.occupied == 0) {
                stats.first = start;
                stats.last = start + e.duration - 1;
            } else {
                stats.first = std::min(stats.first, start);
                stats.last = std::max(stats.last, start + e.duration - 1);
            }
            stats.occupied += e.duration;
            ++stats.events;
        }
    }

    const Instance& inst_;
    const EvalParams& params_;
    int days_, slots_, n_students_;
    std::vector<unsigned char> student_busy_;
    std::vector<unsigned char> lecturer_busy_;
    std::vector<unsigned char> room_busy_;
    std::vector<StudentDayStats> student_day_;
    std::vector<std::vector<int>> fit_rooms_;  // per event index: capacity-sufficient rooms
};

void check_permutation(const Instance& inst, const Permutation& p) {
    if (static_cast<int>(p.size()) != inst.n())
        throw std::invalid_argument("permutation length " + std::to_string(p.size()) +
                                    " does not match event count " + std::to_string(inst.n()));
    std::vector<char> seen(p.size(), 0);
    for (int idx : p) {
        if (idx < 0 || idx >= inst.n() || seen[idx])
            throw std::invalid_argument("not a permutation of 0.." + std::to_string(inst.n() - 1));
        seen[idx] = 1;
    }
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::pair<Timetable, EvalResult> local_search(const Instance& inst, const Permutation& p,
                                              const EvalParams& params) {
    check_permutation(inst, p);
    BuildState state(inst, params);
    Timetable tt;
    for (int idx : p) state.place(inst.event_by_index(idx), tt);
    EvalResult ev = evaluate(inst, tt, params);
    return {std::move(tt), std::move(ev)};
}

RunResult egb_run(const Instance& inst, int m, Criterion c, const EvalParams& params) {
    const int n = inst.n();
    const Grouping grouping = partition(n, m);  // throws when m is out of range
    Permutation p = sort_events(inst, c);

    RunResult result;
    result.m = m;
    result.criterion = c;
    result.traces.reserve(m);

    long calls = 0;
    for (int gi = 0; gi < m; ++gi) {
        const Window w = grouping.windows[gi];
        const Permutation incoming = p;

        int best_rotation = 0;
        double best_eval = std::numeric_limits<double>::infinity();
        for (int k = 0; k < w.size(); ++k) {
            const auto [tt, ev] = local_search(inst, p, params);
            ++calls;
            if (ev.total < best_eval) {
                best_eval = ev.total;
                best_rotation = k;
            }
            p = rotate_window(std::move(p), w.from, w.to, 1);
        }
        if (p != incoming)
            throw std::logic_error("rotation scan did not restore the window to its incoming order");
        p = rotate_window(std::move(p), w.from, w.to, best_rotation);

        if (gi > 0 && best_eval > result.traces.back().best_eval)
            throw std::logic_error("group " + std::to_string(gi) +
                                   " regressed past the previous group's best");
        result.traces.push_back({gi, w, best_rotation, best_eval});
    }
    if (calls != n) throw std::logic_error("local search call count diverged from n");

    // Re-derive the winning timetable; deterministic, so it reproduces the
    // last window's best exactly. Not counted as a scan call.
    auto [tt, ev] = local_search(inst, p, params);
    if (ev.total != result.traces.back().best_eval)
        throw std::logic_error("re-derived timetable does not match the recorded best");

    result.final_permutation = std::move(p);
    result.best_timetable = std::move(tt);
    result.best_evaluation = std::move(ev);
    result.best_eval = result.best_evaluation.total;
    result.local_search_calls = calls;
    return result;
}

std::string trace_csv(const RunResult& r) {
    std::string out = "m,criterion,group,from,to,best_rotation,best_eval\n";
    for (const GroupTrace& t : r.traces) {
        out += std::to_string(r.m) + "," + to_string(r.criterion) + "," +
               std::to_string(t.group_index) + "," + std::to_string(t.window.from) + "," +
               std::to_string(t.window.to) + "," + std::to_string(t.best_rotation) + "," +
               fixed3(t.best_eval) + "\n";
    }
    return out;
}

}  // namespace egb
