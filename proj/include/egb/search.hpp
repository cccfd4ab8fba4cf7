#pragma once

#include <string>
#include <utility>
#include <vector>

#include "egb/evaluation.hpp"
#include "egb/grouping.hpp"
#include "egb/model.hpp"

namespace egb {

struct GroupTrace {
    int group_index = 0;
    Window window;
    int best_rotation = 0;   // left-shift offset achieving the best eval
    double best_eval = 0.0;  // minimum over all window-size rotations
};

struct RunResult {
    int m = 0;
    Criterion criterion = Criterion::Index;
    std::vector<GroupTrace> traces;
    Permutation final_permutation;
    Timetable best_timetable;
    EvalResult best_evaluation;
    double best_eval = 0.0;
    long local_search_calls = 0;  // always n: one per rotation, summed over windows
};

// Deterministic greedy constructor: visits events in permutation order and
// places each at the feasible position of minimum placement_delta, scanning
// positions lexicographically by (day, start_slot, room index) so the earliest
// position wins ties. Events with no feasible position are left unplaced.
std::pair<Timetable, EvalResult> local_search(const Instance& inst, const Permutation& p,
                                              const EvalParams& params);

// Rotation scan: sort by the criterion, partition into m windows, and for each
// window in order evaluate local_search at every cyclic shift (the incoming
// order first), keep the best shift (ties to the smallest), apply it, and move
// on. Each window's best can therefore never be worse than the previous one's.
RunResult egb_run(const Instance& inst, int m, Criterion c, const EvalParams& params);

// One row per group: m,criterion,group,from,to,best_rotation,best_eval.
std::string trace_csv(const RunResult& r);

}  // namespace egb
