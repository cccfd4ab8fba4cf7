#pragma once

#include <string>

#include "egb/model.hpp"

namespace egb {

struct EvalParams {
    double w_gap = 1.0;     // per idle student-slot between classes
    double w_single = 1.0;  // per student-day with exactly one event
    double w_last = 1.0;    // per event in a day's final slot, scaled by event weight
    double unplaced_penalty = 10.0;
    double hard_penalty = 100.0;

    bool operator==(const EvalParams&) const = default;
};

struct HardCounts {
    long student_clash = 0;   // per (student, slot): occupants - 1
    long lecturer_clash = 0;
    long room_clash = 0;
    long capacity = 0;        // events whose room seats fewer than their enrollment
    long out_of_grid = 0;     // events not fully inside one day of the grid

    long sum() const {
        return student_clash + lecturer_clash + room_clash + capacity + out_of_grid;
    }
    bool operator==(const HardCounts&) const = default;
};

struct SoftCounts {
    long gap_slots = 0;          // idle slots between a student's first and last class of a day
    long single_event_days = 0;  // (student, day) pairs with exactly one event
    double last_slot_weighted = 0.0;

    bool operator==(const SoftCounts&) const = default;
};

struct EvalResult {
    HardCounts hard;
    SoftCounts soft;
    long unplaced = 0;
    double total = 0.0;

    bool operator==(const EvalResult&) const = default;
};

// total = (w_gap*gaps + w_single*singles + w_last*last_weighted) / |students|
//         + U*unplaced + H*sum(hard)
double combine_total(const EvalParams& p, const HardCounts& hard, const SoftCounts& soft,
                     long unplaced, int student_count);

// Scores an arbitrary (possibly partial, possibly violating) timetable.
// Pure function of its inputs; throws std::invalid_argument on unknown ids or
// an event listed both placed and unplaced.
EvalResult evaluate(const Instance& inst, const Timetable& tt, const EvalParams& p);

// True iff placing e at pos violates none of the hard constraints against the
// already-placed events: student clash, lecturer clash, room clash, room
// capacity, and fit inside one day of the grid.
bool is_feasible_position(const Instance& inst, const Timetable& tt, const Event& e,
                          const Position& pos);

// Exact incremental cost of a feasible placement:
// evaluate(tt with e at pos) - evaluate(tt), without the two full passes.
double placement_delta(const Instance& inst, const Timetable& tt, const Event& e,
                       const Position& pos, const EvalParams& p);

// Per-student-day occupancy summary; the unit the soft-constraint deltas are
// computed from.
struct StudentDayStats {
    int occupied = 0;  // occupied slots (union)
    int first = 0;
    int last = -1;
    int events = 0;    // events attended that day
};

// Soft-component change from adding a non-overlapping [start, start+duration)
// block to one student's day.
void accumulate_day_delta(const StudentDayStats& s, int start, int duration,
                          long& gap_delta, long& single_delta);

double soft_delta_total(const EvalParams& p, long gap_delta, long single_delta,
                        double last_delta, int student_count);

// Reads the optional {"eval": {...}} object of a config document; absent keys
// keep their defaults. Throws ParseError on malformed JSON or negative values.
EvalParams eval_params_from_config(const std::string& text, EvalParams base = {});

}  // namespace egb
