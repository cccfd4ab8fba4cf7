#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace egb {

struct EvalResult;

// Raised by the file parsers; the message carries a path to the offending
// element, e.g. "events[3].lecturer: dangling lecturer reference 'l99'".
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Event {
    std::string id;
    int index = 0;       // ordinal, unique over the instance, covers 0..n-1
    double weight = 1.0; // importance coefficient, > 0
    int duration = 1;    // consecutive timeslots, >= 1
    std::string lecturer;
    std::vector<std::string> students;  // non-empty, no duplicates

    // Resolved by Instance::finalize().
    int lecturer_ord = -1;
    std::vector<int> student_ords;

    bool operator==(const Event& o) const {
        return id == o.id && index == o.index && weight == o.weight &&
               duration == o.duration && lecturer == o.lecturer && students == o.students;
    }
};

struct Room {
    std::string id;
    int capacity = 1;

    bool operator==(const Room&) const = default;
};

struct TimeGrid {
    int days = 5;
    int slots_per_day = 8;

    int total_slots() const { return days * slots_per_day; }
    bool operator==(const TimeGrid&) const = default;
};

struct Instance {
    std::string name;
    TimeGrid grid;
    std::vector<Room> rooms;
    std::vector<std::string> lecturers;
    std::vector<std::string> students;
    std::vector<Event> events;

    int n() const { return static_cast<int>(events.size()); }

    // Rebuilds the id lookup tables and the events' resolved ordinals.
    // Throws ParseError on duplicate ids or dangling references.
    void finalize();

    int room_ord(const std::string& id) const;      // -1 when unknown
    int student_ord(const std::string& id) const;   // -1 when unknown
    int lecturer_ord(const std::string& id) const;  // -1 when unknown
    const Event* event_by_id(const std::string& id) const;   // nullptr when unknown
    const Event& event_by_index(int index) const;

    bool operator==(const Instance& o) const {
        return name == o.name && grid == o.grid && rooms == o.rooms &&
               lecturers == o.lecturers && students == o.students && events == o.events;
    }

  private:
    std::map<std::string, int> room_ords_;
    std::map<std::string, int> student_ords_;
    std::map<std::string, int> lecturer_ords_;
    std::map<std::string, int> event_ords_;   // id -> position in events
    std::vector<int> event_pos_by_index_;     // event index -> position in events
};

struct Position {
    int day = 0;
    int start_slot = 0;
    std::string room;

    bool operator==(const Position&) const = default;
};

// Assignments and unplaced together cover the scheduled part of an instance;
// events absent from both are simply not scheduled yet (partial timetable).
struct Timetable {
    std::map<std::string, Position> assignments;  // event id -> position
    std::set<std::string> unplaced;

    bool operator==(const Timetable&) const = default;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string path;     // e.g. "events[3].duration"
    std::string message;
};

// Parses and validates an instance document (schema in the README).
// Throws ParseError on malformed JSON, schema violations, or any
// error-severity diagnostic.
Instance parse_instance(const std::string& text);

// Checks every instance invariant. Empty result iff all hold; events that fit
// no room produce warnings, everything else errors.
std::vector<Diagnostic> validate_instance(const Instance& inst);

std::string serialize_instance(const Instance& inst);

struct TimetableFile {
    std::string instance;  // instance name
    Timetable timetable;
};

// Timetable document with its evaluation breakdown; assignments are emitted
// sorted by event id.
std::string serialize_timetable(const Instance& inst, const Timetable& tt,
                                const EvalResult& ev);

TimetableFile parse_timetable(const std::string& text);

}  // namespace egb
