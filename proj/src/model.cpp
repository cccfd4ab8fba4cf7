#include "egb/model.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "egb/evaluation.hpp"

namespace egb {

using ordered_json = nlohmann::ordered_json;

void Instance::finalize() {
    room_ords_.clear();
    student_ords_.clear();
    lecturer_ords_.clear();
    event_ords_.clear();
    event_pos_by_index_.assign(events.size(), -1);

    for (int i = 0; i < static_cast<int>(rooms.size()); ++i)
        if (!room_ords_.emplace(rooms[i].id, i).second)
            throw ParseError("rooms[" + std::to_string(i) + "].id: duplicate room id '" +
                             rooms[i].id + "'");
    for (int i = 0; i < static_cast<int>(lecturers.size()); ++i)
        if (!lecturer_ords_.emplace(lecturers[i], i).second)
            throw ParseError("lecturers[" + std::to_string(i) + "]: duplicate lecturer id '" +
                             lecturers[i] + "'");
    for (int i = 0; i < static_cast<int>(students.size()); ++i)
        if (!student_ords_.emplace(students[i], i).second)
            throw ParseError("students[" + std::to_string(i) + "]: duplicate student id '" +
                             students[i] + "'");

    for (int i = 0; i < n(); ++i) {
        Event& e = events[i];
        const std::string path = "events[" + std::to_string(i) + "]";
        if (!event_ords_.emplace(e.id, i).second)
            throw ParseError(path + ".id: duplicate event id '" + e.id + "'");
        if (e.index < 0 || e.index >= n())
            throw ParseError(path + ".index: index " + std::to_string(e.index) +
                             " outside 0.." + std::to_string(n() - 1));
        if (event_pos_by_index_[e.index] != -1)
            throw ParseError(path + ".index: duplicate index " + std::to_string(e.index));
        event_pos_by_index_[e.index] = i;

        auto lec = lecturer_ords_.find(e.lecturer);
        if (lec == lecturer_ords_.end())
            throw ParseError(path + ".lecturer: dangling lecturer reference '" + e.lecturer + "'");
        e.lecturer_ord = lec->second;

        e.student_ords.clear();
        e.student_ords.reserve(e.students.size());
        for (size_t s = 0; s < e.students.size(); ++s) {
            auto it = student_ords_.find(e.students[s]);
            if (it == student_ords_.end())
                throw ParseError(path + ".students[" + std::to_string(s) +
                                 "]: dangling student reference '" + e.students[s] + "'");
            e.student_ords.push_back(it->second);
        }
        std::sort(e.student_ords.begin(), e.student_ords.end());
        for (size_t s = 1; s < e.student_ords.size(); ++s)
            if (e.student_ords[s] == e.student_ords[s - 1])
                throw ParseError(path + ".students: duplicate student '" +
                                 students[e.student_ords[s]] + "'");
    }
}

int Instance::room_ord(const std::string& id) const {
    auto it = room_ords_.find(id);
    return it == room_ords_.end() ? -1 : it->second;
}

int Instance::student_ord(const std::string& id) const {
    auto it = student_ords_.find(id);
    return it == student_ords_.end() ? -1 : it->second;
}

int Instance::lecturer_ord(const std::string& id) const {
    auto it = lecturer_ords_.find(id);
    return it == lecturer_ords_.end() ? -1 : it->second;
}

const Event* Instance::event_by_id(const std::string& id) const {
    auto it = event_ords_.find(id);
    return it == event_ords_.end() ? nullptr : &events[it->second];
}

const Event& Instance::event_by_index(int index) const {
    if (index < 0 || index >= n() || event_pos_by_index_[index] < 0)
        throw std::out_of_range("no event with index " + std::to_string(index));
    return events[event_pos_by_index_[index]];
}

namespace {

const ordered_json& require(const ordered_json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + ": missing required field '" + key + "'");
    return *it;
}

std::string get_string(const ordered_json& j, const char* key, const std::string& path) {
    const auto& v = require(j, key, path);
    if (!v.is_string()) throw ParseError(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

long get_int(const ordered_json& j, const char* key, const std::string& path) {
    const auto& v = require(j, key, path);
    if (!v.is_number_integer()) throw ParseError(path + "." + key + ": expected an integer");
    return v.get<long>();
}

double get_number(const ordered_json& j, const char* key, const std::string& path) {
    const auto& v = require(j, key, path);
    if (!v.is_number()) throw ParseError(path + "." + key + ": expected a number");
    return v.get<double>();
}

const ordered_json& get_array(const ordered_json& j, const char* key, const std::string& path) {
    const auto& v = require(j, key, path);
    if (!v.is_array()) throw ParseError(path + "." + key + ": expected an array");
    return v;
}

long get_positive_int(const ordered_json& j, const char* key, const std::string& path) {
    long v = get_int(j, key, path);
    if (v < 1)
        throw ParseError(path + "." + key + ": must be >= 1, got " + std::to_string(v));
    return v;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("$: expected a JSON object");

    Instance inst;
    inst.name = get_string(doc, "name", "$");
    inst.grid.days = static_cast<int>(get_positive_int(doc, "days", "$"));
    inst.grid.slots_per_day = static_cast<int>(get_positive_int(doc, "slots_per_day", "$"));

    const auto& rooms = get_array(doc, "rooms", "$");
    for (size_t i = 0; i < rooms.size(); ++i) {
        const std::string path = "rooms[" + std::to_string(i) + "]";
        if (!rooms[i].is_object()) throw ParseError(path + ": expected an object");
        Room r;
        r.id = get_string(rooms[i], "id", path);
        r.capacity = static_cast<int>(get_positive_int(rooms[i], "capacity", path));
        inst.rooms.push_back(std::move(r));
    }

    for (const char* key : {"lecturers", "students"}) {
        const auto& arr = get_array(doc, key, "$");
        for (size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_string())
                throw ParseError(std::string(key) + "[" + std::to_string(i) +
                                 "]: expected a string id");
            auto id = arr[i].get<std::string>();
            if (key[0] == 'l')
                inst.lecturers.push_back(std::move(id));
            else
                inst.students.push_back(std::move(id));
        }
    }

    const auto& events = get_array(doc, "events", "$");
    for (size_t i = 0; i < events.size(); ++i) {
        const std::string path = "events[" + std::to_string(i) + "]";
        if (!events[i].is_object()) throw ParseError(path + ": expected an object");
        Event e;
        e.id = get_string(events[i], "id", path);
        e.index = static_cast<int>(get_int(events[i], "index", path));
        e.weight = get_number(events[i], "weight", path);
        if (!(e.weight > 0.0))
            throw ParseError(path + ".weight: must be > 0, got " + std::to_string(e.weight));
        e.duration = static_cast<int>(get_positive_int(events[i], "duration", path));
        e.lecturer = get_string(events[i], "lecturer", path);
        const auto& studs = get_array(events[i], "students", path);
        if (studs.empty()) throw ParseError(path + ".students: must be non-empty");
        for (size_t s = 0; s < studs.size(); ++s) {
            if (!studs[s].is_string())
                throw ParseError(path + ".students[" + std::to_string(s) +
                                 "]: expected a string id");
            e.students.push_back(studs[s].get<std::string>());
        }
        inst.events.push_back(std::move(e));
    }

    if (inst.n() < 4)
        throw ParseError("events: at least 4 events required, got " + std::to_string(inst.n()));

    inst.finalize();  // throws on duplicate ids / dangling references

    for (const Diagnostic& d : validate_instance(inst))
        if (d.severity == Diagnostic::Severity::Error) throw ParseError(d.path + ": " + d.message);
    return inst;
}

std::vector<Diagnostic> validate_instance(const Instance& inst) {
    std::vector<Diagnostic> out;
    auto error = [&](std::string path, std::string msg) {
        out.push_back({Diagnostic::Severity::Error, std::move(path), std::move(msg)});
    };
    auto warn = [&](std::string path, std::string msg) {
        out.push_back({Diagnostic::Severity::Warning, std::move(path), std::move(msg)});
    };

    if (inst.grid.days < 1) error("days", "must be >= 1");
    if (inst.grid.slots_per_day < 1) error("slots_per_day", "must be >= 1");
    if (inst.n() < 4) error("events", "at least 4 events required");

    std::set<std::string> room_ids, lecturer_ids, student_ids, event_ids;
    int max_capacity = 0;
    for (size_t i = 0; i < inst.rooms.size(); ++i) {
        const std::string path = "rooms[" + std::to_string(i) + "]";
        if (inst.rooms[i].capacity < 1) error(path + ".capacity", "must be >= 1");
        if (!room_ids.insert(inst.rooms[i].id).second)
            error(path + ".id", "duplicate room id '" + inst.rooms[i].id + "'");
        max_capacity = std::max(max_capacity, inst.rooms[i].capacity);
    }
    for (size_t i = 0; i < inst.lecturers.size(); ++i)
        if (!lecturer_ids.insert(inst.lecturers[i]).second)
            error("lecturers[" + std::to_string(i) + "]", "duplicate lecturer id");
    for (size_t i = 0; i < inst.students.size(); ++i)
        if (!student_ids.insert(inst.students[i]).second)
            error("students[" + std::to_string(i) + "]", "duplicate student id");

    std::set<int> seen_indices;
    for (int i = 0; i < inst.n(); ++i) {
        const Event& e = inst.events[i];
        const std::string path = "events[" + std::to_string(i) + "]";
        if (!event_ids.insert(e.id).second) error(path + ".id", "duplicate event id '" + e.id + "'");
        if (e.index < 0 || e.index >= inst.n())
            error(path + ".index", "index " + std::to_string(e.index) + " outside 0.." +
                                       std::to_string(inst.n() - 1));
        else if (!seen_indices.insert(e.index).second)
            error(path + ".index", "duplicate index " + std::to_string(e.index));
        if (!(e.weight > 0.0)) error(path + ".weight", "must be > 0");
        if (e.duration < 1) error(path + ".duration", "must be >= 1");
        if (e.duration > inst.grid.slots_per_day)
            error(path + ".duration",
                  "duration " + std::to_string(e.duration) + " exceeds slots_per_day " +
                      std::to_string(inst.grid.slots_per_day) + "; event can never be placed");
        if (e.students.empty()) error(path + ".students", "must be non-empty");
        if (!lecturer_ids.count(e.lecturer))
            error(path + ".lecturer", "dangling lecturer reference '" + e.lecturer + "'");
        std::set<std::string> uniq;
        for (size_t s = 0; s < e.students.size(); ++s) {
            if (!student_ids.count(e.students[s]))
                error(path + ".students[" + std::to_string(s) + "]",
                      "dangling student reference '" + e.students[s] + "'");
            if (!uniq.insert(e.students[s]).second)
                error(path + ".students[" + std::to_string(s) + "]",
                      "duplicate student '" + e.students[s] + "'");
        }
        if (static_cast<int>(e.students.size()) > max_capacity)
            warn(path, "enrollment " + std::to_string(e.students.size()) +
                           " exceeds every room capacity (max " + std::to_string(max_capacity) +
                           "); event can never be placed");
    }
    return out;
}

std::string serialize_instance(const Instance& inst) {
    ordered_json doc;
    doc["name"] = inst.name;
    doc["days"] = inst.grid.days;
    doc["slots_per_day"] = inst.grid.slots_per_day;
    doc["rooms"] = ordered_json::array();
    for (const Room& r : inst.rooms) doc["rooms"].push_back({{"id", r.id}, {"capacity", r.capacity}});
    doc["lecturers"] = inst.lecturers;
    doc["students"] = inst.students;
    doc["events"] = ordered_json::array();
    for (const Event& e : inst.events) {
        ordered_json ev;
        ev["id"] = e.id;
        ev["index"] = e.index;
        ev["weight"] = e.weight;
        ev["duration"] = e.duration;
        ev["lecturer"] = e.lecturer;
        ev["students"] = e.students;
        doc["events"].push_back(std::move(ev));
    }
    return doc.dump(2) + "\n";
}

std::string serialize_timetable(const Instance& inst, const Timetable& tt, const EvalResult& ev) {
    ordered_json doc;
    doc["instance"] = inst.name;
    doc["assignments"] = ordered_json::array();
    for (const auto& [id, pos] : tt.assignments) {  // std::map: sorted by event id
        if (!inst.event_by_id(id))
            throw std::invalid_argument("timetable references unknown event '" + id + "'");
        if (inst.room_ord(pos.room) < 0)
            throw std::invalid_argument("timetable references unknown room '" + pos.room + "'");
        doc["assignments"].push_back({{"event", id},
                                      {"day", pos.day},
                                      {"start_slot", pos.start_slot},
                                      {"room", pos.room}});
    }
    doc["unplaced"] = ordered_json::array();
    for (const auto& id : tt.unplaced) {
        if (!inst.event_by_id(id))
            throw std::invalid_argument("timetable references unknown event '" + id + "'");
        doc["unplaced"].push_back(id);
    }
    doc["evaluation"] = {
        {"hard",
         {{"student_clash", ev.hard.student_clash},
          {"lecturer_clash", ev.hard.lecturer_clash},
          {"room_clash", ev.hard.room_clash},
          {"capacity", ev.hard.capacity},
          {"out_of_grid", ev.hard.out_of_grid}}},
        {"soft",
         {{"gap_slots", ev.soft.gap_slots},
          {"single_event_days", ev.soft.single_event_days},
          {"last_slot_weighted", ev.soft.last_slot_weighted}}},
        {"unplaced", ev.unplaced},
        {"total", ev.total}};
    return doc.dump(2) + "\n";
}

TimetableFile parse_timetable(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("$: expected a JSON object");

    TimetableFile file;
    file.instance = get_string(doc, "instance", "$");
    const auto& assignments = get_array(doc, "assignments", "$");
    for (size_t i = 0; i < assignments.size(); ++i) {
        const std::string path = "assignments[" + std::to_string(i) + "]";
        if (!assignments[i].is_object()) throw ParseError(path + ": expected an object");
        Position pos;
        const std::string event = get_string(assignments[i], "event", path);
        pos.day = static_cast<int>(get_int(assignments[i], "day", path));
        pos.start_slot = static_cast<int>(get_int(assignments[i], "start_slot", path));
        pos.room = get_string(assignments[i], "room", path);
        if (!file.timetable.assignments.emplace(event, std::move(pos)).second)
            throw ParseError(path + ".event: duplicate assignment for '" + event + "'");
    }
    const auto& unplaced = get_array(doc, "unplaced", "$");
    for (size_t i = 0; i < unplaced.size(); ++i) {
        if (!unplaced[i].is_string())
            throw ParseError("unplaced[" + std::to_string(i) + "]: expected a string id");
        file.timetable.unplaced.insert(unplaced[i].get<std::string>());
    }
    return file;
}

}  // namespace egb
