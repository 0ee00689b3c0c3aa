#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "colorline/errors.hpp"

namespace colorline {

// Ordered so that at equal times departures settle before arrivals and the
// horizon marker always fires last: ServiceEnd < QcVerdict < TransportEnd <
// EntityArrival < HorizonEnd.
enum class EventKind : int {
    ServiceEnd = 0,
    QcVerdict = 1,
    TransportEnd = 2,
    EntityArrival = 3,
    HorizonEnd = 4,
};

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::HorizonEnd;
    std::int32_t entity = -1;  // -1 when the event carries no entity
    std::int32_t station = -1; // -1 when the event carries no station
    std::uint64_t seq = 0;     // insertion counter, unique per replication
};

// Pending-event calendar with a monotone clock. Events pop in
// (time, kind, seq) order.
class EventCalendar {
public:
    double clock() const { return clock_; }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

    // Stores an event; seq is assigned here. Scheduling into the past is a
    // logic error in the caller.
    Event schedule(double time, EventKind kind, std::int32_t entity = -1,
                   std::int32_t station = -1) {
        if (!(time >= clock_)) {
            throw PastTimeError("event scheduled at t=" + std::to_string(time) +
                                " before clock t=" + std::to_string(clock_));
        }
        Event ev{time, kind, entity, station, next_seq_++};
        heap_.push(ev);
        return ev;
    }

    // Removes and returns the minimal event, advancing the clock to its
    // time. Returns nullopt on an empty calendar.
    std::optional<Event> advance() {
        if (heap_.empty()) return std::nullopt;
        Event ev = heap_.top();
        heap_.pop();
        clock_ = ev.time;
        return ev;
    }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            if (a.kind != b.kind) return static_cast<int>(a.kind) > static_cast<int>(b.kind);
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    double clock_ = 0.0;
    std::uint64_t next_seq_ = 0;
};

} // namespace colorline
