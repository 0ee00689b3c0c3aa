#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "colorline/model.hpp"

namespace colorline {

struct ResourceWant {
    int pool = -1;
    int qty = 0;
};

// Runtime state of one pool: free units, FIFO queue of waiting request ids,
// and busy-time accounting split by value class.
struct PoolRuntime {
    std::string id;
    PoolKind kind = PoolKind::Machine;
    int capacity = 0;
    double busy_rate = 0.0;
    double idle_rate = 0.0;

    int free_units = 0;
    std::deque<int> queue; // request ids, FIFO
    double va_busy_hours = 0.0;
    double nva_busy_hours = 0.0;

    double busy_hours() const { return va_busy_hours + nva_busy_hours; }
};

// Seize/release engine over a set of pools. A request may span several
// pools (a machine plus operators); it is granted only when it sits at the
// head of every queue it waits in and every pool has enough free units, so
// grant order per pool always equals enqueue order (no overtaking).
class ResourceCoordinator {
public:
    struct Request {
        int id = -1;
        int entity = -1;
        int station = -1;
        std::vector<ResourceWant> wants;
        bool value_adding = true;
        double enqueued_at = 0.0;
        bool granted = false;
        bool released = false;
        double grant_time = 0.0;
    };

    explicit ResourceCoordinator(std::vector<PoolRuntime> pools);

    // Enqueues a request on every wanted pool. Call pump() afterwards to
    // let it (and anything else) through. Throws QtyExceedsCapacityError
    // when a want can never be granted.
    int request(int entity, int station, std::vector<ResourceWant> wants, double now,
                bool value_adding);

    // Grants every satisfiable head-of-queue request, cascading, in pool
    // declaration order. Returns granted request ids in grant order.
    std::vector<int> pump(double now);

    // Returns all units of a granted request and accrues busy time for the
    // held interval. The caller is expected to pump() afterwards.
    void release_all(int request_id, double now);

    // Partial release of `qty` units of one pool held by `entity` (oldest
    // grant first). Throws NotHeldError when the entity holds fewer.
    void release(int entity, int pool, int qty, double now);

    // Convenience single-pool seize used by tests and simple callers:
    // request + pump. Returns the request id; granted() tells the outcome.
    int seize(int entity, int pool, int qty, double now, bool value_adding = true);

    bool granted(int request_id) const { return requests_.at(static_cast<std::size_t>(request_id)).granted; }
    const Request& request_info(int request_id) const {
        return requests_.at(static_cast<std::size_t>(request_id));
    }

    int held_units(int entity, int pool) const;

    // Closes every open grant at the horizon so busy time never counts
    // beyond it.
    void finalize(double horizon);

    const PoolRuntime& pool(int index) const { return pools_.at(static_cast<std::size_t>(index)); }
    std::size_t pool_count() const { return pools_.size(); }

private:
    bool satisfiable(const Request& req) const;
    void grant(Request& req, double now);
    void accrue(const Request& req, const ResourceWant& want, int units, double until);

    std::vector<PoolRuntime> pools_;
    std::vector<Request> requests_;
};

} // namespace colorline
