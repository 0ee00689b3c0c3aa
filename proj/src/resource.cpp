#include "colorline/resource.hpp"

#include <algorithm>

#include "colorline/errors.hpp"

namespace colorline {

ResourceCoordinator::ResourceCoordinator(std::vector<PoolRuntime> pools)
    : pools_(std::move(pools)) {
    for (auto& p : pools_) {
        p.free_units = p.capacity;
    }
}

int ResourceCoordinator::request(int entity, int station, std::vector<ResourceWant> wants,
                                 double now, bool value_adding) {
    for (const auto& w : wants) {
        const auto& p = pools_.at(static_cast<std::size_t>(w.pool));
        if (w.qty < 1) {
            throw QtyExceedsCapacityError("request for " + std::to_string(w.qty) +
                                          " unit(s) of pool '" + p.id + "'");
        }
        if (w.qty > p.capacity) {
            throw QtyExceedsCapacityError("request for " + std::to_string(w.qty) +
                                          " unit(s) of pool '" + p.id + "' with capacity " +
                                          std::to_string(p.capacity));
        }
    }
    Request req;
    req.id = static_cast<int>(requests_.size());
    req.entity = entity;
    req.station = station;
    req.wants = std::move(wants);
    req.value_adding = value_adding;
    req.enqueued_at = now;
    for (const auto& w : req.wants) {
        pools_[static_cast<std::size_t>(w.pool)].queue.push_back(req.id);
    }
    requests_.push_back(std::move(req));
    return requests_.back().id;
}

bool ResourceCoordinator::satisfiable(const Request& req) const {
    for (const auto& w : req.wants) {
        const auto& p = pools_[static_cast<std::size_t>(w.pool)];
        if (p.queue.empty() || p.queue.front() != req.id) return false;
        if (p.free_units < w.qty) return false;
    }
    return true;
}

void ResourceCoordinator::grant(Request& req, double now) {
    for (const auto& w : req.wants) {
        auto& p = pools_[static_cast<std::size_t>(w.pool)];
        p.queue.pop_front();
        p.free_units -= w.qty;
    }
    req.granted = true;
    req.grant_time = now;
}

std::vector<int> ResourceCoordinator::pump(double now) {
    std::vector<int> granted_ids;
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (auto& p : pools_) {
            while (!p.queue.empty()) {
                Request& req = requests_[static_cast<std::size_t>(p.queue.front())];
                if (!satisfiable(req)) break;
                grant(req, now);
                granted_ids.push_back(req.id);
                progressed = true;
            }
        }
    }
    return granted_ids;
}

void ResourceCoordinator::accrue(const Request& req, const ResourceWant& want, int units,
                                 double until) {
    auto& p = pools_[static_cast<std::size_t>(want.pool)];
    const double hours = static_cast<double>(units) * (until - req.grant_time);
    if (req.value_adding) {
        p.va_busy_hours += hours;
    } else {
        p.nva_busy_hours += hours;
    }
}

void ResourceCoordinator::release_all(int request_id, double now) {
    Request& req = requests_.at(static_cast<std::size_t>(request_id));
    if (!req.granted || req.released) {
        throw NotHeldError("request " + std::to_string(request_id) + " holds no units");
    }
    for (const auto& w : req.wants) {
        accrue(req, w, w.qty, now);
        pools_[static_cast<std::size_t>(w.pool)].free_units += w.qty;
    }
    req.released = true;
}

void ResourceCoordinator::release(int entity, int pool, int qty, double now) {
    if (qty < 1) throw NotHeldError("release of fewer than 1 unit");
    if (held_units(entity, pool) < qty) {
        throw NotHeldError("entity " + std::to_string(entity) + " holds fewer than " +
                           std::to_string(qty) + " unit(s) of pool '" +
                           pools_.at(static_cast<std::size_t>(pool)).id + "'");
    }
    int remaining = qty;
    for (auto& req : requests_) {
        if (remaining == 0) break;
        if (req.entity != entity || !req.granted || req.released) continue;
        for (auto& w : req.wants) {
            if (w.pool != pool || w.qty == 0) continue;
            const int take = std::min(w.qty, remaining);
            accrue(req, w, take, now);
            pools_[static_cast<std::size_t>(pool)].free_units += take;
            w.qty -= take;
            remaining -= take;
            if (remaining == 0) break;
        }
        const bool empty = std::all_of(req.wants.begin(), req.wants.end(),
                                       [](const ResourceWant& w) { return w.qty == 0; });
        if (empty) req.released = true;
    }
}

int ResourceCoordinator::seize(int entity, int pool, int qty, double now, bool value_adding) {
    const int id = request(entity, -1, {{pool, qty}}, now, value_adding);
    pump(now);
    return id;
}

int ResourceCoordinator::held_units(int entity, int pool) const {
    int units = 0;
    for (const auto& req : requests_) {
        if (req.entity != entity || !req.granted || req.released) continue;
        for (const auto& w : req.wants) {
            if (w.pool == pool) units += w.qty;
        }
    }
    return units;
}

void ResourceCoordinator::finalize(double horizon) {
    for (auto& req : requests_) {
        if (!req.granted || req.released) continue;
        for (const auto& w : req.wants) {
            accrue(req, w, w.qty, horizon);
        }
        req.released = true;
    }
}

} // namespace colorline
