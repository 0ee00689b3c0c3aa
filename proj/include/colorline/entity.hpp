#pragma once

#include <cstdint>
#include <vector>

namespace colorline {

enum class EntityState {
    InQueue,
    InService,
    InTransport,
    Departed,
    WipAtHorizon,
};

// One completed (or in-progress) station visit of an entity.
struct Visit {
    int station = -1;
    double queue_enter = 0.0;
    double service_start = -1.0; // -1 while still waiting
    double service_end = -1.0;   // -1 while in service
};

// Per-entity trace, captured only when RunOptions::capture_entities is set.
struct EntityRecord {
    int id = -1;
    double created_at = 0.0;
    EntityState state = EntityState::InQueue;
    int qc_failures = 0;
    bool qc_passed = false;
    double departed_at = -1.0;
    std::vector<Visit> history;
};

const char* to_string(EntityState state);

} // namespace colorline
