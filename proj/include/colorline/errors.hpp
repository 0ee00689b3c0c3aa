#pragma once

#include <stdexcept>
#include <string>

namespace colorline {

// Base class for every error raised by the simulation library.
class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// -- event calendar --
class PastTimeError : public SimError {
public:
    using SimError::SimError;
};

// -- random variates --
class InvalidParamsError : public SimError {
public:
    using SimError::SimError;
};

// -- resource pools --
class QtyExceedsCapacityError : public SimError {
public:
    using SimError::SimError;
};
class NotHeldError : public SimError {
public:
    using SimError::SimError;
};

// -- replication executor --
class DivergenceError : public SimError {
public:
    using SimError::SimError;
};

// -- model / config --
class ParseError : public SimError {
public:
    using SimError::SimError;
};
class SchemaError : public SimError {
public:
    using SimError::SimError;
};

// -- statistics & costs --
class EmptySeriesError : public SimError {
public:
    using SimError::SimError;
};
class NegativeTimeError : public SimError {
public:
    using SimError::SimError;
};
class EmptyListError : public SimError {
public:
    using SimError::SimError;
};
class MixedModelError : public SimError {
public:
    using SimError::SimError;
};
class ZeroOutputError : public SimError {
public:
    using SimError::SimError;
};

// -- analysis --
class MissingStationError : public SimError {
public:
    using SimError::SimError;
};
class SchemaMismatchError : public SimError {
public:
    using SimError::SimError;
};

// -- scenarios / optimization --
class UnknownTargetError : public SimError {
public:
    using SimError::SimError;
};
class HeadcountViolationError : public SimError {
public:
    using SimError::SimError;
};
class InfeasibleTotalError : public SimError {
public:
    using SimError::SimError;
};
class InfeasibleBoundsError : public SimError {
public:
    using SimError::SimError;
};

} // namespace colorline
