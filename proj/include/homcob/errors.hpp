#pragma once

#include <stdexcept>
#include <string>

namespace homcob {

// Every domain error gets its own type so callers (and the CLI) can map
// failures to precise diagnostics without string matching.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : Error { using Error::Error; };
struct InvalidComplex : Error { using Error::Error; };      // d*d != 0
struct NotChainMap : Error { using Error::Error; };
struct NotQuasiIso : Error { using Error::Error; };
struct NoHomotopyInverse : Error { using Error::Error; };

struct CollectionMismatch : Error { using Error::Error; };
struct ObjectActionMismatch : Error { using Error::Error; };
struct UnknownObject : Error { using Error::Error; };

struct NotModuleMorphism : Error { using Error::Error; };
struct NotFunctor : Error { using Error::Error; };
struct MissingWitness : Error { using Error::Error; };

struct BrokenChain : Error { using Error::Error; };
struct TriangleFailure : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct TupleMismatch : Error { using Error::Error; };

struct EvenL : Error { using Error::Error; };
struct EvenIndex : Error { using Error::Error; };
struct LTooSmall : Error { using Error::Error; };
struct MissingEndComparison : Error { using Error::Error; };
struct NotACycle : Error { using Error::Error; };
struct NotAcyclic : Error { using Error::Error; };

// Parse errors carry a location (1-based line, column).
struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

} // namespace homcob
