#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hylo {

using StateId = std::uint32_t;

/// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a finite game contains a directed cycle. Carries one witness
/// cycle as a state sequence whose first and last entries coincide.
class WellFoundednessError : public Error {
public:
  WellFoundednessError(std::string what, std::vector<StateId> cycle)
      : Error(std::move(what)), cycle_(std::move(cycle)) {}
  const std::vector<StateId>& cycle() const { return cycle_; }

private:
  std::vector<StateId> cycle_;
};

/// Raised when an enumeration or closure passes its budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// check_morphism: the graph condition x->x' => f(x)->f(x') failed.
class GraphConditionError : public Error {
public:
  GraphConditionError(std::string what, StateId from, StateId to)
      : Error(std::move(what)), from_(from), to_(to) {}
  StateId witness_from() const { return from_; }
  StateId witness_to() const { return to_; }

private:
  StateId from_, to_;
};

/// check_morphism: some move of the image has no lift. The witness is the
/// source state x together with the unliftable target move f(x)->y.
class PathLiftingError : public Error {
public:
  PathLiftingError(std::string what, StateId source_state, StateId target_move)
      : Error(std::move(what)), source_(source_state), target_(target_move) {}
  StateId witness_source() const { return source_; }
  StateId witness_target_move() const { return target_; }

private:
  StateId source_, target_;
};

/// Ackermann codes past the configured bit budget.
class DepthGuardError : public Error {
public:
  using Error::Error;
};

/// enumerate_universe beyond the hard cap.
class SizeGuardError : public Error {
public:
  using Error::Error;
};

/// Parallel morphism pair with different sources or targets.
class SourceMismatch : public Error {
public:
  using Error::Error;
};

/// Bouton classification: a signature matching no known class.
class UnknownSignature : public Error {
public:
  using Error::Error;
};

/// Using an unstable Bouton approximation where a stable one is required.
class InstabilityError : public Error {
public:
  using Error::Error;
};

/// Malformed game construction input (duplicate state declarations, ...).
class BuildError : public Error {
public:
  using Error::Error;
};

/// Game file syntax error, with a 1-based line number.
class ParseError : public Error {
public:
  ParseError(std::string what, std::size_t line) : Error(std::move(what)), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

}  // namespace hylo
