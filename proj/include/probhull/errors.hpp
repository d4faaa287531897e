#pragma once

#include <stdexcept>
#include <string>

namespace probhull
{
// Base for everything this library throws on purpose.
struct Error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// Bad user input (CLI exit code 1).
struct ValidationError : Error
{
  using Error::Error;
};

// Malformed input stream; carries the 1-based line number.
struct ParseError : ValidationError
{
  ParseError(int line, std::string const & reason)
    : ValidationError("line " + std::to_string(line) + ": " + reason), m_line(line)
  {
  }

  int Line() const { return m_line; }

private:
  int m_line;
};

// Degenerate geometry the algorithms reject rather than perturb (CLI exit code 2).
struct GeneralPositionViolation : Error
{
  using Error::Error;
};

struct ParallelLines : GeneralPositionViolation
{
  using GeneralPositionViolation::GeneralPositionViolation;
};

struct DuplicateMeans : GeneralPositionViolation
{
  using GeneralPositionViolation::GeneralPositionViolation;
};

// An envelope chain that violates its own ordering invariants.
struct MalformedChain : Error
{
  using Error::Error;
};

// Certificate construction was handed a context whose asserted relations do not hold.
struct InconsistentContext : Error
{
  using Error::Error;
};

// Certificate evaluation referenced a point id outside the instance.
struct UnknownParticipant : Error
{
  using Error::Error;
};
}  // namespace probhull
