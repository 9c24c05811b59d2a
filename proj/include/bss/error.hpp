#ifndef BSS_ERROR_HPP
#define BSS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bss {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error
{
public:
  using Error::Error;
};

/// A caller-side contract was not met (missing metadata, wrong weight kind, ...).
class PreconditionError : public Error
{
public:
  using Error::Error;
};

/// The Szász series hit its term cap before reaching the requested mass.
class TruncationError : public Error
{
public:
  TruncationError(const std::string& what, double achieved_tail)
    : Error(what), achieved_tail_(achieved_tail)
  {}

  double achieved_tail() const noexcept { return achieved_tail_; }

private:
  double achieved_tail_;
};

/// A user function threw while being evaluated at an operator node.
class EvaluationError : public Error
{
public:
  EvaluationError(const std::string& what, double x, double y)
    : Error(what), x_(x), y_(y)
  {}

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

private:
  double x_;
  double y_;
};

class LookupError : public Error
{
public:
  using Error::Error;
};

} // namespace bss

#endif // BSS_ERROR_HPP
