#pragma once

#include <stdexcept>

namespace probalign {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotEnabledError : public Error { public: using Error::Error; };
class EmptyTraceError : public Error { public: using Error::Error; };
class InvalidWeightError : public Error { public: using Error::Error; };
class InvalidEpsilonError : public Error { public: using Error::Error; };
class NoAlignmentError : public Error { public: using Error::Error; };
class ExpansionBudgetError : public Error { public: using Error::Error; };
class SearchTimeoutError : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class UnsupportedFeatureError : public Error { public: using Error::Error; };
class LengthMismatchError : public Error { public: using Error::Error; };
class UniverseTooSmallError : public Error { public: using Error::Error; };
class InvalidInputError : public Error { public: using Error::Error; };

}  // namespace probalign
