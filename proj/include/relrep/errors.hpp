#pragma once

#include <stdexcept>
#include <string>

namespace relrep {

// Thrown when a structure that is supposed to satisfy an invariant
// (closure of a model, consistency of a decoded assignment) does not.
// The message names the offending entry.
class integrity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace relrep
