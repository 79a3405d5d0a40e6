// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <stdexcept>
#include <string>

namespace chainwatt {

//! Raised when an input violates a documented precondition or invariant
//! (bad numbers, malformed rows, unknown keys). Maps to CLI exit code 1.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! Raised when a file cannot be opened, read or written. Maps to CLI exit
//! code 2.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace chainwatt
