#pragma once

#include <stdexcept>
#include <string>

namespace airmia {

// Bad arguments to an operation (wrong lengths, shapes, empty inputs).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configuration that cannot be honored (counts, class balance, splits).
class InvalidConfig : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Persisted artifact could not be read back. what() names the file.
class LoadError : public std::runtime_error {
public:
    LoadError(const std::string& path, const std::string& reason)
        : std::runtime_error(path + ": " + reason), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// Failure inside one pipeline stage, tagged with scenario and stage name.
class StageError : public std::runtime_error {
public:
    StageError(const std::string& tag, const std::string& reason)
        : std::runtime_error("[" + tag + "] " + reason), tag_(tag) {}
    const std::string& tag() const noexcept { return tag_; }

private:
    std::string tag_;
};

}  // namespace airmia
