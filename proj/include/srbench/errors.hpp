#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace srbench {

/// Broad error classes; the CLI maps them onto process exit codes.
enum class ErrorClass { kConfig = 2, kData = 3, kRuntime = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string name, const std::string& message)
      : std::runtime_error(name + ": " + message),
        class_(cls),
        name_(std::move(name)) {}

  ErrorClass error_class() const noexcept { return class_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorClass class_;
  std::string name_;
};

#define SRBENCH_ERROR(Name, Class)                               \
  class Name : public ::srbench::Error {                         \
   public:                                                       \
    explicit Name(const std::string& message)                    \
        : ::srbench::Error(::srbench::ErrorClass::Class, #Name,  \
                           message) {}                           \
  }

// Configuration / usage problems (exit code 2).
SRBENCH_ERROR(ConfigError, kConfig);
SRBENCH_ERROR(InvalidFactor, kConfig);
SRBENCH_ERROR(InvalidDimensions, kConfig);
SRBENCH_ERROR(InvalidConfig, kConfig);
SRBENCH_ERROR(StepOutOfRange, kConfig);
SRBENCH_ERROR(ScaleMismatch, kConfig);
SRBENCH_ERROR(PatchLargerThanImage, kConfig);
SRBENCH_ERROR(ModelAssetMissing, kConfig);
SRBENCH_ERROR(BackendMisconfigured, kConfig);
SRBENCH_ERROR(IncomparableRuns, kConfig);

// Data problems (exit code 3).
SRBENCH_ERROR(MissingFile, kData);
SRBENCH_ERROR(DecodeError, kData);
SRBENCH_ERROR(UnsupportedChannelCount, kData);
SRBENCH_ERROR(ShapeMismatch, kData);
SRBENCH_ERROR(EmptyInput, kData);
SRBENCH_ERROR(InputTooSmall, kData);
SRBENCH_ERROR(EmptyDataset, kData);
SRBENCH_ERROR(CorruptCheckpoint, kData);
SRBENCH_ERROR(VersionMismatch, kData);
SRBENCH_ERROR(EmptyFile, kData);
SRBENCH_ERROR(UnknownRole, kData);
SRBENCH_ERROR(TrackWithoutRole, kData);
SRBENCH_ERROR(ManifestUnreadable, kData);
SRBENCH_ERROR(FrameMismatch, kData);
SRBENCH_ERROR(InvalidShape, kData);
SRBENCH_ERROR(IoError, kData);
SRBENCH_ERROR(SchemaVersionMismatch, kData);

// Runtime failures (exit code 4).
SRBENCH_ERROR(NonFiniteLoss, kRuntime);
SRBENCH_ERROR(InternalError, kRuntime);

#undef SRBENCH_ERROR

/// MOT parsing failure; remembers the 1-based line number of the offence.
class MalformedLine : public Error {
 public:
  MalformedLine(int line, const std::string& message)
      : Error(ErrorClass::kData, "MalformedLine",
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace srbench
